/*
 * Copyright 2026 The Lifeguard Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "properties.hpp"

using namespace lifeguard;

TEST_CASE("callback units") {
  auto units = split_subtraces(lgtest::trace_fixed());
  REQUIRE(units.size() == 3);
  CHECK(units[0].messages.size() == 6);
  CHECK(units[1].messages.size() == 6);
  CHECK(units[2].messages.size() == 4);
  CHECK(units[1].offset == 6);
  CHECK(units[0].label() == "Create");
  CHECK(units[1].label() == "Click");
  CHECK(units[2].label() == "PostExecute");
  CHECK_THROWS_AS(split_subtraces(parse_trace("cb f(a#1:A)\n")), TraceError);
  CHECK_THROWS_AS(split_subtraces(parse_trace("cb f(a#1:A)\ndis ci g(a#1:A)\n")), Error);
}

TEST_CASE("the buggy recording predicts Create, Click, Click") {
  auto r = verify(lgtest::spec_run(), lgtest::trace_buggy());
  REQUIRE(r.verdict == Verdict::Violation);
  CHECK(r.subtrace_sequence == std::vector<std::size_t>{0, 1, 1});
  CHECK(r.subtrace_labels == std::vector<std::string>{"Create", "Click", "Click"});
  CHECK(r.witness.messages().back().to_string() == "dis ci execute(t#1:AsyncTask)");
  CHECK(r.witness.size() == 12);
  CHECK(replays_to_bad(Model::build(lgtest::spec_run(), lgtest::trace_buggy()), r.witness));
}

TEST_CASE("precision ordering on the fixed recording") {
  auto fixed = lgtest::trace_fixed();
  auto safe = verify(lgtest::spec_run(), fixed);
  CHECK(safe.verdict == Verdict::Safe);
  CHECK(safe.certificate_size > 0);
  CHECK(safe.unreachable_units.empty());
  CHECK(verify(lgtest::spec_lifecycle(), fixed).verdict == Verdict::Violation);
  CHECK(verify(lgtest::spec_top(), fixed).verdict == Verdict::Violation);
  CHECK(verify(lgtest::spec_empty(), fixed).verdict == Verdict::Safe);  // nothing is ever disallowed
}

TEST_CASE("units that can never start") {
  auto r = verify(lgtest::spec_run_broken(), lgtest::trace_fixed());
  CHECK(r.verdict == Verdict::Safe);
  CHECK(r.unreachable_units == std::vector<std::size_t>{2});
}

TEST_CASE("bounded mode") {
  VerifyOptions o;
  o.bound = 2;
  CHECK(verify(lgtest::spec_run(), lgtest::trace_buggy(), o).verdict == Verdict::Unknown);
  o.bound = 3;
  CHECK(verify(lgtest::spec_run(), lgtest::trace_buggy(), o).verdict == Verdict::Violation);
  o.bound = 1;
  auto r = verify(lgtest::spec_run(), lgtest::trace_fixed(), o);
  CHECK(r.verdict == Verdict::Unknown);
  CHECK_FALSE(r.reason.empty());
  o.bound = 10;
  CHECK(verify(lgtest::spec_run(), lgtest::trace_fixed(), o).verdict == Verdict::Safe);
}

TEST_CASE("brute-force oracle") {
  auto v = brute_force_verify(lgtest::spec_run(), lgtest::trace_buggy(), 3);
  REQUIRE(v.verdict == Verdict::Violation);
  CHECK(v.subtrace_sequence == std::vector<std::size_t>{0, 1, 1});
  auto u = brute_force_verify(lgtest::spec_run(), lgtest::trace_fixed(), 4);
  CHECK(u.verdict == Verdict::Unknown);
  CHECK(u.reason == "no violation within depth 4");
  auto capped = brute_force_verify(lgtest::spec_run(), lgtest::trace_fixed(), 8, 10);
  CHECK(capped.verdict == Verdict::Unknown);
}

TEST_CASE("budgets") {
  VerifyOptions o;
  o.state_cap = 1;
  CHECK(verify(lgtest::spec_run(), lgtest::trace_fixed(), o).verdict == Verdict::Unknown);
  VerifyOptions late;
  late.deadline = Clock::now() - std::chrono::seconds(1);
  auto r = verify(lgtest::spec_run(), lgtest::trace_fixed(), late);
  CHECK(r.verdict == Verdict::Unknown);

  ::setenv("LIFEGUARD_STATE_CAP", "1234", 1);
  CHECK(state_cap_from_env() == 1234);
  ::setenv("LIFEGUARD_STATE_CAP", "junk", 1);
  CHECK_THROWS_AS(state_cap_from_env(), Error);
  ::unsetenv("LIFEGUARD_STATE_CAP");
  CHECK(state_cap_from_env(99) == 99);
}

TEST_CASE("a recorded violation is reported directly") {
  auto t = life::run(lgtest::program_fixture("program_buggy.life"),
                       lgtest::schedule_fixture("schedule_double_click.txt"), 500)
               .trace;
  auto r = verify(lgtest::spec_run(), t);
  CHECK(r.verdict == Verdict::Violation);
  CHECK(r.witness == t);
}

TEST_CASE("bounded verification agrees with the oracle") {
  auto out = lgtest::property_oracle(10, 500);
  CHECK_MESSAGE(out.ok, out.detail);
}
