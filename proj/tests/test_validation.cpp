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

#include "support.hpp"

using namespace lifeguard;

TEST_CASE("the running example validates") {
  auto r = validate(lgtest::spec_run(), lgtest::trace_fixed());
  CHECK(r.valid);
  CHECK(r.prefix_len == 16);
  CHECK(r.total == 16);
  CHECK(r.relevant_total == 12);
  CHECK(r.relevant_prefix_len == 12);
  CHECK_FALSE(r.blocking_message);
  CHECK(r.ground_rules == 7);
  CHECK(validate(lgtest::spec_run(), lgtest::trace_buggy()).valid);
}

TEST_CASE("a missing enabling rule blocks the post-execute callback") {
  auto r = validate(lgtest::spec_run_broken(), lgtest::trace_fixed());
  CHECK_FALSE(r.valid);
  CHECK(r.prefix_len == 12);  // the Create and Click units
  REQUIRE(r.blocking_message);
  CHECK(r.blocking_message->to_string() == "cb onPostExecute(t#1:AsyncTask)");
  CHECK(r.reason == "not permitted");
  // the eps prohibition (rule 5 once rule 2 is gone) is the last to touch it
  CHECK(r.last_firing_rules == std::vector<std::size_t>{4});
  REQUIRE(r.blocking_store);
  CHECK(lgtest::strings(r.blocking_store->prohibited_in) ==
        std::vector<std::string>{"ci execute(t#1:AsyncTask)"});
}

TEST_CASE("the literal empty spec accepts everything") {
  CHECK(validate(lgtest::spec_empty(), lgtest::trace_fixed()).valid);
  CHECK(validate(lgtest::spec_empty(), lgtest::trace_buggy()).valid);
}

TEST_CASE("dis-terminated traces") {
  std::string text = lgtest::read_fixture("trace_buggy.trace");
  // Keep Create, Click, then a second click that reaches the disallowed callin.
  auto t = parse_trace(
      text.substr(0, text.find("cb onPostExecute")) +
      "cb onClick(l#1:OnClickListener,b#1:Button)\ndis ci execute(t#1:AsyncTask)\n");
  auto ok = validate(lgtest::spec_run(), t);
  CHECK(ok.valid);
  CHECK(ok.prefix_len == t.size());
  auto missed = validate(lgtest::spec_empty(), t);
  CHECK_FALSE(missed.valid);
  CHECK(missed.reason == "missed violation");
  CHECK(missed.prefix_len == t.size() - 1);
}

TEST_CASE("prohibited in-messages") {
  auto s = parse_spec("TRUE* ; ci execute(t:AsyncTask) -/> ci execute(t)\n");
  auto t = parse_trace(
      "cb onClick(l#1:L)\nci execute(t#1:AsyncTask)\nciret unit = execute(t#1:AsyncTask)\n"
      "ci execute(t#1:AsyncTask)\n");
  auto r = validate(s, t);
  CHECK_FALSE(r.valid);
  CHECK(r.reason == "prohibited in-message");
  CHECK(r.prefix_len == 3);
  CHECK(r.last_firing_rules == std::vector<std::size_t>{0});
}

TEST_CASE("deadlines") {
  AnalysisOptions o;
  o.deadline = Clock::now() - std::chrono::seconds(1);
  auto r = validate(lgtest::spec_run(), lgtest::trace_fixed(), o);
  CHECK(r.timed_out);
  CHECK_FALSE(r.valid);
}

TEST_CASE("relevance") {
  auto s = lgtest::spec_run();
  CHECK(is_relevant(s, parse_message("ci execute(t#1:AsyncTask)")));
  CHECK_FALSE(is_relevant(s, parse_message("ci init(t#1:AsyncTask)")));
}

TEST_CASE("explain") {
  auto e = explain(lgtest::spec_run(), lgtest::trace_fixed());
  REQUIRE(e.steps.size() == 16);
  CHECK(e.initial_fired == std::vector<std::size_t>{4, 5});
  CHECK(e.steps[9].fired == std::vector<std::size_t>{0, 1});
  CHECK(lgtest::strings(e.steps[9].prohibited_added) == std::vector<std::string>{"ci execute(t#1:AsyncTask)"});
  CHECK(lgtest::strings(e.steps[7].permitted_removed) ==
        std::vector<std::string>{"cb onClick(l#1:OnClickListener,b#1:Button)"});
  for (const auto& s : e.steps) CHECK(s.status == ExplainStep::Status::Ok);

  auto broken = explain(lgtest::spec_run_broken(), lgtest::trace_fixed());
  REQUIRE(broken.steps.size() == 13);
  CHECK(broken.steps.back().status == ExplainStep::Status::Blocked);
  CHECK(to_string(ExplainStep::Status::MissedViolation) == "missed-violation");
}
