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

// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>

#include "properties.hpp"

using namespace lifeguard;

namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

Result ac1() {
  auto r = verify(lgtest::spec_run(), lgtest::trace_buggy());
  bool ok = r.verdict == Verdict::Violation &&
            r.subtrace_labels == std::vector<std::string>{"Create", "Click", "Click"} &&
            !r.witness.empty() &&
            r.witness.messages().back().to_string() == "dis ci execute(t#1:AsyncTask)";
  return {ok, "verdict " + std::string(to_string(r.verdict)) + ", " +
                  std::to_string(r.states_explored) + " states"};
}

Result ac2() {
  auto fixed = lgtest::trace_fixed();
  auto run = verify(lgtest::spec_run(), fixed);
  auto lifecycle = verify(lgtest::spec_lifecycle(), fixed);
  auto top = verify(lgtest::spec_top(), fixed);
  bool ok = run.verdict == Verdict::Safe && lifecycle.verdict == Verdict::Violation &&
            top.verdict == Verdict::Violation;
  return {ok, "lifestate " + std::string(to_string(run.verdict)) + ", lifecycle " +
                  std::string(to_string(lifecycle.verdict)) + ", top " +
                  std::string(to_string(top.verdict))};
}

Result ac3() {
  auto fixed = lgtest::trace_fixed();
  auto units = split_subtraces(fixed);
  auto broken = validate(lgtest::spec_run_broken(), fixed);
  auto good = validate(lgtest::spec_run(), fixed);
  bool ok = !broken.valid && broken.blocking_message &&
            broken.blocking_message->to_string() == "cb onPostExecute(t#1:AsyncTask)" &&
            broken.prefix_len == units[0].messages.size() + units[1].messages.size() && good.valid;
  return {ok, "broken prefix " + std::to_string(broken.prefix_len) + "/" + std::to_string(broken.total) +
                  ", full spec " + (good.valid ? "valid" : "invalid")};
}

Result ac4() {
  auto fixed = life::run(lgtest::program_fixture("program_fixed.life"),
                         lgtest::schedule_fixture("schedule_fixed.txt"), 500);
  auto buggy = life::run(lgtest::program_fixture("program_buggy.life"),
                         lgtest::schedule_fixture("schedule_double_click.txt"), 500);
  bool ok = fixed.status == life::RunStatus::Finished && fixed.trace == lgtest::trace_fixed() &&
            buggy.status == life::RunStatus::Bad && !buggy.trace.empty() &&
            buggy.trace.messages().back().kind() == MessageKind::DisCi &&
            buggy.trace.messages().back().fun() == "execute";
  return {ok, "fixed " + std::string(life::to_string(fixed.status)) + " (" +
                  std::to_string(fixed.trace.size()) + " messages), buggy " +
                  std::string(life::to_string(buggy.status))};
}

Result from(const lgtest::Outcome& o) {
  return {o.ok, o.ok ? std::to_string(o.checks) + " checks" : o.detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"AC1 running-example violation prediction", ac1},
      {"AC2 running-example proof and precision ordering", ac2},
      {"AC3 validation prefix diagnostic", ac3},
      {"AC4 interpreter reproduction", ac4},
      {"AC5 incremental/from-scratch store equivalence", [] { return from(lgtest::property_incremental(200)); }},
      {"AC6 bounded verification/oracle equivalence", [] { return from(lgtest::property_oracle(50, 10000)); }},
      {"AC7 matcher/DFA equivalence", [] { return from(lgtest::property_dfa(60)); }},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!r.pass) ++failed;
    std::printf("%s %s (%.3fs): %s\n", r.pass ? "PASS" : "FAIL", name.c_str(), secs, r.detail.c_str());
  }
  std::printf("N/A  AC8 corpus-scale rates: needs the recorded Android corpus; see README\n");
  return failed == 0 ? 0 : 1;
}
