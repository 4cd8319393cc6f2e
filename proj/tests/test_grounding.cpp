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

#include <functional>

#include "support.hpp"

using namespace lifeguard;

namespace {

// Every binding of the rule's variables to universe values, filtered by
// annotations afterwards.
std::multiset<std::string> ground_by_enumeration(const LifestateSpec& s, const Trace& t) {
  auto all = value_universe(t).all();
  std::vector<Value> pool(all.begin(), all.end());
  std::multiset<std::string> out;
  for (const auto& r : s.rules) {
    auto types = var_types(r);
    std::vector<std::string> vars(types.size());
    std::transform(types.begin(), types.end(), vars.begin(), [](const auto& kv) { return kv.first; });
    Binding b;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
      if (i == vars.size()) {
        for (const auto& [v, ty] : types)
          if (!ty.empty() && b.at(v).type_name() != ty) return;
        out.insert(apply_binding(b, r).to_string());
        return;
      }
      for (const auto& v : pool) {
        b[vars[i]] = v;
        go(i + 1);
      }
      b.erase(vars[i]);
    };
    go(0);
  }
  return out;
}

std::multiset<std::string> ground_strings(const GroundSpec& g) {
  std::multiset<std::string> out;
  for (const auto& r : g.rules) out.insert(r.rule.to_string());
  return out;
}

}  // namespace

TEST_CASE("value universe of the fixed trace") {
  auto u = value_universe(lgtest::trace_fixed());
  CHECK(u.by_type.at("Activity").size() == 1);
  CHECK(u.by_type.at("AsyncTask").size() == 1);
  CHECK(u.by_type.at("Button").size() == 1);
  CHECK(u.by_type.at("OnClickListener").size() == 1);
  CHECK(u.constants == std::set<Value>{Value::boolean(false), Value::unit()});
  CHECK(u.all().size() == 6);
}

TEST_CASE("instance counts on the running example") {
  auto g = ground_spec(lgtest::spec_run(), lgtest::trace_fixed());
  CHECK(g.instance_counts == std::vector<std::size_t>{1, 1, 1, 1, 1, 1, 1});
  CHECK(g.alphabet.size() == 16);
  CHECK(std::is_sorted(g.alphabet.begin(), g.alphabet.end()));
  CHECK(g.letter_of(parse_message("ci execute(t#1:AsyncTask)")) < g.other_letter());
  CHECK(g.letter_of(parse_message("ci unknown()")) == g.other_letter());
  CHECK(g.letter_name(g.other_letter()) == "OTHER");
  CHECK(compile_all(g).size() == 7);
}

TEST_CASE("ground atoms and targets join the alphabet") {
  auto s = parse_spec("TRUE* ; ci execute(t:AsyncTask) -> cb onCancel(t)\n");
  auto g = ground_spec(s, lgtest::trace_fixed());
  CHECK(g.alphabet.size() == 17);
  CHECK(g.letter_of(parse_message("cb onCancel(t#1:AsyncTask)")) < g.other_letter());
}

TEST_CASE("rules without candidates are dropped") {
  auto s = parse_spec("TRUE* ; ci f(x:Nothing) -/> ci f(x)\n");
  auto g = ground_spec(s, lgtest::trace_fixed());
  CHECK(g.rules.empty());
  CHECK(g.instance_counts == std::vector<std::size_t>{0});
}

TEST_CASE("unannotated variables range over all values") {
  auto s = parse_spec("TRUE* ; ci execute(t) -/> ci execute(t)\n");
  auto g = ground_spec(s, lgtest::trace_fixed());
  CHECK(g.rules.size() == 6);
}

TEST_CASE("grounding cap") {
  auto s = parse_spec("TRUE* ; ci f(x, y, z) -/> ci g(x, y, z)\n eps -> cb h(forall x)\n");
  try {
    ground_spec(s, lgtest::trace_fixed(), 100);
    FAIL("expected GroundingError");
  } catch (const GroundingError& e) {
    CHECK(std::string(e.what()).find("rule 1") != std::string::npos);
  }
  CHECK(ground_spec(s, lgtest::trace_fixed(), 1000).rules.size() == 216 + 6);
}

TEST_CASE("grounding matches brute-force enumeration") {
  CHECK(ground_strings(ground_spec(lgtest::spec_run(), lgtest::trace_fixed())) ==
        ground_by_enumeration(lgtest::spec_run(), lgtest::trace_fixed()));
  std::mt19937_64 rng(17);
  for (int i = 0; i < 60; ++i) {
    auto s = lgtest::random_spec(rng);
    auto t = lgtest::random_trace(rng);
    CHECK(ground_strings(ground_spec(s, t)) == ground_by_enumeration(s, t));
  }
}
