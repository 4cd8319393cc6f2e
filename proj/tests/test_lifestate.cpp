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

TEST_CASE("fixture specs parse") {
  auto s = lgtest::spec_run();
  REQUIRE(s.rules.size() == 7);
  CHECK(s.rules[0].polarity == Polarity::Prohibit);
  CHECK(s.rules[1].polarity == Polarity::Permit);
  CHECK(s.rules[0].target.to_string() == "ci execute(t)");
  CHECK(s.rules[4].matcher->op() == Matcher::Op::Epsilon);
  CHECK(s.rules[2].line == 3);
  CHECK(lgtest::spec_empty().rules.empty());
  CHECK(lgtest::spec_lifecycle().rules.size() == 5);
  CHECK(lgtest::spec_top().rules.size() == 1);
}

TEST_CASE("serialize round-trips") {
  for (auto s : {lgtest::spec_run(), lgtest::spec_lifecycle(), lgtest::spec_run_broken()}) {
    std::string text = serialize_spec(s);
    CHECK(serialize_spec(parse_spec(text)) == text);
  }
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    auto s = lgtest::random_spec(rng);
    std::string text = serialize_spec(s);
    CHECK(serialize_spec(parse_spec(text)) == text);
  }
}

TEST_CASE("operator precedence") {
  CHECK(parse_matcher("eps + TRUE ; TRUE*")->op() == Matcher::Op::Union);
  CHECK(parse_matcher("eps & TRUE ; TRUE")->op() == Matcher::Op::Intersect);
  CHECK(parse_matcher("TRUE ; TRUE + eps")->op() == Matcher::Op::Union);
  CHECK(parse_matcher("!TRUE*")->op() == Matcher::Op::Negate);
  CHECK(parse_matcher("!TRUE ; TRUE")->op() == Matcher::Op::Concat);
  CHECK(parse_matcher("(eps + TRUE) ; TRUE")->to_string() == "(eps + TRUE) ; TRUE");
  CHECK(parse_matcher("_")->op() == Matcher::Op::Any);
  CHECK(parse_matcher("empty")->op() == Matcher::Op::Empty);
  CHECK(parse_matcher("cbret unit = onClick(l, b:Button)")->message().ret->literal == Value::unit());
}

TEST_CASE("rule scoping") {
  CHECK_NOTHROW(parse_rule("TRUE* ; ci f(x:A) -/> ci g(x)"));
  CHECK_NOTHROW(parse_rule("eps -> cb f(forall x:A)"));
  CHECK_THROWS_AS(parse_rule("eps -> cb f(x)"), ParseError);
  CHECK_THROWS_AS(parse_rule("TRUE* ; ci f(x:A) -> cb g(x:B)"), ParseError);
  CHECK_THROWS_AS(parse_rule("TRUE* ; ci f(forall x:A) -> cb g(x)"), ParseError);
  CHECK_THROWS_AS(parse_rule("TRUE* ; ci f(x) -> "), ParseError);
  CHECK_THROWS_AS(parse_rule("TRUE* ; ci f(x)"), ParseError);
  CHECK_THROWS_AS(parse_spec("eps -> cb f(forall x:A)\nTRUE* ; -> cb f(forall x:A)\n"), ParseError);
}

TEST_CASE("whole-history matching") {
  Trace buggy = lgtest::trace_buggy();
  Binding b{{"t", Value::object("t", 1, "AsyncTask")}};
  auto m = parse_matcher("TRUE* ; ci execute(t)");
  std::vector<Message> prefix(buggy.begin(), buggy.begin() + 8);
  REQUIRE(prefix.back().fun() == "execute");
  CHECK(matches(prefix, b, *m));
  CHECK_FALSE(matches(lgtest::trace_fixed(), b, *m));
  CHECK_FALSE(matches(prefix, {}, *m));  // unbound variable
  CHECK(matches(std::span<const Message>{}, {}, *parse_matcher("eps")));
  CHECK(matches(std::span<const Message>{}, {}, *parse_matcher("TRUE*")));
  CHECK_FALSE(matches(std::span<const Message>{}, {}, *parse_matcher("empty")));
  CHECK(matches(prefix, b, *parse_matcher("!(TRUE* ; cb onPostExecute(t) ; TRUE*)")));
}

TEST_CASE("atoms and bindings") {
  Message m = parse_message("ci setEnabled(b#1:Button,false)");
  Binding b{{"b", Value::object("b", 1, "Button")}};
  CHECK(atom_matches(parse_matcher("ci setEnabled(b:Button, false)")->message(), b, m));
  CHECK_FALSE(atom_matches(parse_matcher("ci setEnabled(b:Button, true)")->message(), b, m));
  CHECK_FALSE(atom_matches(parse_matcher("cb setEnabled(b, false)")->message(), b, m));

  auto rule = parse_rule("TRUE* ; ci setEnabled(b:Button,false) -/> cb onClick(forall l:OnClickListener, b)");
  CHECK(free_vars(rule) == std::set<std::string>{"b", "l"});
  CHECK(var_types(rule).at("l") == "OnClickListener");
  Binding full = b;
  full["l"] = Value::object("l", 1, "OnClickListener");
  Rule g = apply_binding(full, rule);
  CHECK(free_vars(g).empty());
  CHECK(g.target.to_message()->to_string() == "cb onClick(l#1:OnClickListener,b#1:Button)");
  CHECK_THROWS_AS(apply_binding(Binding{{"b", Value::object("a", 1, "Activity")}}, rule), Error);
}

TEST_CASE("mentioned functions") {
  auto fns = mentioned_functions(lgtest::spec_run());
  CHECK(fns == std::set<std::string>{"execute", "onClick", "onCreate", "onPostExecute", "setEnabled",
                                     "setOnClickListener"});
}
