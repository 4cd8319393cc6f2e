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

#include "lifeguard/automaton.hpp"
#include "properties.hpp"

using namespace lifeguard;

namespace {

bool acc(const Dfa& d, std::vector<int> w) { return d.accepts(w); }

}  // namespace

TEST_CASE("primitive automata") {
  Dfa a = Dfa::letter(3, 1);
  CHECK(acc(a, {1}));
  CHECK_FALSE(acc(a, {}));
  CHECK_FALSE(acc(a, {1, 1}));
  CHECK_FALSE(acc(a, {0}));
  CHECK(acc(Dfa::any(3), {2}));
  CHECK_FALSE(acc(Dfa::any(3), {2, 2}));
  CHECK(acc(Dfa::epsilon(3), {}));
  CHECK_FALSE(acc(Dfa::epsilon(3), {0}));
  CHECK(Dfa::nothing(3).empty_language());
  CHECK_FALSE(Dfa::epsilon(3).empty_language());
}

TEST_CASE("combinators") {
  Dfa a = Dfa::letter(2, 0), b = Dfa::letter(2, 1);
  Dfa ab = Dfa::concat(a, b);
  CHECK(acc(ab, {0, 1}));
  CHECK_FALSE(acc(ab, {0}));
  Dfa s = Dfa::star(ab);
  CHECK(acc(s, {}));
  CHECK(acc(s, {0, 1, 0, 1}));
  CHECK_FALSE(acc(s, {0, 1, 0}));
  Dfa u = Dfa::unite(a, b);
  CHECK(acc(u, {0}));
  CHECK(acc(u, {1}));
  CHECK_FALSE(acc(u, {0, 1}));
  Dfa contains0 = Dfa::concat(Dfa::concat(Dfa::star(Dfa::any(2)), a), Dfa::star(Dfa::any(2)));
  Dfa none0 = Dfa::complement(contains0);
  CHECK(acc(none0, {1, 1}));
  CHECK(acc(none0, {}));
  CHECK_FALSE(acc(none0, {1, 0}));
  CHECK(Dfa::intersect(contains0, none0).empty_language());
}

TEST_CASE("minimization preserves the language and is minimal") {
  Dfa any_star = Dfa::star(Dfa::any(3));
  CHECK(any_star.minimize().size() == 1);
  Dfa contains = Dfa::concat(Dfa::concat(any_star, Dfa::letter(3, 2)), any_star).minimize();
  CHECK(contains.size() == 2);
  CHECK(Dfa::nothing(3).minimize().size() == 1);
  CHECK(Dfa::epsilon(3).minimize().size() == 2);
}

TEST_CASE("compiled matchers with an OTHER letter") {
  // letters: 0 = ci run(a#1:A), 1 = OTHER
  auto letter_of = [](const ParamMessage& pm) {
    return pm.to_message() == parse_message("ci run(a#1:A)") ? 0 : 1;
  };
  Dfa d = compile_matcher(*parse_matcher("TRUE* ; ci run(a#1:A)"), letter_of, 2);
  CHECK(acc(d, {1, 0}));
  CHECK_FALSE(acc(d, {0, 1}));
  Dfa n = compile_matcher(*parse_matcher("!(TRUE* ; ci run(a#1:A) ; TRUE*)"), letter_of, 2);
  CHECK(acc(n, {1, 1, 1}));
  CHECK_FALSE(acc(n, {1, 0, 1}));
}

TEST_CASE("every operator agrees with the naive matcher") {
  auto out = lgtest::property_dfa(10);
  CHECK_MESSAGE(out.ok, out.detail);
}
