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

#pragma once

// Total deterministic automata over a finite letter range [0, letters).

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lifeguard/lifestate.hpp"

namespace lifeguard {

class Dfa {
 public:
  Dfa() = default;
  Dfa(int letters, int states);

  int letters() const { return letters_; }
  int size() const { return static_cast<int>(accept_.size()); }
  int start() const { return start_; }
  int next(int state, int letter) const { return delta_[state * letters_ + letter]; }
  bool accepting(int state) const { return accept_[state] != 0; }
  bool accepts(std::span<const int> word) const;
  /// True iff no accepting state is reachable.
  bool empty_language() const;

  void set(int state, int letter, int target) { delta_[state * letters_ + letter] = target; }
  void set_accepting(int state, bool a) { accept_[state] = a; }
  void set_start(int s) { start_ = s; }

  static Dfa letter(int letters, int a);
  static Dfa any(int letters);
  static Dfa epsilon(int letters);
  static Dfa nothing(int letters);
  static Dfa concat(const Dfa& a, const Dfa& b);
  static Dfa star(const Dfa& a);
  static Dfa unite(const Dfa& a, const Dfa& b);
  static Dfa intersect(const Dfa& a, const Dfa& b);
  static Dfa complement(const Dfa& a);

  /// Minimal equivalent automaton restricted to reachable states.
  Dfa minimize() const;

 private:
  int letters_ = 0;
  int start_ = 0;
  std::vector<int> delta_;
  std::vector<char> accept_;
};

/// Builds a total DFA for a ground matcher. `letter_of` maps each atom to its
/// letter; `letters` includes the reserved OTHER letter.
Dfa compile_matcher(const Matcher& m, const std::function<int(const ParamMessage&)>& letter_of,
                    int letters);

}  // namespace lifeguard
