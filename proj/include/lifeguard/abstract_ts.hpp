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

// Abstract transition system over ground specs. A state holds the permitted
// back-messages, the prohibited in-messages, and one automaton state per
// ground rule summarizing the message history.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lifeguard/grounding.hpp"

namespace lifeguard {

/// Set of alphabet letters.
class LetterSet {
 public:
  LetterSet() = default;
  explicit LetterSet(int letters) : bits_((letters + 63) / 64, 0) {}

  bool contains(int letter) const {
    return (bits_[letter / 64] >> (letter % 64)) & 1u;
  }
  void insert(int letter) { bits_[letter / 64] |= std::uint64_t{1} << (letter % 64); }
  void erase(int letter) { bits_[letter / 64] &= ~(std::uint64_t{1} << (letter % 64)); }
  bool empty() const;
  std::vector<int> elements() const;
  std::size_t hash() const;

  friend bool operator==(const LetterSet&, const LetterSet&) = default;

 private:
  std::vector<std::uint64_t> bits_;
};

struct AbstractState {
  LetterSet permitted;    // μ̂, back-messages only
  LetterSet prohibited;   // ν̂, in-messages only
  std::vector<int> rule_states;
  std::size_t history_len = 0;                 // excluded from equality
  std::shared_ptr<const std::vector<Message>> history;  // debug mode only

  friend bool operator==(const AbstractState& a, const AbstractState& b) {
    return a.rule_states == b.rule_states && a.permitted == b.permitted &&
           a.prohibited == b.prohibited;
  }
};

struct AbstractStateHash {
  std::size_t operator()(const AbstractState& s) const;
};

/// Targets of the rules whose automata accept in the current state.
struct FiringSets {
  LetterSet permits;
  LetterSet prohibits;
  std::vector<std::size_t> fired;  // compiled-rule indices
};

bool consistent(const LetterSet& permits, const LetterSet& prohibits);

struct StepOutcome {
  enum class Kind { Next, Blocked, Bad };
  Kind kind = Kind::Next;
  AbstractState next;  // also set for Bad: the state before the step
  FiringSets firing;   // of the successor; empty unless Next
  bool consistent = true;
  std::string reason;
};

class Model {
 public:
  explicit Model(GroundSpec g, bool keep_history = false);

  /// Grounds `s` over the values of `t`.
  static Model build(const LifestateSpec& s, const Trace& t,
                     std::size_t grounding_cap = kDefaultGroundingCap, bool keep_history = false);

  const GroundSpec& ground() const { return ground_; }
  const std::vector<CompiledRule>& rules() const { return rules_; }
  int letters() const { return ground_.letters(); }
  int letter_of(const Message& m) const { return ground_.letter_of(m); }
  bool is_back_letter(int l) const;
  bool is_in_letter(int l) const;

  FiringSets firing_sets(const std::vector<int>& rule_states) const;
  LetterSet update_back(const LetterSet& mu, const FiringSets& f, bool cons) const;
  LetterSet update_in(const LetterSet& nu, const FiringSets& f, bool cons) const;

  AbstractState initial_state() const;
  FiringSets initial_firing() const { return firing_sets(initial_state().rule_states); }

  /// Advances rule automata by a letter and recomputes the stores, without
  /// the permission check.
  AbstractState advance(const AbstractState& s, int letter, FiringSets* firing = nullptr,
                        bool* cons = nullptr) const;

  StepOutcome step(const AbstractState& s, const Message& m) const;

  /// Store contents as messages.
  std::vector<Message> messages(const LetterSet& set) const;

 private:
  GroundSpec ground_;
  std::vector<CompiledRule> rules_;
  std::vector<char> back_, in_;
  bool keep_history_;
};

}  // namespace lifeguard
