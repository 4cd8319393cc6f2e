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

// Instantiates a lifestate spec over the values of a trace and compiles the
// resulting ground rules into automata.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lifeguard/automaton.hpp"
#include "lifeguard/lifestate.hpp"
#include "lifeguard/trace.hpp"

namespace lifeguard {

struct ValueUniverse {
  std::map<std::string, std::set<Value>> by_type;  // every value, keyed by type name
  std::set<Value> constants;                       // the primitive values

  std::set<Value> all() const;
  bool empty() const { return by_type.empty(); }
};

/// Every argument and return value in the trace, dis messages included.
ValueUniverse value_universe(const Trace& t);

inline constexpr std::size_t kDefaultGroundingCap = 200000;

class GroundingError : public Error {
 public:
  using Error::Error;
};

struct GroundRule {
  Rule rule;            // variable-free
  std::size_t source;   // index of the rule in the input spec
  Binding binding;
};

struct GroundSpec {
  std::vector<GroundRule> rules;
  /// Sorted, duplicate-free. The OTHER letter is alphabet.size().
  std::vector<Message> alphabet;
  /// Instances per source rule, same length as the input spec.
  std::vector<std::size_t> instance_counts;

  int other_letter() const { return static_cast<int>(alphabet.size()); }
  int letters() const { return other_letter() + 1; }
  /// Alphabet index of a message, or the OTHER letter.
  int letter_of(const Message& m) const;
  /// "OTHER" for the reserved letter.
  std::string letter_name(int letter) const;
};

/// Instantiates each rule once per type-compatible assignment of its free
/// variables to universe values. Rules with a variable that has no candidate
/// are dropped. Throws GroundingError, naming the largest rule, when the
/// total number of instances exceeds `cap`.
GroundSpec ground_spec(const LifestateSpec& s, const Trace& t,
                       std::size_t cap = kDefaultGroundingCap);

struct CompiledRule {
  Dfa dfa;
  Polarity polarity = Polarity::Permit;
  Message target;
  int target_letter = 0;
  std::size_t source = 0;  // index in the input spec
  std::size_t instance = 0;  // index in GroundSpec::rules
};

/// Requires a variable-free rule whose atoms and target are in the alphabet.
CompiledRule compile_rule(const GroundRule& g, const GroundSpec& alphabet_owner);

std::vector<CompiledRule> compile_all(const GroundSpec& g);

}  // namespace lifeguard
