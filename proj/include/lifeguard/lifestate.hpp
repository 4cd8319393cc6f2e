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

// Lifestate specifications: rules that permit or prohibit a parametrized
// message whenever the message history matches a regular expression over
// parametrized messages.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lifeguard/trace.hpp"

namespace lifeguard {

/// A symbolic variable (optionally typed) or a literal value.
struct Param {
  std::string var;       // empty for literals
  std::string type;      // annotation, empty if none
  bool forall = false;   // universally-free marker (targets only)
  std::optional<Value> literal;

  static Param variable(std::string name, std::string type = {}, bool forall = false);
  static Param value(Value v);

  bool is_var() const { return !literal.has_value(); }
  std::string to_string() const;

  friend bool operator==(const Param&, const Param&) = default;
};

struct ParamMessage {
  MessageKind kind = MessageKind::Cb;  // cb, ci, cbret or ciret
  std::string fun;
  std::vector<Param> args;
  std::optional<Param> ret;

  bool ground() const;
  /// The ground message; nullopt if any parameter is still symbolic.
  std::optional<Message> to_message() const;
  static ParamMessage from_message(const Message& m);
  std::string to_string() const;

  friend bool operator==(const ParamMessage&, const ParamMessage&) = default;
};

class Matcher;
using MatcherPtr = std::shared_ptr<const Matcher>;

/// Regular expression over parametrized messages. `Any` (written `TRUE` or
/// `_`) matches exactly one message of any kind.
class Matcher {
 public:
  enum class Op { Atom, Any, Epsilon, Empty, Concat, Star, Union, Intersect, Negate };

  static MatcherPtr atom(ParamMessage m);
  static MatcherPtr any();
  static MatcherPtr epsilon();
  static MatcherPtr empty();
  static MatcherPtr concat(MatcherPtr a, MatcherPtr b);
  static MatcherPtr star(MatcherPtr a);
  static MatcherPtr alt(MatcherPtr a, MatcherPtr b);
  static MatcherPtr intersect(MatcherPtr a, MatcherPtr b);
  static MatcherPtr negate(MatcherPtr a);

  Op op() const { return op_; }
  const ParamMessage& message() const { return atom_; }
  const std::vector<MatcherPtr>& children() const { return kids_; }

  std::string to_string() const;

 private:
  Matcher(Op op, ParamMessage atom, std::vector<MatcherPtr> kids)
      : op_(op), atom_(std::move(atom)), kids_(std::move(kids)) {}

  Op op_;
  ParamMessage atom_;
  std::vector<MatcherPtr> kids_;
};

enum class Polarity { Permit, Prohibit };

struct Rule {
  MatcherPtr matcher;
  Polarity polarity = Polarity::Permit;
  ParamMessage target;
  int line = 0;  // source line, 0 if built programmatically

  std::string to_string() const;
};

/// Rule order carries no meaning; it is kept for diagnostics.
struct LifestateSpec {
  std::vector<Rule> rules;
};

using Binding = std::map<std::string, Value>;

LifestateSpec parse_spec(std::string_view text);
/// Parses one rule line; checks variable scoping.
Rule parse_rule(std::string_view text);
MatcherPtr parse_matcher(std::string_view text);
std::string serialize_spec(const LifestateSpec& s);

/// Throws ParseError if a target variable is neither bound by the matcher
/// nor declared `forall`, or a variable carries conflicting annotations.
void check_rule_scoping(const Rule& r);

/// Substitutes mapped variables; unmapped ones stay symbolic. Throws Error
/// when a bound value's type disagrees with the variable's annotation.
ParamMessage apply_binding(const Binding& b, const ParamMessage& pm);
MatcherPtr apply_binding(const Binding& b, const Matcher& m);
Rule apply_binding(const Binding& b, const Rule& r);

/// Whole-history match: does the entire word satisfy `r` under `b`?
bool matches(std::span<const Message> word, const Binding& b, const Matcher& r);
bool matches(const Trace& t, const Binding& b, const Matcher& r);

/// Does a single message match an atom under `b`?
bool atom_matches(const ParamMessage& atom, const Binding& b, const Message& m);

std::set<std::string> free_vars(const Rule& r);
std::set<std::string> free_vars(const Matcher& r);

/// Variable name to type annotation ("" when unannotated), merged over all
/// occurrences in the rule.
std::map<std::string, std::string> var_types(const Rule& r);

/// Function names mentioned anywhere in the spec.
std::set<std::string> mentioned_functions(const LifestateSpec& s);

}  // namespace lifeguard
