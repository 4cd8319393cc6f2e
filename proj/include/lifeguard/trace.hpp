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

// Values, messages and observable traces exchanged at the app-framework
// interface.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lifeguard/error.hpp"

namespace lifeguard {

enum class Package { App, Fwk };

std::string_view to_string(Package p);

/// A first-order value: a primitive constant or an object identity.
///
/// Objects are written `label#n:Type`. Identity is (Type, n); the label is
/// kept for display only and takes no part in comparisons.
class Value {
 public:
  enum class Kind { Unit, Bool, Int, String, Object };

  Value() = default;

  static Value unit() { return Value(); }
  static Value boolean(bool b);
  static Value integer(std::int64_t i);
  static Value string(std::string s);
  static Value object(std::string label, std::uint64_t n, std::string type);

  Kind kind() const { return kind_; }
  bool is_object() const { return kind_ == Kind::Object; }

  /// Object type, or the pseudo-type `unit`, `bool`, `int`, `string`.
  std::string_view type_name() const;

  bool as_bool() const { return int_ != 0; }
  std::int64_t as_int() const { return int_; }
  const std::string& as_string() const { return text_; }
  std::uint64_t object_number() const { return static_cast<std::uint64_t>(int_); }
  const std::string& label() const { return label_; }

  /// Canonical textual form, as written in trace and spec files.
  std::string to_string() const;

  friend bool operator==(const Value& a, const Value& b) {
    return a.kind_ == b.kind_ && a.int_ == b.int_ && a.text_ == b.text_;
  }
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  Kind kind_ = Kind::Unit;
  std::int64_t int_ = 0;
  std::string text_;   // string contents or object type
  std::string label_;  // object label
};

struct FunctionSymbol {
  std::string name;
  Package package = Package::Fwk;

  friend bool operator==(const FunctionSymbol&, const FunctionSymbol&) = default;
  friend auto operator<=>(const FunctionSymbol&, const FunctionSymbol&) = default;
};

struct Thunk {
  FunctionSymbol fun;
  std::vector<Value> args;

  std::string to_string() const;

  friend bool operator==(const Thunk&, const Thunk&) = default;
  friend auto operator<=>(const Thunk&, const Thunk&) = default;
};

enum class MessageKind { Cb, Ci, CbRet, CiRet, DisCi, DisCbRet };

std::string_view to_string(MessageKind k);

/// Package of the function a message of this kind refers to.
Package callee_package(MessageKind k);

class Message {
 public:
  Message() = default;

  /// Builds a message; the function's package follows from the kind.
  /// `ret` must be present exactly for return kinds.
  Message(MessageKind kind, std::string fun, std::vector<Value> args,
          std::optional<Value> ret = std::nullopt);

  static Message cb(std::string fun, std::vector<Value> args);
  static Message ci(std::string fun, std::vector<Value> args);
  static Message cbret(Value ret, std::string fun, std::vector<Value> args);
  static Message ciret(Value ret, std::string fun, std::vector<Value> args);
  /// Wraps an in-message (ci or cbret) as disallowed.
  static Message dis(const Message& in);

  MessageKind kind() const { return kind_; }
  const Thunk& thunk() const { return thunk_; }
  const std::string& fun() const { return thunk_.fun.name; }
  const std::vector<Value>& args() const { return thunk_.args; }
  const std::optional<Value>& ret() const { return ret_; }

  /// cb or ciret: framework to app.
  bool is_back() const { return kind_ == MessageKind::Cb || kind_ == MessageKind::CiRet; }
  /// ci or cbret: app to framework.
  bool is_in() const { return kind_ == MessageKind::Ci || kind_ == MessageKind::CbRet; }
  bool is_dis() const { return kind_ == MessageKind::DisCi || kind_ == MessageKind::DisCbRet; }
  bool is_call() const { return kind_ == MessageKind::Cb || kind_ == MessageKind::Ci; }
  bool is_return() const { return kind_ == MessageKind::CbRet || kind_ == MessageKind::CiRet; }

  /// For a dis message, the in-message it wraps; otherwise the message itself.
  Message inner() const;

  std::string to_string() const;

  friend bool operator==(const Message&, const Message&) = default;
  friend auto operator<=>(const Message&, const Message&) = default;

 private:
  MessageKind kind_ = MessageKind::Cb;
  Thunk thunk_;
  std::optional<Value> ret_;
};

/// Throws TraceError if `messages` break the trace invariants: calls and
/// returns are well-nested, the package context alternates (framework
/// context admits cb/ciret, app context admits ci/cbret), and a dis message
/// may only appear last.
void check_well_formed(std::span<const Message> messages);

class Trace {
 public:
  Trace() = default;
  /// Validates with check_well_formed.
  explicit Trace(std::vector<Message> messages);

  const std::vector<Message>& messages() const { return messages_; }
  std::size_t size() const { return messages_.size(); }
  bool empty() const { return messages_.empty(); }
  const Message& operator[](std::size_t i) const { return messages_[i]; }
  auto begin() const { return messages_.begin(); }
  auto end() const { return messages_.end(); }

  friend bool operator==(const Trace&, const Trace&) = default;

 private:
  std::vector<Message> messages_;
};

Trace parse_trace(std::string_view text);
std::string serialize_trace(const Trace& t);

/// Parses a single message line, e.g. `ci execute(t#1:AsyncTask)`.
Message parse_message(std::string_view text);

/// True iff the trace ends with a dis message.
bool is_violation(const Trace& t);

}  // namespace lifeguard
