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

#include "lifeguard/trace.hpp"

#include <map>

#include "lexer.hpp"

namespace lifeguard {

std::string_view to_string(Package p) { return p == Package::App ? "app" : "fwk"; }

Value Value::boolean(bool b) {
  Value v;
  v.kind_ = Kind::Bool;
  v.int_ = b ? 1 : 0;
  return v;
}

Value Value::integer(std::int64_t i) {
  Value v;
  v.kind_ = Kind::Int;
  v.int_ = i;
  return v;
}

Value Value::string(std::string s) {
  Value v;
  v.kind_ = Kind::String;
  v.text_ = std::move(s);
  return v;
}

Value Value::object(std::string label, std::uint64_t n, std::string type) {
  if (type.empty()) throw Error("object value needs a non-empty type name");
  Value v;
  v.kind_ = Kind::Object;
  v.int_ = static_cast<std::int64_t>(n);
  v.text_ = std::move(type);
  v.label_ = label.empty() ? "o" : std::move(label);
  return v;
}

std::string_view Value::type_name() const {
  switch (kind_) {
    case Kind::Unit: return "unit";
    case Kind::Bool: return "bool";
    case Kind::Int: return "int";
    case Kind::String: return "string";
    case Kind::Object: return text_;
  }
  return "";
}

std::string Value::to_string() const {
  switch (kind_) {
    case Kind::Unit: return "unit";
    case Kind::Bool: return int_ ? "true" : "false";
    case Kind::Int: return std::to_string(int_);
    case Kind::String: return detail::quote(text_);
    case Kind::Object: return label_ + "#" + std::to_string(int_) + ":" + text_;
  }
  return "";
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (a.kind_ == Value::Kind::Object) {
    if (auto c = a.text_ <=> b.text_; c != 0) return c;
    return a.int_ <=> b.int_;
  }
  if (auto c = a.int_ <=> b.int_; c != 0) return c;
  return a.text_ <=> b.text_;
}

namespace {

std::string render_call(const Thunk& t) {
  std::string s = t.fun.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) s += ",";
    s += t.args[i].to_string();
  }
  return s + ")";
}

bool has_ret(MessageKind k) {
  return k == MessageKind::CbRet || k == MessageKind::CiRet || k == MessageKind::DisCbRet;
}

}  // namespace

std::string Thunk::to_string() const { return render_call(*this); }

std::string_view to_string(MessageKind k) {
  switch (k) {
    case MessageKind::Cb: return "cb";
    case MessageKind::Ci: return "ci";
    case MessageKind::CbRet: return "cbret";
    case MessageKind::CiRet: return "ciret";
    case MessageKind::DisCi: return "dis ci";
    case MessageKind::DisCbRet: return "dis cbret";
  }
  return "";
}

Package callee_package(MessageKind k) {
  switch (k) {
    case MessageKind::Cb:
    case MessageKind::CbRet:
    case MessageKind::DisCbRet: return Package::App;
    default: return Package::Fwk;
  }
}

Message::Message(MessageKind kind, std::string fun, std::vector<Value> args,
                 std::optional<Value> ret)
    : kind_(kind), thunk_{FunctionSymbol{std::move(fun), callee_package(kind)}, std::move(args)},
      ret_(std::move(ret)) {
  if (thunk_.fun.name.empty()) throw Error("message needs a function name");
  if (has_ret(kind) != ret_.has_value())
    throw Error("return value must be present exactly on return messages");
}

Message Message::cb(std::string fun, std::vector<Value> args) {
  return Message(MessageKind::Cb, std::move(fun), std::move(args));
}
Message Message::ci(std::string fun, std::vector<Value> args) {
  return Message(MessageKind::Ci, std::move(fun), std::move(args));
}
Message Message::cbret(Value ret, std::string fun, std::vector<Value> args) {
  return Message(MessageKind::CbRet, std::move(fun), std::move(args), std::move(ret));
}
Message Message::ciret(Value ret, std::string fun, std::vector<Value> args) {
  return Message(MessageKind::CiRet, std::move(fun), std::move(args), std::move(ret));
}

Message Message::dis(const Message& in) {
  if (!in.is_in()) throw Error("only in-messages (ci, cbret) can be disallowed");
  Message m = in;
  m.kind_ = in.kind_ == MessageKind::Ci ? MessageKind::DisCi : MessageKind::DisCbRet;
  return m;
}

Message Message::inner() const {
  if (!is_dis()) return *this;
  Message m = *this;
  m.kind_ = kind_ == MessageKind::DisCi ? MessageKind::Ci : MessageKind::CbRet;
  return m;
}

std::string Message::to_string() const {
  std::string s(lifeguard::to_string(kind_));
  s += ' ';
  if (ret_) s += ret_->to_string() + " = ";
  return s + render_call(thunk_);
}

void check_well_formed(std::span<const Message> messages) {
  // Open calls; the innermost decides the current package context.
  std::vector<const Message*> open;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    const Message& m = messages[i];
    if (m.is_dis()) {
      if (i + 1 != messages.size()) throw TraceError("dis message must be the last message", i);
      continue;
    }
    bool app_context = !open.empty() && open.back()->kind() == MessageKind::Cb;
    switch (m.kind()) {
      case MessageKind::Cb:
        if (app_context) throw TraceError("callback invoked from app context", i);
        open.push_back(&m);
        break;
      case MessageKind::Ci:
        if (!app_context) throw TraceError("callin invoked outside any callback", i);
        open.push_back(&m);
        break;
      case MessageKind::CbRet:
      case MessageKind::CiRet: {
        MessageKind call = m.kind() == MessageKind::CbRet ? MessageKind::Cb : MessageKind::Ci;
        if (open.empty()) throw TraceError("return without a matching call", i);
        const Message& top = *open.back();
        if (top.kind() != call || top.thunk() != m.thunk())
          throw TraceError("return does not match the innermost open call " + top.to_string(), i);
        open.pop_back();
        break;
      }
      default: break;
    }
  }
}

Trace::Trace(std::vector<Message> messages) : messages_(std::move(messages)) {
  check_well_formed(messages_);
}

namespace {

std::vector<Value> parse_args(detail::TokenStream& ts) {
  std::vector<Value> args;
  ts.expect("(");
  if (ts.accept(")")) return args;
  do {
    Value v;
    if (!detail::read_value(ts, v)) ts.fail("expected a value");
    args.push_back(std::move(v));
  } while (ts.accept(","));
  ts.expect(")");
  return args;
}

Message parse_message_tokens(detail::TokenStream& ts) {
  bool dis = ts.accept("dis");
  std::string kw = ts.expect_ident("message kind (cb, ci, cbret, ciret, dis)");
  MessageKind kind;
  if (kw == "cb") kind = MessageKind::Cb;
  else if (kw == "ci") kind = MessageKind::Ci;
  else if (kw == "cbret") kind = MessageKind::CbRet;
  else if (kw == "ciret") kind = MessageKind::CiRet;
  else throw ParseError("unknown message kind '" + kw + "'", ts.peek().line);
  if (dis && kind != MessageKind::Ci && kind != MessageKind::CbRet)
    throw ParseError("only 'ci' and 'cbret' messages can be disallowed", ts.peek().line);

  std::optional<Value> ret;
  if (kind == MessageKind::CbRet || kind == MessageKind::CiRet) {
    Value v;
    if (!detail::read_value(ts, v)) ts.fail("expected a return value");
    ret = std::move(v);
    ts.expect("=");
  }
  std::string fun = ts.expect_ident("function name");
  auto args = parse_args(ts);
  Message m(kind, std::move(fun), std::move(args), std::move(ret));
  return dis ? Message::dis(m) : m;
}

}  // namespace

Message parse_message(std::string_view text) {
  detail::TokenStream ts(detail::tokenize(text));
  Message m = parse_message_tokens(ts);
  if (!ts.at_end()) ts.fail("trailing input after message");
  return m;
}

Trace parse_trace(std::string_view text) {
  auto tokens = detail::tokenize(text);
  std::vector<Message> messages;
  std::vector<int> lines;
  // One message per line: split the token stream on line boundaries.
  std::size_t i = 0;
  while (tokens[i].kind != detail::Tok::End) {
    int line = tokens[i].line;
    std::vector<detail::Token> chunk;
    while (tokens[i].kind != detail::Tok::End && tokens[i].line == line) chunk.push_back(tokens[i++]);
    detail::Token end;
    end.line = line;
    chunk.push_back(end);
    detail::TokenStream ts(std::move(chunk));
    messages.push_back(parse_message_tokens(ts));
    if (!ts.at_end()) ts.fail("trailing input after message");
    lines.push_back(line);
  }
  try {
    return Trace(std::move(messages));
  } catch (const TraceError& e) {
    throw ParseError(e.what(), lines[e.index()]);
  }
}

std::string serialize_trace(const Trace& t) {
  std::string out;
  for (const auto& m : t) {
    out += m.to_string();
    out += '\n';
  }
  return out;
}

bool is_violation(const Trace& t) { return !t.empty() && t.messages().back().is_dis(); }

}  // namespace lifeguard
