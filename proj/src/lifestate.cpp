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

#include "lifeguard/lifestate.hpp"

#include <functional>
#include <unordered_map>

#include "lexer.hpp"

namespace lifeguard {

Param Param::variable(std::string name, std::string type, bool forall) {
  Param p;
  p.var = std::move(name);
  p.type = std::move(type);
  p.forall = forall;
  return p;
}

Param Param::value(Value v) {
  Param p;
  p.literal = std::move(v);
  return p;
}

std::string Param::to_string() const {
  if (literal) return literal->to_string();
  std::string s = forall ? "forall " + var : var;
  if (!type.empty()) s += ":" + type;
  return s;
}

bool ParamMessage::ground() const {
  for (const auto& a : args)
    if (a.is_var()) return false;
  return !ret || !ret->is_var();
}

std::optional<Message> ParamMessage::to_message() const {
  if (!ground()) return std::nullopt;
  std::vector<Value> vals;
  vals.reserve(args.size());
  for (const auto& a : args) vals.push_back(*a.literal);
  std::optional<Value> r;
  if (ret) r = *ret->literal;
  return Message(kind, fun, std::move(vals), std::move(r));
}

ParamMessage ParamMessage::from_message(const Message& m) {
  ParamMessage pm;
  pm.kind = m.kind();
  pm.fun = m.fun();
  for (const auto& v : m.args()) pm.args.push_back(Param::value(v));
  if (m.ret()) pm.ret = Param::value(*m.ret());
  return pm;
}

std::string ParamMessage::to_string() const {
  std::string s(lifeguard::to_string(kind));
  s += ' ';
  if (ret) s += ret->to_string() + " = ";
  s += fun + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ", ";
    s += args[i].to_string();
  }
  return s + ")";
}

MatcherPtr Matcher::atom(ParamMessage m) {
  return MatcherPtr(new Matcher(Op::Atom, std::move(m), {}));
}
MatcherPtr Matcher::any() { return MatcherPtr(new Matcher(Op::Any, {}, {})); }
MatcherPtr Matcher::epsilon() { return MatcherPtr(new Matcher(Op::Epsilon, {}, {})); }
MatcherPtr Matcher::empty() { return MatcherPtr(new Matcher(Op::Empty, {}, {})); }
MatcherPtr Matcher::concat(MatcherPtr a, MatcherPtr b) {
  return MatcherPtr(new Matcher(Op::Concat, {}, {std::move(a), std::move(b)}));
}
MatcherPtr Matcher::star(MatcherPtr a) {
  return MatcherPtr(new Matcher(Op::Star, {}, {std::move(a)}));
}
MatcherPtr Matcher::alt(MatcherPtr a, MatcherPtr b) {
  return MatcherPtr(new Matcher(Op::Union, {}, {std::move(a), std::move(b)}));
}
MatcherPtr Matcher::intersect(MatcherPtr a, MatcherPtr b) {
  return MatcherPtr(new Matcher(Op::Intersect, {}, {std::move(a), std::move(b)}));
}
MatcherPtr Matcher::negate(MatcherPtr a) {
  return MatcherPtr(new Matcher(Op::Negate, {}, {std::move(a)}));
}

namespace {

int level(Matcher::Op op) {
  switch (op) {
    case Matcher::Op::Union: return 0;
    case Matcher::Op::Intersect: return 1;
    case Matcher::Op::Concat: return 2;
    case Matcher::Op::Negate: return 3;
    case Matcher::Op::Star: return 4;
    default: return 5;
  }
}

std::string print(const Matcher& m, int ctx) {
  std::string s;
  const auto& k = m.children();
  switch (m.op()) {
    case Matcher::Op::Atom: s = m.message().to_string(); break;
    case Matcher::Op::Any: s = "TRUE"; break;
    case Matcher::Op::Epsilon: s = "eps"; break;
    case Matcher::Op::Empty: s = "empty"; break;
    case Matcher::Op::Union: s = print(*k[0], 0) + " + " + print(*k[1], 1); break;
    case Matcher::Op::Intersect: s = print(*k[0], 1) + " & " + print(*k[1], 2); break;
    case Matcher::Op::Concat: s = print(*k[0], 2) + " ; " + print(*k[1], 3); break;
    case Matcher::Op::Negate: s = "!" + print(*k[0], 3); break;
    case Matcher::Op::Star: s = print(*k[0], 5) + "*"; break;
  }
  return level(m.op()) < ctx ? "(" + s + ")" : s;
}

}  // namespace

std::string Matcher::to_string() const { return print(*this, 0); }

std::string Rule::to_string() const {
  return matcher->to_string() + (polarity == Polarity::Permit ? " -> " : " -/> ") +
         target.to_string();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

using detail::Tok;
using detail::TokenStream;

Param parse_param(TokenStream& ts, bool allow_forall) {
  Value v;
  if (detail::read_value(ts, v)) return Param::value(std::move(v));
  bool forall = false;
  if (ts.peek().is("forall")) {
    if (!allow_forall) ts.fail("'forall' is only allowed in rule targets");
    ts.next();
    forall = true;
  }
  std::string name = ts.expect_ident("parameter");
  if (name == "forall" || name == "TRUE" || name == "eps" || name == "empty")
    ts.fail("reserved word used as variable");
  std::string type;
  if (ts.accept(":")) type = ts.expect_ident("type name");
  return Param::variable(std::move(name), std::move(type), forall);
}

bool at_atom(const TokenStream& ts) {
  const auto& t = ts.peek();
  return t.kind == Tok::Ident &&
         (t.text == "cb" || t.text == "ci" || t.text == "cbret" || t.text == "ciret");
}

ParamMessage parse_atom(TokenStream& ts, bool allow_forall) {
  std::string kw = ts.expect_ident("message kind");
  ParamMessage pm;
  if (kw == "cb") pm.kind = MessageKind::Cb;
  else if (kw == "ci") pm.kind = MessageKind::Ci;
  else if (kw == "cbret") pm.kind = MessageKind::CbRet;
  else if (kw == "ciret") pm.kind = MessageKind::CiRet;
  else ts.fail("expected cb, ci, cbret or ciret");
  if (pm.kind == MessageKind::CbRet || pm.kind == MessageKind::CiRet) {
    pm.ret = parse_param(ts, allow_forall);
    ts.expect("=");
  }
  pm.fun = ts.expect_ident("function name");
  ts.expect("(");
  if (!ts.accept(")")) {
    do {
      pm.args.push_back(parse_param(ts, allow_forall));
    } while (ts.accept(","));
    ts.expect(")");
  }
  return pm;
}

MatcherPtr parse_union(TokenStream& ts);

MatcherPtr parse_primary(TokenStream& ts) {
  const auto& t = ts.peek();
  if (t.is("(")) {
    ts.next();
    auto m = parse_union(ts);
    ts.expect(")");
    return m;
  }
  if (t.is("eps")) return ts.next(), Matcher::epsilon();
  if (t.is("empty")) return ts.next(), Matcher::empty();
  if (t.is("TRUE") || t.is("_")) return ts.next(), Matcher::any();
  if (at_atom(ts)) return Matcher::atom(parse_atom(ts, false));
  ts.fail("expected a matcher");
}

MatcherPtr parse_postfix(TokenStream& ts) {
  auto m = parse_primary(ts);
  while (ts.accept("*")) m = Matcher::star(std::move(m));
  return m;
}

MatcherPtr parse_unary(TokenStream& ts) {
  if (ts.accept("!")) return Matcher::negate(parse_unary(ts));
  return parse_postfix(ts);
}

MatcherPtr parse_concat(TokenStream& ts) {
  auto m = parse_unary(ts);
  while (ts.accept(";")) m = Matcher::concat(std::move(m), parse_unary(ts));
  return m;
}

MatcherPtr parse_intersect(TokenStream& ts) {
  auto m = parse_concat(ts);
  while (ts.accept("&")) m = Matcher::intersect(std::move(m), parse_concat(ts));
  return m;
}

MatcherPtr parse_union(TokenStream& ts) {
  auto m = parse_intersect(ts);
  while (ts.accept("+")) m = Matcher::alt(std::move(m), parse_intersect(ts));
  return m;
}

Rule parse_rule_tokens(TokenStream& ts) {
  Rule r;
  r.line = ts.peek().line;
  r.matcher = parse_union(ts);
  if (ts.accept("->")) r.polarity = Polarity::Permit;
  else if (ts.accept("-/>")) r.polarity = Polarity::Prohibit;
  else ts.fail("expected '->' or '-/>'");
  if (!at_atom(ts)) ts.fail("expected a target message");
  r.target = parse_atom(ts, true);
  if (!ts.at_end()) ts.fail("trailing input after rule");
  check_rule_scoping(r);
  return r;
}

void for_each_param(const Matcher& m, const std::function<void(const Param&)>& f) {
  if (m.op() == Matcher::Op::Atom) {
    for (const auto& a : m.message().args) f(a);
    if (m.message().ret) f(*m.message().ret);
  }
  for (const auto& k : m.children()) for_each_param(*k, f);
}

void for_each_param(const ParamMessage& pm, const std::function<void(const Param&)>& f) {
  for (const auto& a : pm.args) f(a);
  if (pm.ret) f(*pm.ret);
}

}  // namespace

void check_rule_scoping(const Rule& r) {
  std::set<std::string> bound = free_vars(*r.matcher);
  std::map<std::string, std::string> types;
  auto note_type = [&](const Param& p) {
    if (!p.is_var()) return;
    auto& t = types[p.var];
    if (!p.type.empty()) {
      if (!t.empty() && t != p.type)
        throw ParseError("variable '" + p.var + "' annotated with both " + t + " and " + p.type,
                         r.line);
      t = p.type;
    }
  };
  for_each_param(*r.matcher, note_type);
  for_each_param(r.target, note_type);
  for_each_param(r.target, [&](const Param& p) {
    if (p.is_var() && !p.forall && !bound.count(p.var))
      throw ParseError("target variable '" + p.var +
                           "' is not bound by the matcher; declare it 'forall " + p.var + "'",
                       r.line);
  });
}

Rule parse_rule(std::string_view text) {
  TokenStream ts(detail::tokenize(text));
  return parse_rule_tokens(ts);
}

MatcherPtr parse_matcher(std::string_view text) {
  TokenStream ts(detail::tokenize(text));
  auto m = parse_union(ts);
  if (!ts.at_end()) ts.fail("trailing input after matcher");
  return m;
}

LifestateSpec parse_spec(std::string_view text) {
  auto tokens = detail::tokenize(text);
  LifestateSpec spec;
  std::size_t i = 0;
  while (tokens[i].kind != Tok::End) {
    int line = tokens[i].line;
    std::vector<detail::Token> chunk;
    while (tokens[i].kind != Tok::End && tokens[i].line == line) chunk.push_back(tokens[i++]);
    detail::Token end;
    end.line = line;
    chunk.push_back(end);
    TokenStream ts(std::move(chunk));
    spec.rules.push_back(parse_rule_tokens(ts));
  }
  return spec;
}

std::string serialize_spec(const LifestateSpec& s) {
  std::string out;
  for (const auto& r : s.rules) out += r.to_string() + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Semantics

ParamMessage apply_binding(const Binding& b, const ParamMessage& pm) {
  ParamMessage out = pm;
  auto subst = [&](Param& p) {
    if (!p.is_var()) return;
    auto it = b.find(p.var);
    if (it == b.end()) return;
    if (!p.type.empty() && it->second.type_name() != p.type)
      throw Error("variable '" + p.var + "' is annotated " + p.type + " but bound to " +
                  it->second.to_string());
    p = Param::value(it->second);
  };
  for (auto& a : out.args) subst(a);
  if (out.ret) subst(*out.ret);
  return out;
}

MatcherPtr apply_binding(const Binding& b, const Matcher& m) {
  const auto& k = m.children();
  switch (m.op()) {
    case Matcher::Op::Atom: return Matcher::atom(apply_binding(b, m.message()));
    case Matcher::Op::Any: return Matcher::any();
    case Matcher::Op::Epsilon: return Matcher::epsilon();
    case Matcher::Op::Empty: return Matcher::empty();
    case Matcher::Op::Concat: return Matcher::concat(apply_binding(b, *k[0]), apply_binding(b, *k[1]));
    case Matcher::Op::Star: return Matcher::star(apply_binding(b, *k[0]));
    case Matcher::Op::Union: return Matcher::alt(apply_binding(b, *k[0]), apply_binding(b, *k[1]));
    case Matcher::Op::Intersect:
      return Matcher::intersect(apply_binding(b, *k[0]), apply_binding(b, *k[1]));
    case Matcher::Op::Negate: return Matcher::negate(apply_binding(b, *k[0]));
  }
  return Matcher::empty();
}

Rule apply_binding(const Binding& b, const Rule& r) {
  Rule out = r;
  out.matcher = apply_binding(b, *r.matcher);
  out.target = apply_binding(b, r.target);
  return out;
}

namespace {

bool param_matches(const Param& p, const Binding& b, const Value& v) {
  if (!p.is_var()) return *p.literal == v;
  auto it = b.find(p.var);
  if (it == b.end()) return false;
  if (!p.type.empty() && it->second.type_name() != p.type) return false;
  return it->second == v;
}

}  // namespace

bool atom_matches(const ParamMessage& atom, const Binding& b, const Message& m) {
  if (atom.kind != m.kind() || atom.fun != m.fun() || atom.args.size() != m.args().size())
    return false;
  for (std::size_t i = 0; i < atom.args.size(); ++i)
    if (!param_matches(atom.args[i], b, m.args()[i])) return false;
  if (atom.ret.has_value() != m.ret().has_value()) return false;
  return !atom.ret || param_matches(*atom.ret, b, *m.ret());
}

bool matches(std::span<const Message> word, const Binding& b, const Matcher& r) {
  // Post-order node list so children precede parents.
  std::vector<const Matcher*> nodes;
  std::unordered_map<const Matcher*, std::size_t> index;
  std::function<void(const Matcher*)> flatten = [&](const Matcher* m) {
    if (index.count(m)) return;
    for (const auto& k : m->children()) flatten(k.get());
    index[m] = nodes.size();
    nodes.push_back(m);
  };
  flatten(&r);

  const std::size_t n = word.size();
  const std::size_t w = n + 1;
  // table[node][i * w + j]: does word[i, j) match node?
  std::vector<std::vector<char>> table(nodes.size(), std::vector<char>(w * w, 0));
  std::vector<char> atom_hit;

  for (std::size_t len = 0; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      const std::size_t j = i + len;
      for (std::size_t id = 0; id < nodes.size(); ++id) {
        const Matcher& m = *nodes[id];
        auto at = [&](const MatcherPtr& k, std::size_t a, std::size_t c) {
          return table[index.at(k.get())][a * w + c] != 0;
        };
        bool v = false;
        switch (m.op()) {
          case Matcher::Op::Atom:
            v = len == 1 && atom_matches(m.message(), b, word[i]);
            break;
          case Matcher::Op::Any: v = len == 1; break;
          case Matcher::Op::Epsilon: v = len == 0; break;
          case Matcher::Op::Empty: v = false; break;
          case Matcher::Op::Concat:
            for (std::size_t k = i; k <= j && !v; ++k)
              v = at(m.children()[0], i, k) && at(m.children()[1], k, j);
            break;
          case Matcher::Op::Star:
            if (len == 0) {
              v = true;
            } else {
              for (std::size_t k = i + 1; k <= j && !v; ++k)
                v = at(m.children()[0], i, k) && table[id][k * w + j];
            }
            break;
          case Matcher::Op::Union:
            v = at(m.children()[0], i, j) || at(m.children()[1], i, j);
            break;
          case Matcher::Op::Intersect:
            v = at(m.children()[0], i, j) && at(m.children()[1], i, j);
            break;
          case Matcher::Op::Negate: v = !at(m.children()[0], i, j); break;
        }
        table[id][i * w + j] = v;
      }
    }
  }
  return table[index.at(&r)][0 * w + n] != 0;
}

bool matches(const Trace& t, const Binding& b, const Matcher& r) {
  return matches(std::span<const Message>(t.messages()), b, r);
}

std::set<std::string> free_vars(const Matcher& r) {
  std::set<std::string> out;
  for_each_param(r, [&](const Param& p) {
    if (p.is_var()) out.insert(p.var);
  });
  return out;
}

std::set<std::string> free_vars(const Rule& r) {
  auto out = free_vars(*r.matcher);
  for_each_param(r.target, [&](const Param& p) {
    if (p.is_var()) out.insert(p.var);
  });
  return out;
}

std::map<std::string, std::string> var_types(const Rule& r) {
  std::map<std::string, std::string> out;
  auto note = [&](const Param& p) {
    if (!p.is_var()) return;
    auto& t = out[p.var];
    if (t.empty()) t = p.type;
  };
  for_each_param(*r.matcher, note);
  for_each_param(r.target, note);
  return out;
}

std::set<std::string> mentioned_functions(const LifestateSpec& s) {
  std::set<std::string> out;
  std::function<void(const Matcher&)> walk = [&](const Matcher& m) {
    if (m.op() == Matcher::Op::Atom) out.insert(m.message().fun);
    for (const auto& k : m.children()) walk(*k);
  };
  for (const auto& r : s.rules) {
    walk(*r.matcher);
    out.insert(r.target.fun);
  }
  return out;
}

}  // namespace lifeguard
