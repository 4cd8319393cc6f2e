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

#include "lifeguard/lambda_life.hpp"

#include <charconv>
#include <functional>
#include <random>

#include "lexer.hpp"

namespace lifeguard::life {

// ---------------------------------------------------------------------------
// Surface syntax

namespace {

using detail::Tok;
using detail::TokenStream;

// Surface tree before let-normalization.
struct S;
using SPtr = std::unique_ptr<S>;

struct S {
  enum class K {
    Var, Lit, Thk, Lambda, Let, If, Seq, Bind, Invoke, Enable, Disable, Allow, Disallow,
    NewCell, Get, Set, New, Binary
  };
  K k;
  int line = 0;
  std::string name;   // Var, Let, New label, Binary op
  std::string type;   // New
  Value lit;
  Package pkg = Package::Fwk;
  std::vector<std::string> params;
  std::vector<SPtr> kids;
};

SPtr node(S::K k, int line) {
  auto s = std::make_unique<S>();
  s->k = k;
  s->line = line;
  return s;
}

const std::set<std::string, std::less<>> kKeywords = {
    "let", "in", "if", "then", "else", "bind", "invoke", "enable", "disable", "allow",
    "disallow", "force", "newcell", "get", "set", "new", "thk", "unit", "true", "false",
    "app", "fwk"};

class Parser {
 public:
  explicit Parser(std::string_view text) : ts_(detail::tokenize(text)) {}

  SPtr program() {
    auto e = expr();
    if (!ts_.at_end()) ts_.fail("unexpected input after program");
    return e;
  }

 private:
  SPtr expr() {
    auto e = simple();
    if (ts_.peek().is(";")) {
      int line = ts_.next().line;
      auto s = node(S::K::Seq, line);
      s->kids.push_back(std::move(e));
      s->kids.push_back(expr());
      return s;
    }
    return e;
  }

  SPtr simple() {
    const auto& t = ts_.peek();
    int line = t.line;
    if (t.is("let")) {
      ts_.next();
      auto s = node(S::K::Let, line);
      s->name = ident("variable");
      ts_.expect("=");
      s->kids.push_back(expr());
      ts_.expect("in");
      s->kids.push_back(expr());
      return s;
    }
    if (t.is("if")) {
      ts_.next();
      auto s = node(S::K::If, line);
      s->kids.push_back(expr());
      ts_.expect("then");
      s->kids.push_back(simple());
      ts_.expect("else");
      s->kids.push_back(simple());
      return s;
    }
    if (auto lam = try_lambda()) return lam;
    return comparison();
  }

  SPtr try_lambda() {
    std::size_t save = ts_.position();
    int line = ts_.peek().line;
    std::vector<std::string> params;
    if (ts_.peek().kind == Tok::Ident && !kKeywords.count(ts_.peek().text) &&
        ts_.peek(1).is("=>")) {
      params.push_back(ts_.next().text);
    } else if (ts_.peek().is("(")) {
      ts_.next();
      if (!ts_.peek().is(")")) {
        while (true) {
          if (ts_.peek().kind != Tok::Ident || kKeywords.count(ts_.peek().text)) {
            ts_.rewind(save);
            return nullptr;
          }
          params.push_back(ts_.next().text);
          if (!ts_.accept(",")) break;
        }
      }
      if (!ts_.accept(")") || !ts_.peek().is("=>")) {
        ts_.rewind(save);
        return nullptr;
      }
    } else {
      return nullptr;
    }
    ts_.expect("=>");
    ts_.expect("[");
    std::string tag = ts_.expect_ident("package tag");
    auto s = node(S::K::Lambda, line);
    if (tag == "app") s->pkg = Package::App;
    else if (tag == "fwk") s->pkg = Package::Fwk;
    else ts_.fail("package tag must be 'app' or 'fwk'");
    ts_.expect("]");
    s->params = std::move(params);
    s->kids.push_back(expr());
    return s;
  }

  SPtr comparison() {
    auto a = arith();
    if (ts_.peek().is("==") || ts_.peek().is("<")) {
      auto op = ts_.next();
      auto s = node(S::K::Binary, op.line);
      s->name = op.text;
      s->kids.push_back(std::move(a));
      s->kids.push_back(arith());
      return s;
    }
    return a;
  }

  SPtr arith() {
    auto a = prefix();
    while (ts_.peek().is("+") || ts_.peek().is("-")) {
      auto op = ts_.next();
      auto s = node(S::K::Binary, op.line);
      s->name = op.text;
      s->kids.push_back(std::move(a));
      s->kids.push_back(prefix());
      a = std::move(s);
    }
    return a;
  }

  SPtr prefix() {
    const auto& t = ts_.peek();
    int line = t.line;
    auto unary = [&](S::K k) {
      ts_.next();
      auto s = node(k, line);
      s->kids.push_back(atom());
      return s;
    };
    if (t.is("force")) ts_.fail("'force' is internal to the machine and cannot be written");
    if (t.is("bind")) {
      ts_.next();
      auto s = node(S::K::Bind, line);
      s->kids.push_back(atom());
      while (starts_atom()) s->kids.push_back(atom());
      return s;
    }
    if (t.is("invoke")) return unary(S::K::Invoke);
    if (t.is("enable")) return unary(S::K::Enable);
    if (t.is("disable")) return unary(S::K::Disable);
    if (t.is("allow")) return unary(S::K::Allow);
    if (t.is("disallow")) return unary(S::K::Disallow);
    if (t.is("newcell")) return unary(S::K::NewCell);
    if (t.is("get")) return unary(S::K::Get);
    if (t.is("set")) {
      ts_.next();
      auto s = node(S::K::Set, line);
      s->kids.push_back(atom());
      s->kids.push_back(atom());
      return s;
    }
    if (t.is("new")) {
      ts_.next();
      auto s = node(S::K::New, line);
      s->name = ident("object label");
      ts_.expect(":");
      s->type = ts_.expect_ident("object type");
      return s;
    }
    return atom();
  }

  bool starts_atom() const {
    const auto& t = ts_.peek();
    switch (t.kind) {
      case Tok::Int:
      case Tok::String:
      case Tok::Object: return true;
      case Tok::Ident:
        return t.text == "thk" || t.text == "unit" || t.text == "true" || t.text == "false" ||
               !kKeywords.count(t.text);
      case Tok::Punct: return t.text == "(";
      default: return false;
    }
  }

  SPtr atom() {
    int line = ts_.peek().line;
    Value v;
    if (detail::read_value(ts_, v)) {
      auto s = node(S::K::Lit, line);
      s->lit = std::move(v);
      return s;
    }
    if (ts_.accept("thk")) return node(S::K::Thk, line);
    if (ts_.accept("(")) {
      if (ts_.accept(")")) return node(S::K::Lit, line);  // () is unit
      auto e = expr();
      ts_.expect(")");
      return e;
    }
    auto s = node(S::K::Var, line);
    s->name = ident("expression");
    return s;
  }

  std::string ident(std::string_view what) {
    if (ts_.peek().kind != Tok::Ident || kKeywords.count(ts_.peek().text))
      ts_.fail("expected " + std::string(what));
    return ts_.next().text;
  }

  TokenStream ts_;
};

// Let-normalization with scope checks.
class Lowering {
 public:
  ExprPtr lower(const S& s, const std::string& name_hint = {}) {
    std::vector<std::pair<std::string, ExprPtr>> lets;
    ExprPtr e = lower_in(s, lets, name_hint);
    return wrap(std::move(lets), std::move(e));
  }

 private:
  struct Scope {
    std::vector<std::string> vars;
  };

  ExprPtr wrap(std::vector<std::pair<std::string, ExprPtr>> lets, ExprPtr body) {
    for (auto it = lets.rbegin(); it != lets.rend(); ++it) {
      auto e = std::make_shared<Expr>();
      e->op = Expr::Op::Let;
      e->var = it->first;
      e->first = std::move(it->second);
      e->second = std::move(body);
      e->line = e->first->line;
      body = std::move(e);
    }
    return body;
  }

  bool bound(const std::string& x) const {
    for (auto it = vars_.rbegin(); it != vars_.rend(); ++it)
      if (*it == x) return true;
    return false;
  }

  [[noreturn]] void fail(const std::string& what, int line) const { throw ParseError(what, line); }

  void check_effect(const S& s, std::string_view op) const {
    if (!funs_.empty() && funs_.back() == Package::App)
      fail(std::string("'") + std::string(op) + "' is not available to app functions", s.line);
  }

  Atom atomize(const S& s, std::vector<std::pair<std::string, ExprPtr>>& lets,
               const std::string& name_hint = {}) {
    Atom a;
    switch (s.k) {
      case S::K::Var:
        if (!bound(s.name)) fail("unbound identifier '" + s.name + "'", s.line);
        a.kind = Atom::Kind::Var;
        a.var = s.name;
        return a;
      case S::K::Lit:
        a.kind = Atom::Kind::Lit;
        a.lit = s.lit;
        return a;
      case S::K::Thk:
        if (funs_.empty()) fail("'thk' used outside a function body", s.line);
        a.kind = Atom::Kind::Thk;
        return a;
      case S::K::Lambda: {
        auto f = std::make_shared<Function>();
        f->name = name_hint.empty() ? "lambda$" + std::to_string(++anon_) : name_hint;
        f->package = s.pkg;
        f->params = s.params;
        f->line = s.line;
        std::size_t mark = vars_.size();
        for (const auto& p : s.params) vars_.push_back(p);
        funs_.push_back(s.pkg);
        f->body = lower(*s.kids[0]);
        funs_.pop_back();
        vars_.resize(mark);
        a.kind = Atom::Kind::Fun;
        a.fun = std::move(f);
        return a;
      }
      default: {
        std::string tmp = "$" + std::to_string(++temp_);
        ExprPtr e = lower_in(s, lets, name_hint);
        lets.emplace_back(tmp, std::move(e));
        vars_.push_back(tmp);
        a.kind = Atom::Kind::Var;
        a.var = tmp;
        return a;
      }
    }
  }

  ExprPtr lower_in(const S& s, std::vector<std::pair<std::string, ExprPtr>>& lets,
                   const std::string& name_hint) {
    auto e = std::make_shared<Expr>();
    e->line = s.line;
    auto operands = [&](Expr::Op op) {
      e->op = op;
      for (const auto& k : s.kids) e->atoms.push_back(atomize(*k, lets));
    };
    switch (s.k) {
      case S::K::Var:
      case S::K::Lit:
      case S::K::Thk:
      case S::K::Lambda:
        e->op = Expr::Op::Atom;
        e->atoms.push_back(atomize(s, lets, name_hint));
        break;
      case S::K::Let:
      case S::K::Seq: {
        std::size_t mark = vars_.size();
        e->op = Expr::Op::Let;
        e->var = s.k == S::K::Let ? s.name : "_";
        e->first = lower(*s.kids[0], s.k == S::K::Let ? s.name : std::string());
        vars_.push_back(e->var);
        e->second = lower(*s.kids[1]);
        vars_.resize(mark);
        break;
      }
      case S::K::If:
        e->op = Expr::Op::If;
        e->atoms.push_back(atomize(*s.kids[0], lets));
        e->first = lower(*s.kids[1]);
        e->second = lower(*s.kids[2]);
        break;
      case S::K::Bind: operands(Expr::Op::Bind); break;
      case S::K::Invoke: operands(Expr::Op::Invoke); break;
      case S::K::Enable: check_effect(s, "enable"); operands(Expr::Op::Enable); break;
      case S::K::Disable: check_effect(s, "disable"); operands(Expr::Op::Disable); break;
      case S::K::Allow: check_effect(s, "allow"); operands(Expr::Op::Allow); break;
      case S::K::Disallow: check_effect(s, "disallow"); operands(Expr::Op::Disallow); break;
      case S::K::NewCell: operands(Expr::Op::NewCell); break;
      case S::K::Get: operands(Expr::Op::Get); break;
      case S::K::Set: operands(Expr::Op::Set); break;
      case S::K::New:
        e->op = Expr::Op::New;
        e->var = s.name;
        e->type = s.type;
        break;
      case S::K::Binary:
        operands(Expr::Op::Binary);
        e->var = s.name;
        break;
    }
    return e;
  }

  std::vector<std::string> vars_;
  std::vector<Package> funs_;
  int temp_ = 0;
  int anon_ = 0;
};

}  // namespace

Program parse_program(std::string_view text) {
  Parser parser(text);
  auto surface = parser.program();
  Lowering lowering;
  return Program{lowering.lower(*surface)};
}

// ---------------------------------------------------------------------------
// Runtime values

const RtThunk* RtValue::thunk() const {
  auto p = std::get_if<ThunkPtr>(&v);
  return p ? p->get() : nullptr;
}

const Closure* RtValue::closure() const {
  auto p = std::get_if<std::shared_ptr<const Closure>>(&v);
  return p ? p->get() : nullptr;
}

std::string RtValue::to_string() const {
  if (auto x = value()) return x->to_string();
  if (auto c = closure()) return "<fun " + c->fun->name + ">";
  if (auto t = thunk()) return "<thunk " + t->to_string() + ">";
  return "<cell " + std::to_string(std::get<CellRef>(v).id) + ">";
}

int compare(const RtValue& a, const RtValue& b) {
  if (a.v.index() != b.v.index()) return a.v.index() < b.v.index() ? -1 : 1;
  if (auto x = a.value()) {
    auto c = *x <=> *b.value();
    return c < 0 ? -1 : c > 0 ? 1 : 0;
  }
  if (auto x = a.closure()) {
    auto y = b.closure();
    return x->serial < y->serial ? -1 : x->serial > y->serial ? 1 : 0;
  }
  if (auto x = a.thunk()) {
    auto y = b.thunk();
    if (x->closure->fun->name != y->closure->fun->name)
      return x->closure->fun->name < y->closure->fun->name ? -1 : 1;
    std::size_t n = std::min(x->args.size(), y->args.size());
    for (std::size_t i = 0; i < n; ++i)
      if (int c = compare(x->args[i], y->args[i])) return c;
    if (x->args.size() != y->args.size()) return x->args.size() < y->args.size() ? -1 : 1;
    auto sx = x->closure->serial, sy = y->closure->serial;
    return sx < sy ? -1 : sx > sy ? 1 : 0;
  }
  auto ca = std::get<CellRef>(a.v).id, cb = std::get<CellRef>(b.v).id;
  return ca < cb ? -1 : ca > cb ? 1 : 0;
}

bool ThunkLess::operator()(const ThunkPtr& a, const ThunkPtr& b) const {
  return compare(RtValue{a}, RtValue{b}) < 0;
}

std::optional<Thunk> RtThunk::observable() const {
  Thunk t;
  t.fun = FunctionSymbol{closure->fun->name, closure->fun->package};
  for (const auto& a : args) {
    auto v = a.value();
    if (!v) return std::nullopt;
    t.args.push_back(*v);
  }
  return t;
}

std::string RtThunk::to_string() const {
  std::string s = closure->fun->name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ",";
    s += args[i].to_string();
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Machine

struct Machine {
  static const RtValue* lookup(const EnvPtr& env, const std::string& x) {
    for (const EnvNode* n = env.get(); n; n = n->next.get())
      if (n->name == x) return &n->value;
    return nullptr;
  }

  static EnvPtr extend(EnvPtr env, std::string name, RtValue v) {
    return std::make_shared<const EnvNode>(EnvNode{std::move(name), std::move(v), std::move(env)});
  }

  static RtValue eval_atom(MachineState& s, const Atom& a) {
    switch (a.kind) {
      case Atom::Kind::Lit: return RtValue{a.lit};
      case Atom::Kind::Var:
      case Atom::Kind::Thk: {
        const std::string& name = a.kind == Atom::Kind::Thk ? "thk" : a.var;
        auto v = lookup(s.env_, name);
        if (!v) throw StuckError("unbound variable '" + name + "'");
        return *v;
      }
      case Atom::Kind::Fun: {
        auto c = std::make_shared<Closure>();
        c->fun = a.fun;
        c->env = s.env_;
        c->serial = s.next_serial_++;
        return RtValue{std::shared_ptr<const Closure>(std::move(c))};
      }
    }
    throw StuckError("bad atom");
  }

  static ThunkPtr as_thunk(const RtValue& v, std::string_view op) {
    auto p = std::get_if<ThunkPtr>(&v.v);
    if (!p) throw StuckError(std::string(op) + " expects a thunk, got " + v.to_string());
    return *p;
  }

  static Package caller_package(const std::vector<Frame>& k) {
    for (auto it = k.rbegin(); it != k.rend(); ++it)
      if (it->kind == Frame::Kind::Bottom) return Package::Fwk;  // the event loop
      else if (it->kind == Frame::Kind::Thunk) return it->thunk->closure->fun->package;
    return Package::Fwk;
  }

  static Thunk observe(const RtThunk& t) {
    auto o = t.observable();
    if (!o) throw StuckError("non-first-order argument crosses the app-framework boundary in " +
                             t.to_string());
    return *o;
  }

  static void to_return(MachineState& s, RtValue v) {
    s.control_ = MachineState::Control::Return;
    s.value_ = std::move(v);
    s.expr_.reset();
  }

  static void to_eval(MachineState& s, ExprPtr e, EnvPtr env) {
    s.control_ = MachineState::Control::Eval;
    s.expr_ = std::move(e);
    s.env_ = std::move(env);
  }

  static void dispatch(MachineState& s, const ThunkPtr& t) {
    Frame f;
    f.kind = Frame::Kind::Bottom;
    f.thunk = t;
    s.stack_.push_back(std::move(f));
    s.control_ = MachineState::Control::Force;
    s.forcing_ = t;
  }

  static std::optional<Message> eval(MachineState& s) {
    const Expr& e = *s.expr_;
    auto arg = [&](std::size_t i) { return eval_atom(s, e.atoms.at(i)); };
    switch (e.op) {
      case Expr::Op::Atom: to_return(s, arg(0)); return std::nullopt;
      case Expr::Op::Let: {
        Frame f;
        f.kind = Frame::Kind::Let;
        f.var = e.var;
        f.body = e.second;
        f.env = s.env_;
        s.stack_.push_back(std::move(f));
        to_eval(s, e.first, s.env_);
        return std::nullopt;
      }
      case Expr::Op::If: {
        auto c = arg(0);
        auto v = c.value();
        if (!v || v->kind() != Value::Kind::Bool)
          throw StuckError("if condition is not a boolean: " + c.to_string());
        to_eval(s, v->as_bool() ? e.first : e.second, s.env_);
        return std::nullopt;
      }
      case Expr::Op::Bind: {
        auto f = arg(0);
        auto cp = std::get_if<std::shared_ptr<const Closure>>(&f.v);
        if (!cp) throw StuckError("bind expects a function, got " + f.to_string());
        auto t = std::make_shared<RtThunk>();
        t->closure = *cp;
        for (std::size_t i = 1; i < e.atoms.size(); ++i) t->args.push_back(arg(i));
        if (t->args.size() != (*cp)->fun->params.size())
          throw StuckError("function " + (*cp)->fun->name + " takes " +
                           std::to_string((*cp)->fun->params.size()) + " argument(s), bound to " +
                           std::to_string(t->args.size()));
        to_return(s, RtValue{ThunkPtr(std::move(t))});
        return std::nullopt;
      }
      case Expr::Op::Invoke: {
        auto t = as_thunk(arg(0), "invoke");
        if (s.disallowed_.count(t)) {
          Thunk o = observe(*t);
          s.control_ = MachineState::Control::Bad;
          return Message::dis(Message(MessageKind::Ci, o.fun.name, o.args));
        }
        s.control_ = MachineState::Control::Force;
        s.forcing_ = std::move(t);
        return std::nullopt;
      }
      case Expr::Op::Enable:
      case Expr::Op::Disable:
      case Expr::Op::Allow:
      case Expr::Op::Disallow: {
        auto v = arg(0);
        auto t = as_thunk(v, "enable/disable/allow/disallow");
        if (e.op == Expr::Op::Enable) s.enabled_.insert(t);
        else if (e.op == Expr::Op::Disable) s.enabled_.erase(t);
        else if (e.op == Expr::Op::Disallow) s.disallowed_.insert(t);
        else s.disallowed_.erase(t);
        to_return(s, std::move(v));
        return std::nullopt;
      }
      case Expr::Op::NewCell: {
        std::uint64_t id = s.next_cell_++;
        s.store_[id] = arg(0);
        to_return(s, RtValue{CellRef{id}});
        return std::nullopt;
      }
      case Expr::Op::Get:
      case Expr::Op::Set: {
        auto c = arg(0);
        auto ref = std::get_if<CellRef>(&c.v);
        if (!ref) throw StuckError("get/set expects a cell, got " + c.to_string());
        if (e.op == Expr::Op::Get) {
          to_return(s, s.store_.at(ref->id));
        } else {
          s.store_[ref->id] = arg(1);
          to_return(s, RtValue{Value::unit()});
        }
        return std::nullopt;
      }
      case Expr::Op::New: {
        std::uint64_t n = ++s.next_object_[e.type];
        to_return(s, RtValue{Value::object(e.var, n, e.type)});
        return std::nullopt;
      }
      case Expr::Op::Binary: {
        auto a = arg(0), b = arg(1);
        if (e.var == "==") {
          to_return(s, RtValue{Value::boolean(compare(a, b) == 0)});
          return std::nullopt;
        }
        auto x = a.value(), y = b.value();
        if (!x || !y || x->kind() != Value::Kind::Int || y->kind() != Value::Kind::Int)
          throw StuckError("operator " + e.var + " expects integers");
        Value r = e.var == "<"   ? Value::boolean(x->as_int() < y->as_int())
                  : e.var == "+" ? Value::integer(x->as_int() + y->as_int())
                                 : Value::integer(x->as_int() - y->as_int());
        to_return(s, RtValue{r});
        return std::nullopt;
      }
    }
    throw StuckError("unknown expression");
  }

  static std::optional<Message> force(MachineState& s) {
    ThunkPtr t = std::move(s.forcing_);
    const Closure& c = *t->closure;
    Package callee = c.fun->package;
    Package caller = caller_package(s.stack_);
    std::optional<Message> label;
    if (callee != caller) {
      Thunk o = observe(*t);
      label = Message(callee == Package::App ? MessageKind::Cb : MessageKind::Ci, o.fun.name,
                      o.args);
    }
    EnvPtr env = extend(c.env, "thk", RtValue{t});
    for (std::size_t i = 0; i < c.fun->params.size(); ++i)
      env = extend(std::move(env), c.fun->params[i], t->args[i]);
    Frame f;
    f.kind = Frame::Kind::Thunk;
    f.thunk = t;
    s.stack_.push_back(std::move(f));
    to_eval(s, c.fun->body, std::move(env));
    return label;
  }

  static std::optional<Message> ret(MachineState& s) {
    Frame f = std::move(s.stack_.back());
    s.stack_.pop_back();
    switch (f.kind) {
      case Frame::Kind::Let:
        to_eval(s, f.body, extend(f.env, f.var, s.value_));
        return std::nullopt;
      case Frame::Kind::Bottom:
        return std::nullopt;  // Finish
      case Frame::Kind::Thunk: {
        Package callee = f.thunk->closure->fun->package;
        if (callee == caller_package(s.stack_)) return std::nullopt;
        Thunk o = observe(*f.thunk);
        auto v = s.value_.value();
        if (!v) throw StuckError("non-first-order value returned across the boundary by " +
                                 f.thunk->to_string());
        return Message(callee == Package::App ? MessageKind::CbRet : MessageKind::CiRet,
                       o.fun.name, o.args, *v);
      }
    }
    return std::nullopt;
  }
};

MachineState MachineState::initial(const Program& p) {
  MachineState s;
  s.control_ = Control::Eval;
  s.expr_ = p.main;
  return s;
}

std::vector<Successor> step(const MachineState& s) {
  std::vector<Successor> out;
  if (s.is_bad()) throw StuckError("the bad state has no successors");
  if (s.at_event_loop()) {
    if (s.enabled().empty()) throw StuckError("no enabled event to dispatch");
    for (const auto& t : s.enabled()) {
      MachineState n = s;
      Machine::dispatch(n, t);
      out.push_back({std::nullopt, std::move(n)});
    }
    return out;
  }
  MachineState n = s;
  std::optional<Message> label;
  switch (s.control()) {
    case MachineState::Control::Eval: label = Machine::eval(n); break;
    case MachineState::Control::Force: label = Machine::force(n); break;
    case MachineState::Control::Return: label = Machine::ret(n); break;
    case MachineState::Control::Bad: break;
  }
  out.push_back({std::move(label), std::move(n)});
  return out;
}

// ---------------------------------------------------------------------------
// Runs

Schedule Schedule::explicit_list(std::vector<std::size_t> choices) {
  Schedule s;
  s.choices = std::move(choices);
  return s;
}

Schedule Schedule::random(std::uint64_t seed) {
  Schedule s;
  s.seed = seed;
  return s;
}

Schedule parse_schedule(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  if (trim(text).empty()) return Schedule::explicit_list({});
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    auto item = trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
    std::size_t n = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), n);
    if (item.empty() || ec != std::errc() || p != item.data() + item.size())
      throw Error("schedule entries must be non-negative integers, got '" + std::string(item) + "'");
    out.push_back(n);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Schedule::explicit_list(std::move(out));
}

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Finished: return "finished";
    case RunStatus::Bad: return "bad";
    case RunStatus::BudgetExhausted: return "budget_exhausted";
    case RunStatus::Stuck: return "stuck";
  }
  return "";
}

namespace {

// Drives the machine; `on_force` sees every forced thunk.
RunResult drive(const Program& p, const Schedule& sched, std::size_t max_steps,
                const std::function<bool(const RtThunk&)>& on_force) {
  RunResult r;
  std::vector<Message> labels;
  MachineState s = MachineState::initial(p);
  std::mt19937_64 rng(sched.seed.value_or(0));
  std::size_t next_choice = 0;
  auto finish = [&](RunStatus st) {
    r.status = st;
    r.trace = Trace(std::move(labels));
    return r;
  };
  while (true) {
    if (s.is_bad()) return finish(RunStatus::Bad);
    if (s.at_event_loop() && s.enabled().empty()) return finish(RunStatus::Finished);
    if (r.steps >= max_steps) return finish(RunStatus::BudgetExhausted);
    std::vector<Successor> next;
    try {
      next = step(s);
    } catch (const StuckError& e) {
      r.diagnostic = e.what();
      return finish(RunStatus::Stuck);
    }
    std::size_t pick = 0;
    if (next.size() > 1 || s.at_event_loop()) {
      if (sched.seed) {
        pick = std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng);
      } else {
        if (next_choice >= sched.choices.size()) return finish(RunStatus::Finished);
        pick = sched.choices[next_choice++];
        if (pick >= next.size())
          throw Error("schedule entry " + std::to_string(next_choice) + " selects event " +
                      std::to_string(pick) + " but only " + std::to_string(next.size()) +
                      " are enabled");
      }
    }
    ++r.steps;
    if (s.control() == MachineState::Control::Force && !on_force(*next[pick].next.continuation().back().thunk)) {
      r.diagnostic = "stopped";
      return finish(RunStatus::Finished);
    }
    if (next[pick].label) labels.push_back(*next[pick].label);
    s = std::move(next[pick].next);
  }
}

}  // namespace

RunResult run(const Program& p, const Schedule& sched, std::size_t max_steps) {
  return drive(p, sched, max_steps, [](const RtThunk&) { return true; });
}

void check_framework_shape(const Program& p, const std::string& init) {
  bool preamble = true;
  std::function<void(const Expr&, bool)> walk = [&](const Expr& e, bool top) {
    auto visit_atom = [&](const Atom& a) {
      if (a.kind != Atom::Kind::Fun) return;
      if (a.fun->package == Package::Fwk && !preamble)
        throw Error("line " + std::to_string(a.fun->line) + ": framework function '" +
                    a.fun->name + "' defined after the framework preamble");
      bool saved = preamble;
      walk(*a.fun->body, false);
      preamble = saved;
    };
    if (top && e.op == Expr::Op::Let) {
      const Expr& rhs = *e.first;
      bool fwk_def = (rhs.op == Expr::Op::Atom && rhs.atoms[0].kind == Atom::Kind::Fun &&
                      rhs.atoms[0].fun->package == Package::Fwk) ||
                     rhs.op == Expr::Op::NewCell;
      if (!fwk_def) preamble = false;
      walk(rhs, false);
      walk(*e.second, true);
      return;
    }
    if (top) preamble = false;
    for (const auto& a : e.atoms) visit_atom(a);
    if (e.first) walk(*e.first, false);
    if (e.second) walk(*e.second, false);
  };
  walk(*p.main, true);

  // The first forced thunk must be the init function.
  std::optional<std::string> first;
  drive(p, Schedule::explicit_list({}), 100000, [&](const RtThunk& t) {
    first = t.closure->fun->name;
    return false;
  });
  if (!first) throw Error("the program never invokes the init function '" + init + "'");
  if (*first != init)
    throw Error("the program must start by invoking '" + init + "', but first forces '" +
                *first + "'");
}

}  // namespace lifeguard::life
