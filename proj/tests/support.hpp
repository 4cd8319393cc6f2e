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

// Fixture access, random generators and independent oracles shared by the
// unit, property and acceptance suites.

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lifeguard/abstract_ts.hpp"
#include "lifeguard/grounding.hpp"
#include "lifeguard/lambda_life.hpp"
#include "lifeguard/lifestate.hpp"
#include "lifeguard/trace.hpp"
#include "lifeguard/validation.hpp"
#include "lifeguard/verification.hpp"

#ifndef LIFEGUARD_FIXTURE_DIR
#error "LIFEGUARD_FIXTURE_DIR must be defined"
#endif

namespace lgtest {

using namespace lifeguard;

inline std::string fixture_path(const std::string& name) {
  return std::string(LIFEGUARD_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Trace trace_fixture(const std::string& name) { return parse_trace(read_fixture(name)); }
inline LifestateSpec spec_fixture(const std::string& name) { return parse_spec(read_fixture(name)); }

inline Trace trace_fixed() { return trace_fixture("trace_fixed.trace"); }
inline Trace trace_buggy() { return trace_fixture("trace_buggy.trace"); }
inline LifestateSpec spec_run() { return spec_fixture("spec_run.spec"); }
inline LifestateSpec spec_run_broken() { return spec_fixture("spec_run_broken.spec"); }
inline LifestateSpec spec_lifecycle() { return spec_fixture("spec_lifecycle.spec"); }
inline LifestateSpec spec_top() { return spec_fixture("spec_top.spec"); }
inline LifestateSpec spec_empty() { return spec_fixture("empty.spec"); }

inline life::Program program_fixture(const std::string& name) {
  return life::parse_program(read_fixture(name));
}

inline life::Schedule schedule_fixture(const std::string& name) {
  std::string s = read_fixture(name);
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return life::parse_schedule(s);
}

inline std::vector<std::string> strings(const std::vector<Message>& ms) {
  std::vector<std::string> out;
  for (const auto& m : ms) out.push_back(m.to_string());
  return out;
}

// ---------------------------------------------------------------------------
// Naive regex oracle: direct recursion over split points.

inline bool naive_atom(const ParamMessage& a, const Binding& b, const Message& m) {
  if (a.kind != m.kind() || a.fun != m.fun() || a.args.size() != m.args().size()) return false;
  auto value_of = [&](const Param& p, Value& out) {
    if (p.literal) {
      out = *p.literal;
      return true;
    }
    auto it = b.find(p.var);
    if (it == b.end()) return false;
    if (!p.type.empty() && it->second.type_name() != p.type) return false;
    out = it->second;
    return true;
  };
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    Value v;
    if (!value_of(a.args[i], v) || !(v == m.args()[i])) return false;
  }
  if (a.ret.has_value() != m.ret().has_value()) return false;
  if (a.ret) {
    Value v;
    if (!value_of(*a.ret, v) || !(v == *m.ret())) return false;
  }
  return true;
}

inline bool naive_match(const Matcher& r, std::span<const Message> w, const Binding& b) {
  using Op = Matcher::Op;
  const auto& k = r.children();
  switch (r.op()) {
    case Op::Atom: return w.size() == 1 && naive_atom(r.message(), b, w[0]);
    case Op::Any: return w.size() == 1;
    case Op::Epsilon: return w.empty();
    case Op::Empty: return false;
    case Op::Concat:
      for (std::size_t i = 0; i <= w.size(); ++i)
        if (naive_match(*k[0], w.subspan(0, i), b) && naive_match(*k[1], w.subspan(i), b))
          return true;
      return false;
    case Op::Star:
      if (w.empty()) return true;
      for (std::size_t i = 1; i <= w.size(); ++i)
        if (naive_match(*k[0], w.subspan(0, i), b) && naive_match(r, w.subspan(i), b)) return true;
      return false;
    case Op::Union: return naive_match(*k[0], w, b) || naive_match(*k[1], w, b);
    case Op::Intersect: return naive_match(*k[0], w, b) && naive_match(*k[1], w, b);
    case Op::Negate: return !naive_match(*k[0], w, b);
  }
  return false;
}

// ---------------------------------------------------------------------------
// From-scratch store evaluation over the full history.

struct Stores {
  std::set<Message> back, in;
};

struct Firing {
  std::set<Message> permits, prohibits;
  bool consistent() const {
    return std::none_of(permits.begin(), permits.end(),
                        [&](const Message& m) { return prohibits.count(m) != 0; });
  }
};

inline Firing firing_from_scratch(const GroundSpec& g, std::span<const Message> history) {
  Firing f;
  for (const auto& gr : g.rules) {
    if (!matches(history, {}, *gr.rule.matcher)) continue;
    Message target = *gr.rule.target.to_message();
    (gr.rule.polarity == Polarity::Permit ? f.permits : f.prohibits).insert(target);
  }
  return f;
}

inline Stores update_from_scratch(const GroundSpec& g, const Stores& prev, const Firing& f) {
  Stores out;
  bool cons = f.consistent();
  for (const auto& m : g.alphabet) {
    bool permit = f.permits.count(m) != 0;
    bool prohibit = f.prohibits.count(m) != 0;
    if (m.is_back() && cons && !prohibit && (permit || prev.back.count(m))) out.back.insert(m);
    if (m.is_in() && (!cons || (!permit && (prohibit || prev.in.count(m))))) out.in.insert(m);
  }
  return out;
}

inline Stores initial_from_scratch(const GroundSpec& g) {
  Stores all_back;
  for (const auto& m : g.alphabet)
    if (m.is_back()) all_back.back.insert(m);
  return update_from_scratch(g, all_back, firing_from_scratch(g, {}));
}

// ---------------------------------------------------------------------------
// Random traces over a small vocabulary: callbacks onA(A), onB(B), onAB(A,B);
// callins run(A), stop(B), link(A,B). At most three objects.

struct Vocabulary {
  std::vector<Value> as{Value::object("a", 1, "A"), Value::object("a", 2, "A")};
  std::vector<Value> bs{Value::object("b", 1, "B")};
};

inline std::vector<Value> random_args(std::mt19937_64& rng, const Vocabulary& v,
                                      const std::string& sig) {
  std::vector<Value> out;
  for (char c : sig) {
    const auto& pool = c == 'A' ? v.as : v.bs;
    out.push_back(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
  }
  return out;
}

inline Trace random_trace(std::mt19937_64& rng, std::size_t max_messages = 20) {
  Vocabulary v;
  const std::vector<std::pair<std::string, std::string>> cbs = {{"onA", "A"}, {"onB", "B"}, {"onAB", "AB"}};
  const std::vector<std::pair<std::string, std::string>> cis = {{"run", "A"}, {"stop", "B"}, {"link", "AB"}};
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  std::vector<Message> out;
  while (true) {
    std::size_t calls = pick(3);
    std::size_t unit = 2 + 2 * calls;
    if (out.size() + unit > max_messages) break;
    const auto& cb = cbs[pick(cbs.size())];
    auto args = random_args(rng, v, cb.second);
    out.push_back(Message::cb(cb.first, args));
    for (std::size_t i = 0; i < calls; ++i) {
      const auto& ci = cis[pick(cis.size())];
      auto cargs = random_args(rng, v, ci.second);
      out.push_back(Message::ci(ci.first, cargs));
      out.push_back(Message::ciret(Value::unit(), ci.first, cargs));
    }
    out.push_back(Message::cbret(Value::unit(), cb.first, args));
    if (pick(4) == 0) break;
  }
  return Trace(std::move(out));
}

// Random specs over the same vocabulary; variables x:A, y:B.
inline LifestateSpec random_spec(std::mt19937_64& rng, std::size_t rules = 4) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  struct Sig {
    std::string kind, fun, types;
  };
  const std::vector<Sig> atoms = {{"cb", "onA", "A"},  {"cb", "onB", "B"},  {"cb", "onAB", "AB"},
                                  {"ci", "run", "A"},  {"ci", "stop", "B"}, {"ci", "link", "AB"}};
  auto var_of = [](char t) { return t == 'A' ? std::string("x") : std::string("y"); };
  auto atom_text = [&](const Sig& s, std::set<char>& bound) {
    std::string out = s.kind + " " + s.fun + "(";
    for (std::size_t i = 0; i < s.types.size(); ++i) {
      if (i) out += ",";
      out += var_of(s.types[i]) + ":" + s.types[i];
      bound.insert(s.types[i]);
    }
    return out + ")";
  };
  std::string text;
  for (std::size_t r = 0; r < rules; ++r) {
    std::set<char> bound;
    const Sig& p = atoms[pick(atoms.size())];
    const Sig& q = atoms[pick(atoms.size())];
    std::string m;
    switch (pick(6)) {
      case 0: m = "eps"; break;
      case 1: m = "TRUE* ; " + atom_text(p, bound); break;
      case 2: m = "TRUE* ; " + atom_text(p, bound) + " ; TRUE*"; break;
      case 3: m = "TRUE* ; " + atom_text(p, bound) + " ; TRUE* ; " + atom_text(q, bound); break;
      case 4: m = "!(TRUE* ; " + atom_text(p, bound) + " ; TRUE*)"; break;
      default:
        m = "(TRUE* ; " + atom_text(p, bound) + ") & !(TRUE* ; " + atom_text(q, bound) + " ; TRUE*)";
        break;
    }
    // Targets: callbacks may be permitted or prohibited, callins prohibited.
    const Sig& t = atoms[pick(atoms.size())];
    bool prohibit = t.kind == "ci" || pick(2) == 0;
    std::string target = t.kind + " " + t.fun + "(";
    for (std::size_t i = 0; i < t.types.size(); ++i) {
      if (i) target += ",";
      char ty = t.types[i];
      target += bound.count(ty) ? var_of(ty) : "forall " + var_of(ty) + ":" + ty;
    }
    target += ")";
    text += m + (prohibit ? " -/> " : " -> ") + target + "\n";
  }
  return parse_spec(text);
}

}  // namespace lgtest
