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

#include "lifeguard/grounding.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace lifeguard {

std::set<Value> ValueUniverse::all() const {
  std::set<Value> out;
  for (const auto& [_, vs] : by_type) out.insert(vs.begin(), vs.end());
  return out;
}

ValueUniverse value_universe(const Trace& t) {
  ValueUniverse u;
  auto add = [&](const Value& v) {
    u.by_type[std::string(v.type_name())].insert(v);
    if (!v.is_object()) u.constants.insert(v);
  };
  for (const auto& m : t) {
    for (const auto& a : m.args()) add(a);
    if (m.ret()) add(*m.ret());
  }
  return u;
}

int GroundSpec::letter_of(const Message& m) const {
  auto it = std::lower_bound(alphabet.begin(), alphabet.end(), m);
  if (it == alphabet.end() || !(*it == m)) return other_letter();
  return static_cast<int>(it - alphabet.begin());
}

std::string GroundSpec::letter_name(int letter) const {
  if (letter < 0 || letter >= other_letter()) return "OTHER";
  return alphabet[letter].to_string();
}

namespace {

void collect_atoms(const Matcher& m, std::vector<Message>& out) {
  if (m.op() == Matcher::Op::Atom) {
    auto g = m.message().to_message();
    if (!g) throw Error("internal: non-ground atom " + m.message().to_string());
    out.push_back(*g);
  }
  for (const auto& k : m.children()) collect_atoms(*k, out);
}

}  // namespace

GroundSpec ground_spec(const LifestateSpec& s, const Trace& t, std::size_t cap) {
  const ValueUniverse u = value_universe(t);
  const std::set<Value> everything = u.all();

  struct Plan {
    std::vector<std::string> vars;
    std::vector<std::vector<Value>> candidates;
    std::size_t count = 1;
  };
  std::vector<Plan> plans;
  std::size_t total = 0, worst = 0;
  for (std::size_t i = 0; i < s.rules.size(); ++i) {
    const Rule& r = s.rules[i];
    Plan p;
    for (const auto& [var, type] : var_types(r)) {
      std::vector<Value> cands;
      if (type.empty()) {
        cands.assign(everything.begin(), everything.end());
      } else if (auto it = u.by_type.find(type); it != u.by_type.end()) {
        cands.assign(it->second.begin(), it->second.end());
      }
      p.vars.push_back(var);
      if (cands.empty() || p.count == 0) {
        p.count = 0;
      } else if (p.count > std::numeric_limits<std::size_t>::max() / cands.size()) {
        p.count = std::numeric_limits<std::size_t>::max();
      } else {
        p.count *= cands.size();
      }
      p.candidates.push_back(std::move(cands));
    }
    total = total > std::numeric_limits<std::size_t>::max() - p.count
                ? std::numeric_limits<std::size_t>::max()
                : total + p.count;
    if (plans.empty() || p.count > plans[worst].count) worst = i;
    plans.push_back(std::move(p));
  }
  if (total > cap) {
    const Rule& r = s.rules[worst];
    throw GroundingError("grounding would create " + std::to_string(total) +
                         " rule instances (cap " + std::to_string(cap) + "); rule " +
                         std::to_string(worst + 1) + " alone yields " +
                         std::to_string(plans[worst].count) + ": " + r.to_string());
  }

  GroundSpec g;
  g.instance_counts.assign(s.rules.size(), 0);
  std::vector<Message> letters;
  for (const auto& m : t) letters.push_back(m.inner());

  for (std::size_t i = 0; i < s.rules.size(); ++i) {
    const Plan& p = plans[i];
    if (p.count == 0) continue;
    Binding b;
    std::function<void(std::size_t)> assign = [&](std::size_t v) {
      if (v == p.vars.size()) {
        GroundRule gr{apply_binding(b, s.rules[i]), i, b};
        collect_atoms(*gr.rule.matcher, letters);
        auto target = gr.rule.target.to_message();
        if (!target) throw Error("internal: non-ground target " + gr.rule.target.to_string());
        letters.push_back(*target);
        g.rules.push_back(std::move(gr));
        ++g.instance_counts[i];
        return;
      }
      for (const auto& val : p.candidates[v]) {
        b[p.vars[v]] = val;
        assign(v + 1);
      }
      b.erase(p.vars[v]);
    };
    assign(0);
  }
  std::sort(letters.begin(), letters.end());
  letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
  g.alphabet = std::move(letters);
  return g;
}

CompiledRule compile_rule(const GroundRule& gr, const GroundSpec& g) {
  CompiledRule c;
  auto letter_of = [&](const ParamMessage& pm) {
    auto m = pm.to_message();
    if (!m) throw Error("compile_rule: atom is not ground: " + pm.to_string());
    return g.letter_of(*m);
  };
  c.dfa = compile_matcher(*gr.rule.matcher, letter_of, g.letters());
  c.polarity = gr.rule.polarity;
  auto target = gr.rule.target.to_message();
  if (!target) throw Error("compile_rule: target is not ground: " + gr.rule.target.to_string());
  c.target = *target;
  c.target_letter = g.letter_of(c.target);
  c.source = gr.source;
  return c;
}

std::vector<CompiledRule> compile_all(const GroundSpec& g) {
  std::vector<CompiledRule> out;
  out.reserve(g.rules.size());
  for (std::size_t i = 0; i < g.rules.size(); ++i) {
    out.push_back(compile_rule(g.rules[i], g));
    out.back().instance = i;
  }
  return out;
}

}  // namespace lifeguard
