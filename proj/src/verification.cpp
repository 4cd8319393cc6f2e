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

#include "lifeguard/verification.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <unordered_set>

namespace lifeguard {

std::string SubTrace::label() const {
  if (messages.empty()) return "?";
  const std::string& f = messages.front().fun();
  if (f.size() > 2 && f.compare(0, 2, "on") == 0 && std::isupper(static_cast<unsigned char>(f[2])))
    return f.substr(2);
  return f;
}

std::vector<SubTrace> split_subtraces(const Trace& t) {
  std::vector<SubTrace> out;
  std::size_t depth = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Message& m = t[i];
    if (m.is_dis()) throw Error("cannot split a trace that ends in a dis message");
    if (depth == 0) {
      if (m.kind() != MessageKind::Cb)
        throw TraceError("message outside any callback: " + m.to_string(), i);
      SubTrace s;
      s.index = out.size();
      s.offset = i;
      out.push_back(std::move(s));
    }
    out.back().messages.push_back(m);
    if (m.is_call()) ++depth;
    else --depth;
  }
  if (depth != 0)
    throw TraceError("trace ends inside callback " + out.back().messages.front().to_string(),
                     t.size() - 1);
  return out;
}

std::size_t state_cap_from_env(std::size_t fallback) {
  const char* v = std::getenv("LIFEGUARD_STATE_CAP");
  if (!v || !*v) return fallback;
  std::size_t n = 0;
  auto [p, ec] = std::from_chars(v, v + std::strlen(v), n);
  if (ec != std::errc() || *p != '\0' || n == 0)
    throw Error(std::string("LIFEGUARD_STATE_CAP must be a positive integer, got '") + v + "'");
  return n;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Safe: return "Safe";
    case Verdict::Violation: return "Violation";
    case Verdict::Unknown: return "Unknown";
  }
  return "";
}

namespace {

enum class Fold { Done, Blocked, Bad };

// Runs one unit from `from`. On Bad, `stop` is the offending message index.
Fold run_unit(const Model& model, const SubTrace& u, AbstractState& cur, std::size_t& stop) {
  for (std::size_t j = 0; j < u.messages.size(); ++j) {
    StepOutcome out = model.step(cur, u.messages[j]);
    if (out.kind == StepOutcome::Kind::Blocked) {
      stop = j;
      return Fold::Blocked;
    }
    if (out.kind == StepOutcome::Kind::Bad) {
      stop = j;
      return Fold::Bad;
    }
    cur = std::move(out.next);
  }
  return Fold::Done;
}

Trace witness_for(const std::vector<SubTrace>& units, const std::vector<std::size_t>& seq,
                  std::size_t stop) {
  std::vector<Message> w;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    w.insert(w.end(), units[seq[i]].messages.begin(), units[seq[i]].messages.end());
  const auto& last = units[seq.back()].messages;
  w.insert(w.end(), last.begin(), last.begin() + static_cast<std::ptrdiff_t>(stop));
  w.push_back(Message::dis(last[stop]));
  return Trace(std::move(w));
}

void fill_labels(VerificationResult& r, const std::vector<SubTrace>& units) {
  r.subtrace_labels.clear();
  for (auto i : r.subtrace_sequence) r.subtrace_labels.push_back(units[i].label());
}

VerificationResult already_violating(const Trace& t) {
  VerificationResult r;
  r.verdict = Verdict::Violation;
  r.witness = t;
  std::size_t depth = 0, units = 0;
  for (const auto& m : t) {
    if (m.is_dis()) break;
    if (depth == 0 && m.kind() == MessageKind::Cb) {
      r.subtrace_sequence.push_back(units++);
      std::string f = m.fun();
      if (f.size() > 2 && f.compare(0, 2, "on") == 0 && std::isupper(static_cast<unsigned char>(f[2])))
        f = f.substr(2);
      r.subtrace_labels.push_back(f);
    }
    if (m.is_call()) ++depth;
    else --depth;
  }
  r.units = units;
  r.reason = "the input trace already ends in a disallowed call";
  return r;
}

}  // namespace

VerificationResult verify(const LifestateSpec& s, const Trace& t, const VerifyOptions& o) {
  if (is_violation(t)) return already_violating(t);
  const auto units = split_subtraces(t);
  const Model model = Model::build(s, t, o.grounding_cap);

  VerificationResult r;
  r.units = units.size();
  r.ground_rules = model.rules().size();

  struct Node {
    std::size_t parent;
    std::size_t unit;
    std::size_t depth;
  };
  std::vector<Node> nodes;
  std::vector<AbstractState> states;
  std::unordered_set<AbstractState, AbstractStateHash> visited;
  std::vector<char> started(units.size(), 0);

  auto path_to = [&](std::size_t idx) {
    std::vector<std::size_t> seq;
    for (std::size_t i = idx; nodes[i].depth > 0; i = nodes[i].parent) seq.push_back(nodes[i].unit);
    return std::vector<std::size_t>(seq.rbegin(), seq.rend());
  };
  auto unknown = [&](std::string why) {
    r.verdict = Verdict::Unknown;
    r.reason = std::move(why);
    r.states_explored = visited.size();
    return r;
  };

  AbstractState init = model.initial_state();
  visited.insert(init);
  states.push_back(init);
  nodes.push_back({0, 0, 0});
  std::vector<std::size_t> frontier{0};
  std::size_t depth = 0;
  std::size_t work = 0;

  while (!frontier.empty()) {
    const bool at_bound = o.bound && depth >= *o.bound;
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier) {
      for (const auto& u : units) {
        if ((work++ & 63) == 0 && o.deadline && Clock::now() > *o.deadline)
          return unknown("timeout after exploring " + std::to_string(visited.size()) + " states");
        AbstractState cur = states[idx];
        std::size_t stop = 0;
        Fold f = run_unit(model, u, cur, stop);
        if (f == Fold::Blocked && stop == 0) continue;
        started[u.index] = 1;
        if (f == Fold::Blocked) continue;
        if (f == Fold::Bad) {
          if (at_bound)
            return unknown("bound of " + std::to_string(*o.bound) +
                           " units reached; a violation needs more units");
          auto seq = path_to(idx);
          seq.push_back(u.index);
          r.verdict = Verdict::Violation;
          r.witness = witness_for(units, seq, stop);
          r.subtrace_sequence = std::move(seq);
          fill_labels(r, units);
          r.states_explored = visited.size();
          return r;
        }
        if (visited.count(cur)) continue;
        if (at_bound)
          return unknown("bound of " + std::to_string(*o.bound) +
                         " units reached with unexplored states");
        visited.insert(cur);
        if (visited.size() > o.state_cap)
          return unknown("state cap of " + std::to_string(o.state_cap) + " exceeded");
        states.push_back(std::move(cur));
        nodes.push_back({idx, u.index, depth + 1});
        next.push_back(nodes.size() - 1);
      }
    }
    frontier = std::move(next);
    ++depth;
  }

  r.verdict = Verdict::Safe;
  r.states_explored = visited.size();
  r.certificate_size = visited.size();
  for (std::size_t i = 0; i < units.size(); ++i)
    if (!started[i]) r.unreachable_units.push_back(i);
  return r;
}

VerificationResult brute_force_verify(const LifestateSpec& s, const Trace& t, std::size_t k,
                                      std::size_t max_sequences, std::size_t grounding_cap) {
  if (is_violation(t)) return already_violating(t);
  const auto units = split_subtraces(t);
  const Model model = Model::build(s, t, grounding_cap);
  VerificationResult r;
  r.units = units.size();
  r.ground_rules = model.rules().size();
  std::size_t tried = 0;
  const AbstractState init = model.initial_state();

  for (std::size_t len = 1; len <= k && !units.empty(); ++len) {
    std::vector<std::size_t> seq(len, 0);
    while (true) {
      if (++tried > max_sequences) {
        r.verdict = Verdict::Unknown;
        r.reason = "sequence budget of " + std::to_string(max_sequences) + " exhausted";
        r.states_explored = tried - 1;
        return r;
      }
      AbstractState cur = init;
      for (std::size_t i = 0; i < len; ++i) {
        std::size_t stop = 0;
        Fold f = run_unit(model, units[seq[i]], cur, stop);
        if (f == Fold::Blocked) break;
        if (f == Fold::Bad) {
          std::vector<std::size_t> prefix(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(i + 1));
          r.verdict = Verdict::Violation;
          r.witness = witness_for(units, prefix, stop);
          r.subtrace_sequence = std::move(prefix);
          fill_labels(r, units);
          r.states_explored = tried;
          return r;
        }
      }
      // Odometer increment.
      std::size_t pos = len;
      while (pos > 0 && ++seq[pos - 1] == units.size()) seq[--pos] = 0;
      if (pos == 0) break;
    }
  }
  r.verdict = Verdict::Unknown;
  r.reason = "no violation within depth " + std::to_string(k);
  r.states_explored = tried;
  return r;
}

bool replays_to_bad(const Model& model, const Trace& witness) {
  if (!is_violation(witness)) return false;
  AbstractState cur = model.initial_state();
  for (std::size_t i = 0; i + 1 < witness.size(); ++i) {
    StepOutcome out = model.step(cur, witness[i]);
    if (out.kind != StepOutcome::Kind::Next) return false;
    cur = std::move(out.next);
  }
  int l = model.letter_of(witness.messages().back().inner());
  return model.is_in_letter(l) && cur.prohibited.contains(l);
}

}  // namespace lifeguard
