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

#include "lifeguard/abstract_ts.hpp"

#include <bit>

namespace lifeguard {

bool LetterSet::empty() const {
  for (auto w : bits_)
    if (w) return false;
  return true;
}

std::vector<int> LetterSet::elements() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    std::uint64_t w = bits_[i];
    while (w) {
      int b = std::countr_zero(w);
      out.push_back(static_cast<int>(i * 64) + b);
      w &= w - 1;
    }
  }
  return out;
}

std::size_t LetterSet::hash() const {
  std::size_t h = 0xcbf29ce484222325ull;
  for (auto w : bits_) h = (h ^ w) * 0x100000001b3ull;
  return h;
}

std::size_t AbstractStateHash::operator()(const AbstractState& s) const {
  std::size_t h = s.permitted.hash() * 31 + s.prohibited.hash();
  for (int r : s.rule_states) h = (h ^ static_cast<std::size_t>(r)) * 0x100000001b3ull;
  return h;
}

bool consistent(const LetterSet& permits, const LetterSet& prohibits) {
  for (int l : permits.elements())
    if (prohibits.contains(l)) return false;
  return true;
}

Model::Model(GroundSpec g, bool keep_history)
    : ground_(std::move(g)), keep_history_(keep_history) {
  rules_ = compile_all(ground_);
  back_.assign(ground_.letters(), 0);
  in_.assign(ground_.letters(), 0);
  for (std::size_t i = 0; i < ground_.alphabet.size(); ++i) {
    back_[i] = ground_.alphabet[i].is_back();
    in_[i] = ground_.alphabet[i].is_in();
  }
}

Model Model::build(const LifestateSpec& s, const Trace& t, std::size_t cap, bool keep_history) {
  return Model(ground_spec(s, t, cap), keep_history);
}

bool Model::is_back_letter(int l) const { return l >= 0 && l < letters() && back_[l]; }
bool Model::is_in_letter(int l) const { return l >= 0 && l < letters() && in_[l]; }

FiringSets Model::firing_sets(const std::vector<int>& rule_states) const {
  FiringSets f{LetterSet(letters()), LetterSet(letters()), {}};
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const auto& r = rules_[i];
    if (!r.dfa.accepting(rule_states[i])) continue;
    f.fired.push_back(i);
    if (r.polarity == Polarity::Permit) f.permits.insert(r.target_letter);
    else f.prohibits.insert(r.target_letter);
  }
  return f;
}

LetterSet Model::update_back(const LetterSet& mu, const FiringSets& f, bool cons) const {
  LetterSet out(letters());
  if (!cons) return out;
  for (int l = 0; l < ground_.other_letter(); ++l)
    if (back_[l] && !f.prohibits.contains(l) && (f.permits.contains(l) || mu.contains(l)))
      out.insert(l);
  return out;
}

LetterSet Model::update_in(const LetterSet& nu, const FiringSets& f, bool cons) const {
  LetterSet out(letters());
  for (int l = 0; l < ground_.other_letter(); ++l)
    if (in_[l] && (!cons || (!f.permits.contains(l) && (f.prohibits.contains(l) || nu.contains(l)))))
      out.insert(l);
  return out;
}

AbstractState Model::initial_state() const {
  AbstractState s;
  s.rule_states.reserve(rules_.size());
  for (const auto& r : rules_) s.rule_states.push_back(r.dfa.start());
  FiringSets f = firing_sets(s.rule_states);
  bool cons = consistent(f.permits, f.prohibits);
  LetterSet all_back(letters());
  for (int l = 0; l < ground_.other_letter(); ++l)
    if (back_[l]) all_back.insert(l);
  s.permitted = update_back(all_back, f, cons);
  s.prohibited = update_in(LetterSet(letters()), f, cons);
  if (keep_history_) s.history = std::make_shared<const std::vector<Message>>();
  return s;
}

AbstractState Model::advance(const AbstractState& s, int letter, FiringSets* firing,
                             bool* cons_out) const {
  AbstractState n;
  n.rule_states.resize(rules_.size());
  for (std::size_t i = 0; i < rules_.size(); ++i)
    n.rule_states[i] = rules_[i].dfa.next(s.rule_states[i], letter);
  FiringSets f = firing_sets(n.rule_states);
  bool cons = consistent(f.permits, f.prohibits);
  n.permitted = update_back(s.permitted, f, cons);
  n.prohibited = update_in(s.prohibited, f, cons);
  n.history_len = s.history_len + 1;
  if (cons_out) *cons_out = cons;
  if (firing) *firing = std::move(f);
  return n;
}

StepOutcome Model::step(const AbstractState& s, const Message& m) const {
  StepOutcome out;
  if (m.is_dis()) throw Error("abstract step: dis messages are not steps of the system");
  int l = letter_of(m);
  if (l != ground_.other_letter()) {
    if (m.is_back() && !s.permitted.contains(l)) {
      out.kind = StepOutcome::Kind::Blocked;
      out.next = s;
      out.reason = "not permitted";
      return out;
    }
    if (m.is_in() && s.prohibited.contains(l)) {
      out.kind = StepOutcome::Kind::Bad;
      out.next = s;
      out.reason = "prohibited in-message";
      return out;
    }
  }
  out.next = advance(s, l, &out.firing, &out.consistent);
  if (keep_history_) {
    auto h = s.history ? std::make_shared<std::vector<Message>>(*s.history)
                       : std::make_shared<std::vector<Message>>();
    h->push_back(m);
    out.next.history = std::move(h);
  }
  return out;
}

std::vector<Message> Model::messages(const LetterSet& set) const {
  std::vector<Message> out;
  for (int l : set.elements())
    if (l < ground_.other_letter()) out.push_back(ground_.alphabet[l]);
  return out;
}

}  // namespace lifeguard
