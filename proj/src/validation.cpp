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

#include "lifeguard/validation.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lifeguard {

bool is_relevant(const LifestateSpec& s, const Message& m) {
  return mentioned_functions(s).count(m.fun()) != 0;
}

namespace {

std::vector<std::size_t> sources(const Model& model, const std::vector<std::size_t>& fired) {
  std::set<std::size_t> out;
  for (auto i : fired) out.insert(model.rules()[i].source);
  return {out.begin(), out.end()};
}

// Per letter, the spec rules that last changed its store membership.
class Blame {
 public:
  explicit Blame(const Model& m) : model_(m) {}

  void record(const LetterSet& before_mu, const LetterSet& after_mu, const LetterSet& before_nu,
              const LetterSet& after_nu, const FiringSets& f) {
    for (int l = 0; l < model_.ground().other_letter(); ++l) {
      bool changed = before_mu.contains(l) != after_mu.contains(l) ||
                     before_nu.contains(l) != after_nu.contains(l);
      if (!changed) continue;
      std::set<std::size_t> who;
      for (auto i : f.fired)
        if (model_.rules()[i].target_letter == l) who.insert(model_.rules()[i].source);
      if (who.empty())  // inconsistency reset
        for (auto i : f.fired) who.insert(model_.rules()[i].source);
      last_[l] = {who.begin(), who.end()};
    }
  }

  std::vector<std::size_t> of(int l) const {
    auto it = last_.find(l);
    return it == last_.end() ? std::vector<std::size_t>{} : it->second;
  }

 private:
  const Model& model_;
  std::map<int, std::vector<std::size_t>> last_;
};

bool expired(const AnalysisOptions& o) { return o.deadline && Clock::now() > *o.deadline; }

}  // namespace

ValidationReport validate(const LifestateSpec& s, const Trace& t, const AnalysisOptions& o) {
  ValidationReport r;
  const auto relevant = mentioned_functions(s);
  auto is_rel = [&](const Message& m) { return relevant.count(m.fun()) != 0; };
  r.total = t.size();
  r.relevant_total = std::count_if(t.begin(), t.end(), is_rel);

  Model model = Model::build(s, t, o.grounding_cap);
  r.ground_rules = model.rules().size();
  AbstractState st = model.initial_state();
  Blame blame(model);
  {
    FiringSets f = model.firing_sets(st.rule_states);
    LetterSet all_back(model.letters());
    for (int l = 0; l < model.ground().other_letter(); ++l)
      if (model.is_back_letter(l)) all_back.insert(l);
    blame.record(all_back, st.permitted, LetterSet(model.letters()), st.prohibited, f);
    if (!consistent(f.permits, f.prohibits)) ++r.inconsistent_steps;
  }

  auto fail = [&](const Message& m, std::string reason, int letter) {
    r.valid = false;
    r.blocking_message = m;
    r.blocking_store = StoreSnapshot{model.messages(st.permitted), model.messages(st.prohibited)};
    r.last_firing_rules = blame.of(letter);
    r.reason = std::move(reason);
    return r;
  };

  for (std::size_t i = 0; i < t.size(); ++i) {
    if ((i & 255) == 0 && expired(o)) {
      r.timed_out = true;
      return r;
    }
    const Message& m = t[i];
    if (m.is_dis()) {
      Message in = m.inner();
      int l = model.letter_of(in);
      if (model.is_in_letter(l) && st.prohibited.contains(l)) {
        ++r.prefix_len;
        if (is_rel(m)) ++r.relevant_prefix_len;
        continue;
      }
      return fail(m, "missed violation", l);
    }
    StepOutcome out = model.step(st, m);
    int l = model.letter_of(m);
    if (out.kind == StepOutcome::Kind::Blocked) return fail(m, "not permitted", l);
    if (out.kind == StepOutcome::Kind::Bad) return fail(m, "prohibited in-message", l);
    blame.record(st.permitted, out.next.permitted, st.prohibited, out.next.prohibited, out.firing);
    if (!out.consistent) ++r.inconsistent_steps;
    st = std::move(out.next);
    ++r.prefix_len;
    if (is_rel(m)) ++r.relevant_prefix_len;
  }
  r.valid = true;
  return r;
}

std::string_view to_string(ExplainStep::Status s) {
  switch (s) {
    case ExplainStep::Status::Ok: return "ok";
    case ExplainStep::Status::Blocked: return "blocked";
    case ExplainStep::Status::Bad: return "bad";
    case ExplainStep::Status::Predicted: return "predicted";
    case ExplainStep::Status::MissedViolation: return "missed-violation";
  }
  return "";
}

Explanation explain(const LifestateSpec& s, const Trace& t, const AnalysisOptions& o) {
  Explanation ex;
  Model model = Model::build(s, t, o.grounding_cap);
  AbstractState st = model.initial_state();
  ex.initial_permitted = model.messages(st.permitted);
  ex.initial_prohibited = model.messages(st.prohibited);
  ex.initial_fired = sources(model, model.firing_sets(st.rule_states).fired);

  auto diff = [&](const LetterSet& a, const LetterSet& b) {
    std::vector<Message> out;
    for (int l : b.elements())
      if (!a.contains(l)) out.push_back(model.ground().alphabet[l]);
    return out;
  };

  for (std::size_t i = 0; i < t.size(); ++i) {
    ExplainStep step;
    step.index = i;
    step.message = t[i];
    if (t[i].is_dis()) {
      int l = model.letter_of(t[i].inner());
      step.status = model.is_in_letter(l) && st.prohibited.contains(l)
                        ? ExplainStep::Status::Predicted
                        : ExplainStep::Status::MissedViolation;
      ex.steps.push_back(std::move(step));
      break;
    }
    StepOutcome out = model.step(st, t[i]);
    if (out.kind != StepOutcome::Kind::Next) {
      step.status = out.kind == StepOutcome::Kind::Blocked ? ExplainStep::Status::Blocked
                                                           : ExplainStep::Status::Bad;
      ex.steps.push_back(std::move(step));
      break;
    }
    step.fired = sources(model, out.firing.fired);
    step.permitted_added = diff(st.permitted, out.next.permitted);
    step.permitted_removed = diff(out.next.permitted, st.permitted);
    step.prohibited_added = diff(st.prohibited, out.next.prohibited);
    step.prohibited_removed = diff(out.next.prohibited, st.prohibited);
    step.consistent = out.consistent;
    ex.steps.push_back(std::move(step));
    st = std::move(out.next);
  }
  return ex;
}

}  // namespace lifeguard
