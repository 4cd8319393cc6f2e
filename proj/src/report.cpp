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

#include "report.hpp"

#include <iomanip>
#include <map>
#include <sstream>

namespace lifeguard::report {
namespace {

json messages_json(const std::vector<Message>& ms) {
  json a = json::array();
  for (const auto& m : ms) a.push_back(m.to_string());
  return a;
}

json rule_numbers(const std::vector<std::size_t>& rules) {
  json a = json::array();
  for (auto i : rules) a.push_back(i + 1);
  return a;
}

std::string join_rules(const std::vector<std::size_t>& rules) {
  std::string s;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(rules[i] + 1);
  }
  return s.empty() ? "none" : s;
}

void list(std::ostringstream& out, const char* title, const std::vector<Message>& ms) {
  out << title << " (" << ms.size() << ")\n";
  for (const auto& m : ms) out << "  " << m.to_string() << "\n";
}

}  // namespace

std::string verdict(const ValidationReport& r) {
  if (r.timed_out) return "unknown";
  return r.valid ? "valid" : "invalid";
}

json to_json(const ValidationReport& r) {
  json j = {{"schema", kSchema},
            {"kind", "validate"},
            {"verdict", verdict(r)},
            {"valid", r.valid},
            {"prefix_len", r.prefix_len},
            {"relevant_prefix_len", r.relevant_prefix_len},
            {"total", r.total},
            {"relevant_total", r.relevant_total},
            {"ground_rules", r.ground_rules},
            {"inconsistent_steps", r.inconsistent_steps}};
  if (r.blocking_message) {
    j["blocking_message"] = r.blocking_message->to_string();
    j["reason"] = r.reason;
    j["blocking_store"] = {{"permitted_back", messages_json(r.blocking_store->permitted_back)},
                           {"prohibited_in", messages_json(r.blocking_store->prohibited_in)}};
    j["last_firing_rules"] = rule_numbers(r.last_firing_rules);
  }
  if (r.timed_out) j["reason"] = "timeout";
  return j;
}

std::string to_text(const ValidationReport& r) {
  std::ostringstream out;
  out << "verdict: " << verdict(r) << "\n";
  out << "validated prefix: " << r.prefix_len << " of " << r.total << " messages ("
      << r.relevant_prefix_len << " of " << r.relevant_total << " relevant)\n";
  if (r.timed_out) out << "reason: timeout\n";
  if (r.blocking_message) {
    out << "blocking message: " << r.blocking_message->to_string() << " (" << r.reason << ")\n";
    out << "last rules to change it: " << join_rules(r.last_firing_rules) << "\n";
    list(out, "permitted back-messages", r.blocking_store->permitted_back);
    list(out, "prohibited in-messages", r.blocking_store->prohibited_in);
  }
  if (r.inconsistent_steps)
    out << "warning: " << r.inconsistent_steps << " step(s) with rules that permit and prohibit the same message\n";
  return out.str();
}

json to_json(const VerificationResult& r) {
  json j = {{"schema", kSchema},
            {"kind", "verify"},
            {"verdict", std::string(to_string(r.verdict))},
            {"units", r.units},
            {"ground_rules", r.ground_rules},
            {"states_explored", r.states_explored}};
  switch (r.verdict) {
    case Verdict::Safe: {
      j["certificate_size"] = r.certificate_size;
      j["unreachable_units"] = r.unreachable_units;
      break;
    }
    case Verdict::Violation:
      j["subtrace_sequence"] = r.subtrace_sequence;
      j["subtrace_labels"] = r.subtrace_labels;
      j["witness"] = messages_json(r.witness.messages());
      if (!r.reason.empty()) j["reason"] = r.reason;
      break;
    case Verdict::Unknown: j["reason"] = r.reason; break;
  }
  return j;
}

std::string to_text(const VerificationResult& r, bool stats) {
  std::ostringstream out;
  out << to_string(r.verdict) << "\n";
  if (r.verdict == Verdict::Violation) {
    out << "units:";
    for (const auto& l : r.subtrace_labels) out << " " << l;
    out << "\nwitness:\n";
    for (const auto& m : r.witness) out << "  " << m.to_string() << "\n";
  }
  if (r.verdict == Verdict::Unknown) out << "reason: " << r.reason << "\n";
  if (r.verdict == Verdict::Safe && !r.unreachable_units.empty()) {
    out << "units never enabled:";
    for (auto u : r.unreachable_units) out << " " << u;
    out << "\n";
  }
  if (stats) {
    out << "callback units: " << r.units << "\n";
    out << "ground rules: " << r.ground_rules << "\n";
    out << "states explored: " << r.states_explored << "\n";
    if (r.verdict == Verdict::Safe) out << "certificate size: " << r.certificate_size << "\n";
  }
  return out.str();
}

json to_json(const life::RunResult& r) {
  return {{"schema", kSchema},
          {"kind", "run"},
          {"verdict", std::string(life::to_string(r.status))},
          {"status", std::string(life::to_string(r.status))},
          {"steps", r.steps},
          {"diagnostic", r.diagnostic},
          {"trace", messages_json(r.trace.messages())}};
}

std::string to_text(const life::RunResult& r) {
  std::ostringstream out;
  out << "status: " << life::to_string(r.status) << "\n";
  out << "steps: " << r.steps << "\n";
  if (!r.diagnostic.empty()) out << "diagnostic: " << r.diagnostic << "\n";
  out << "trace (" << r.trace.size() << " messages):\n";
  for (const auto& m : r.trace) out << "  " << m.to_string() << "\n";
  return out.str();
}

json to_json(const Explanation& e) {
  json steps = json::array();
  for (const auto& s : e.steps) {
    steps.push_back({{"index", s.index + 1},
                     {"message", s.message.to_string()},
                     {"status", std::string(to_string(s.status))},
                     {"fired", rule_numbers(s.fired)},
                     {"consistent", s.consistent},
                     {"permitted_added", messages_json(s.permitted_added)},
                     {"permitted_removed", messages_json(s.permitted_removed)},
                     {"prohibited_added", messages_json(s.prohibited_added)},
                     {"prohibited_removed", messages_json(s.prohibited_removed)}});
  }
  std::string v = "valid";
  if (!e.steps.empty()) {
    auto last = e.steps.back().status;
    if (last == ExplainStep::Status::Blocked || last == ExplainStep::Status::Bad ||
        last == ExplainStep::Status::MissedViolation)
      v = "invalid";
  }
  return {{"schema", kSchema},
          {"kind", "explain"},
          {"verdict", v},
          {"initial", {{"permitted_back", messages_json(e.initial_permitted)},
                       {"prohibited_in", messages_json(e.initial_prohibited)},
                       {"fired", rule_numbers(e.initial_fired)}}},
          {"steps", steps}};
}

std::string to_text(const Explanation& e) {
  std::ostringstream out;
  auto set = [&](const char* sign, const char* what, const std::vector<Message>& ms) {
    for (const auto& m : ms) out << "      " << sign << what << " " << m.to_string() << "\n";
  };
  out << "initial state (rules " << join_rules(e.initial_fired) << ")\n";
  set("", "permitted", e.initial_permitted);
  set("", "prohibited", e.initial_prohibited);
  for (const auto& s : e.steps) {
    out << s.index + 1 << ". " << s.message.to_string() << "  [" << to_string(s.status) << "]";
    if (s.status == ExplainStep::Status::Ok) out << "  rules: " << join_rules(s.fired);
    if (!s.consistent) out << "  (inconsistent)";
    out << "\n";
    set("+", "permitted", s.permitted_added);
    set("-", "permitted", s.permitted_removed);
    set("+", "prohibited", s.prohibited_added);
    set("-", "prohibited", s.prohibited_removed);
  }
  return out.str();
}

namespace {

std::map<std::size_t, std::size_t> max_states(const std::vector<CompiledRule>& c) {
  std::map<std::size_t, std::size_t> out;
  for (const auto& r : c) {
    auto& m = out[r.source];
    m = std::max(m, static_cast<std::size_t>(r.dfa.size()));
  }
  return out;
}

}  // namespace

json ground_json(const LifestateSpec& s, const GroundSpec& g, const std::vector<CompiledRule>& c) {
  json rules = json::array();
  for (const auto& r : g.rules) rules.push_back({{"source", r.source + 1}, {"rule", r.rule.to_string()}});
  json summary = json::array();
  auto states = max_states(c);
  for (std::size_t i = 0; i < s.rules.size(); ++i)
    summary.push_back({{"rule", i + 1},
                       {"instances", g.instance_counts[i]},
                       {"max_dfa_states", states.count(i) ? states[i] : 0}});
  return {{"schema", kSchema},
          {"kind", "ground"},
          {"verdict", "ok"},
          {"alphabet", messages_json(g.alphabet)},
          {"rules", rules},
          {"summary", summary}};
}

std::string ground_text(const LifestateSpec& s, const GroundSpec& g,
                        const std::vector<CompiledRule>& c) {
  std::ostringstream out;
  for (const auto& r : g.rules) out << r.rule.to_string() << "\n";
  auto states = max_states(c);
  out << "# alphabet: " << g.alphabet.size() << " messages + OTHER\n";
  out << "# rule  instances  max-dfa-states\n";
  for (std::size_t i = 0; i < s.rules.size(); ++i)
    out << "# " << i + 1 << "  " << g.instance_counts[i] << "  "
        << (states.count(i) ? states[i] : 0) << "\n";
  return out.str();
}

json to_json(const CorpusReport& r) {
  json entries = json::array();
  std::size_t valid = 0, invalid = 0, failed = 0;
  std::vector<std::size_t> hv(kHistogramBuckets.size()), hi(kHistogramBuckets.size());
  for (const auto& e : r.entries) {
    json j;
    if (!e.error.empty()) {
      ++failed;
      j = {{"verdict", "error"}, {"error", e.error}};
    } else {
      j = to_json(e.report);
      j.erase("schema");
      j.erase("kind");
      bool ok = e.report.valid;
      (ok ? valid : invalid) += e.report.timed_out ? 0 : 1;
      if (e.report.timed_out) ++failed;
      for (std::size_t b = 0; b < kHistogramBuckets.size(); ++b)
        if (!e.report.timed_out && e.report.relevant_prefix_len >= kHistogramBuckets[b])
          ++(ok ? hv : hi)[b];
    }
    j["path"] = e.path;
    entries.push_back(std::move(j));
  }
  json hist = json::array();
  for (std::size_t b = 0; b < kHistogramBuckets.size(); ++b)
    hist.push_back({{"min_relevant_prefix", kHistogramBuckets[b]}, {"valid", hv[b]}, {"invalid", hi[b]}});
  std::string v = failed ? "unknown" : invalid ? "invalid" : "valid";
  return {{"schema", kSchema},
          {"kind", "corpus"},
          {"verdict", v},
          {"traces", r.entries.size()},
          {"valid", valid},
          {"invalid", invalid},
          {"errors", failed},
          {"histogram", hist},
          {"entries", entries}};
}

std::string to_text(const CorpusReport& r) {
  json j = to_json(r);
  std::ostringstream out;
  for (const auto& e : j["entries"]) {
    out << e["path"].get<std::string>() << ": " << e["verdict"].get<std::string>();
    if (e.contains("error")) {
      out << " (" << e["error"].get<std::string>() << ")";
    } else {
      out << " prefix " << e["prefix_len"].get<std::size_t>() << "/" << e["total"].get<std::size_t>()
          << " relevant " << e["relevant_prefix_len"].get<std::size_t>() << "/"
          << e["relevant_total"].get<std::size_t>();
      if (e.contains("blocking_message"))
        out << " at " << e["blocking_message"].get<std::string>();
    }
    out << "\n";
  }
  out << "verdict: " << j["verdict"].get<std::string>() << " (" << j["valid"].get<std::size_t>()
      << " valid, " << j["invalid"].get<std::size_t>() << " invalid, "
      << j["errors"].get<std::size_t>() << " errors)\n";
  out << "validated relevant prefix histogram:\n";
  out << "  steps   valid  invalid\n";
  for (const auto& h : j["histogram"]) {
    std::string label = ">=" + std::to_string(h["min_relevant_prefix"].get<std::size_t>());
    out << "  " << std::left << std::setw(6) << label << std::right << std::setw(7)
        << h["valid"].get<std::size_t>() << std::setw(9) << h["invalid"].get<std::size_t>() << "\n";
  }
  return out.str();
}

}  // namespace lifeguard::report
