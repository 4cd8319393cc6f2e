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

// Checks that a recorded trace is accepted by a spec's abstract system.

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lifeguard/abstract_ts.hpp"
#include "lifeguard/lifestate.hpp"
#include "lifeguard/trace.hpp"

namespace lifeguard {

using Clock = std::chrono::steady_clock;

struct AnalysisOptions {
  std::size_t grounding_cap = kDefaultGroundingCap;
  std::optional<Clock::time_point> deadline;
};

struct StoreSnapshot {
  std::vector<Message> permitted_back;
  std::vector<Message> prohibited_in;
};

struct ValidationReport {
  bool valid = false;
  bool timed_out = false;
  std::size_t prefix_len = 0;           // messages accepted
  std::size_t relevant_prefix_len = 0;  // of those, messages whose function the spec mentions
  std::size_t total = 0;
  std::size_t relevant_total = 0;
  std::optional<Message> blocking_message;
  std::optional<StoreSnapshot> blocking_store;
  std::vector<std::size_t> last_firing_rules;  // spec rule indices, 0-based
  std::string reason;  // "not permitted", "prohibited in-message", "missed violation"
  std::size_t inconsistent_steps = 0;
  std::size_t ground_rules = 0;
};

/// A trace ending in dis validates only if the spec prohibits the wrapped
/// in-message at that point. Throws GroundingError.
ValidationReport validate(const LifestateSpec& s, const Trace& t, const AnalysisOptions& o = {});

/// Messages whose function name occurs in some rule.
bool is_relevant(const LifestateSpec& s, const Message& m);

struct ExplainStep {
  std::size_t index = 0;
  Message message;
  enum class Status { Ok, Blocked, Bad, Predicted, MissedViolation } status = Status::Ok;
  std::vector<std::size_t> fired;  // spec rule indices whose instances accept after the step
  std::vector<Message> permitted_added, permitted_removed;
  std::vector<Message> prohibited_added, prohibited_removed;
  bool consistent = true;
};

struct Explanation {
  std::vector<Message> initial_permitted, initial_prohibited;
  std::vector<std::size_t> initial_fired;
  std::vector<ExplainStep> steps;  // stops at the first Blocked/Bad step
};

Explanation explain(const LifestateSpec& s, const Trace& t, const AnalysisOptions& o = {});

std::string_view to_string(ExplainStep::Status s);

}  // namespace lifeguard
