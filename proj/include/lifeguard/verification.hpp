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

// Predictive verification: explores every sequence of a trace's callback
// units under a spec and reports a violating sequence or proves none exists.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lifeguard/validation.hpp"

namespace lifeguard {

/// One depth-0 cb ... cbret segment of a trace.
struct SubTrace {
  std::size_t index = 0;
  std::size_t offset = 0;  // position of the opening cb in the source trace
  std::vector<Message> messages;

  /// Short display name: the callback with a leading "on" dropped.
  std::string label() const;
};

/// Throws TraceError for a depth-0 in-message or a trace ending inside a
/// callback, Error for a dis message.
std::vector<SubTrace> split_subtraces(const Trace& t);

inline constexpr std::size_t kDefaultStateCap = 5000000;

struct VerifyOptions : AnalysisOptions {
  /// Unit bound; nullopt for exhaustive exploration.
  std::optional<std::size_t> bound;
  std::size_t state_cap = kDefaultStateCap;
};

/// Reads LIFEGUARD_STATE_CAP, falling back to `fallback`.
std::size_t state_cap_from_env(std::size_t fallback = kDefaultStateCap);

enum class Verdict { Safe, Violation, Unknown };

std::string_view to_string(Verdict v);

struct VerificationResult {
  Verdict verdict = Verdict::Unknown;
  std::size_t states_explored = 0;
  std::size_t certificate_size = 0;            // Safe: size of the closed reachable set
  std::vector<std::size_t> unreachable_units;  // units never started
  Trace witness;                               // Violation: ends in dis
  std::vector<std::size_t> subtrace_sequence;  // Violation: unit indices
  std::vector<std::string> subtrace_labels;
  std::string reason;                          // Unknown: why
  std::size_t units = 0;
  std::size_t ground_rules = 0;
};

VerificationResult verify(const LifestateSpec& s, const Trace& t, const VerifyOptions& o = {});

/// Enumerates all unit sequences of length 1..k in length then index order
/// and folds each from the initial state. Returns Violation or Unknown ("no
/// violation within depth k"). Gives up with Unknown beyond `max_sequences`.
VerificationResult brute_force_verify(const LifestateSpec& s, const Trace& t, std::size_t k,
                                      std::size_t max_sequences = 10000000,
                                      std::size_t grounding_cap = kDefaultGroundingCap);

/// Folds the abstract system of `model` over `witness`: true iff every step
/// is accepted and the final dis in-message is prohibited.
bool replays_to_bad(const Model& model, const Trace& witness);

}  // namespace lifeguard
