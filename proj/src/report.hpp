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

// Text and JSON renderings of analysis results. Both renderings of a result
// are produced from the same struct so their verdict fields agree.

#include <string>
#include <vector>

#include <json.hpp>

#include "lifeguard/grounding.hpp"
#include "lifeguard/lambda_life.hpp"
#include "lifeguard/validation.hpp"
#include "lifeguard/verification.hpp"

namespace lifeguard::report {

inline constexpr int kSchema = 1;

using nlohmann::json;

struct CorpusEntry {
  std::string path;
  std::string error;  // non-empty when the trace could not be analysed
  ValidationReport report;
};

struct CorpusReport {
  std::vector<CorpusEntry> entries;  // sorted by path
};

/// Validated-prefix thresholds of the corpus histogram (relevant steps).
inline const std::vector<std::size_t> kHistogramBuckets = {1, 26, 51, 76};

json to_json(const ValidationReport& r);
std::string to_text(const ValidationReport& r);
std::string verdict(const ValidationReport& r);

json to_json(const VerificationResult& r);
std::string to_text(const VerificationResult& r, bool stats);

json to_json(const life::RunResult& r);
std::string to_text(const life::RunResult& r);

json to_json(const Explanation& e);
std::string to_text(const Explanation& e);

json ground_json(const LifestateSpec& s, const GroundSpec& g, const std::vector<CompiledRule>& c);
std::string ground_text(const LifestateSpec& s, const GroundSpec& g,
                        const std::vector<CompiledRule>& c);

json to_json(const CorpusReport& r);
std::string to_text(const CorpusReport& r);

}  // namespace lifeguard::report
