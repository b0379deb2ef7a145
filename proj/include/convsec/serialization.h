// Copyright 2026 The convsec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON forms of costs, matroids, instances, generator configs, experiment
// specs and results. Infinite classifier entries are written as null.

#ifndef CONVSEC_SERIALIZATION_H_
#define CONVSEC_SERIALIZATION_H_

#include <string>

#include "convsec/harness.h"
#include "json.hpp"

namespace convsec {

using Json = nlohmann::json;

Json CostToJson(const CostModel& cost);
// With strict = false, a quadratic cost that fails validation is loaded as
// an opaque custom cost with the same formula, so that checks can run on it.
CostModel CostFromJson(const Json& j, bool strict = true);

Json MatroidToJson(const Matroid& matroid);
Matroid MatroidFromJson(const Json& j);

Json InstanceToJson(const Instance& inst);
Instance InstanceFromJson(const Json& j, bool strict = true);

Json GeneratorConfigToJson(const GeneratorConfig& config);
GeneratorConfig GeneratorConfigFromJson(const Json& j);

Json ExperimentSpecToJson(const ExperimentSpec& spec);
ExperimentSpec ExperimentSpecFromJson(const Json& j);

Json ClassifierToJson(const Classifier& c);
Json OfflineSolutionToJson(const Instance& inst, const OfflineSolution& sol);
Json TrialRecordToJson(const Instance& inst, const OnlineRun& run,
                       std::uint64_t seed);
Json SummaryToJson(const ExperimentResult& result);

// Parses text, mapping JSON errors to ErrorCode::kParse.
Json ParseJson(const std::string& text);
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& contents);

}  // namespace convsec

#endif  // CONVSEC_SERIALIZATION_H_
