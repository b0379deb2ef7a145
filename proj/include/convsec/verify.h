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

// Self-check suites over random models and instances. Each suite counts its
// checks and keeps the first failing witness.

#ifndef CONVSEC_VERIFY_H_
#define CONVSEC_VERIFY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "convsec/instance.h"

namespace convsec {

enum class VerifyLevel { kQuick, kFull };

VerifyLevel ParseVerifyLevel(const std::string& name);

struct SuiteReport {
  std::string name;
  bool passed = true;
  int checks = 0;
  int failures = 0;
  std::string witness;
  double seconds = 0.0;
};

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::kQuick;
  std::vector<std::string> suites;
  // When set, the supermodularity and matroid suites check this instance
  // instead of generated ones.
  std::optional<Instance> instance;
  std::uint64_t seed = 1;
  double eps = 1e-6;
};

const std::vector<std::string>& AllSuites();

// Unknown suite names raise InvalidArgument. An empty selection runs
// nothing and passes.
std::vector<SuiteReport> RunVerify(const VerifyOptions& options);

}  // namespace convsec

#endif  // CONVSEC_VERIFY_H_
