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

// Random-order online algorithms: a sample phase that learns a threshold
// classifier mu on the curve, then a streaming phase over the strictly
// filtered remainder. Also the single-item secretary, the wrapper that mixes
// the two, and the reduction from supermodular to separable costs.

#ifndef CONVSEC_ONLINE_H_
#define CONVSEC_ONLINE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "convsec/classifier.h"
#include "convsec/instance.h"

namespace convsec {

using SetFunction = std::function<double(const Subset&)>;

struct ThresholdResult {
  Classifier mu;
  double fopt_sample = 0.0;    // fopt(L)
  double fopt_picked = 0.0;    // fopt(L_mu)
};

// Largest curve point mu with fopt(L_mu) >= fopt(L) / (12 d), searched over
// the breakpoints of the sample items. The sentinel when fopt(L) <= 0.
ThresholdResult LearnThreshold(const Instance& inst, const Subset& sample);

// Counts evaluations of a set function and fails hard on any evaluation
// outside the matroid.
class GuardedObjective {
 public:
  GuardedObjective(const Instance& inst, SetFunction f);

  double operator()(const Subset& subset);
  std::int64_t evaluations() const { return evaluations_; }
  std::int64_t violations() const { return violations_; }

 private:
  const Instance& inst_;
  SetFunction f_;
  std::int64_t evaluations_ = 0;
  std::int64_t violations_ = 0;
};

// Process-wide count of guard violations.
std::int64_t GlobalGuardViolations();
void ResetGlobalGuardViolations();

enum class SubmodAlgorithm { kSampleThresholdGreedy, kPlainGreedy };

struct SubmodMSConfig {
  SubmodAlgorithm algorithm = SubmodAlgorithm::kSampleThresholdGreedy;
  double sample_fraction = 0.5;
  double threshold_divisor = 2.0;
};

// Streaming monotone submodular maximization under the matroid. The first
// floor(sample_fraction * length) offers are only observed; G is the greedy
// value on them. Later offers are accepted when independent and the gain
// strictly exceeds G / (threshold_divisor * rank).
class SampleThresholdGreedy {
 public:
  SampleThresholdGreedy(const Instance& inst, std::size_t stream_length,
                        GuardedObjective* f, const SubmodMSConfig& config = {});

  // Whether the algorithm wants to accept the item. Must be followed by
  // Commit for the same item.
  bool Offer(std::size_t pos);
  // Records the final decision, which may override an acceptance.
  void Commit(std::size_t pos, bool accepted);

  const Subset& selected() const { return selected_; }

 private:
  const Instance& inst_;
  GuardedObjective* f_;
  SubmodMSConfig config_;
  std::size_t observe_;
  std::size_t seen_ = 0;
  Subset observed_;
  bool threshold_ready_ = false;
  double threshold_ = 0.0;
  Subset selected_;
  IndependenceState state_;
  double value_ = 0.0;
  std::optional<double> pending_value_;
};

// Runs the configured algorithm over a whole stream with no overrides.
Subset SubmodMS(const Instance& inst, const Subset& stream, GuardedObjective* f,
                const SubmodMSConfig& config = {});

// Observes the first sample_size profits and returns the first later index
// whose profit strictly exceeds every observed one. sample_size defaults to
// ceil(n / e).
std::optional<std::size_t> SingleSecretary(
    const Vec& profits, std::optional<std::size_t> sample_size = std::nullopt);

struct OnlineDiagnostics {
  double fopt_sample = 0.0;
  double fopt_sample_mu = 0.0;
  std::optional<bool> mu_ge_lambda_star;
  std::size_t filtered_size = 0;
  std::optional<double> fopt_picked_mu;  // fopt(U_mu) on the whole instance
  std::int64_t guard_evaluations = 0;
  std::int64_t guard_violations = 0;
  std::optional<double> surrogate_profit;
};

struct OnlineRun {
  Subset order;
  std::size_t sample_size = 0;
  Classifier mu;
  Subset filtered;  // strictly filtered remainder, in arrival order
  Subset selected;
  double profit = 0.0;
  // "algorithm", "secretary" or "empty".
  std::string branch = "algorithm";
  OnlineDiagnostics diagnostics;
};

struct OnlineConfig {
  SubmodMSConfig submod;
  // Overrides the Binomial(n, 1/2) sample size.
  std::optional<std::size_t> sample_size;
  // Known good classifier of the whole instance, for diagnostics.
  std::optional<Vec> lambda_star;
  // Computes fopt(U_mu) over the whole instance.
  bool fopt_picked_diagnostic = false;
  PreprocessConfig preprocess;
};

// Free matroid: accepts each filtered item whose marginal profit is
// non-negative. Otherwise the filtered stream goes to SampleThresholdGreedy
// on pi, and any acceptance with negative marginal profit is overridden.
OnlineRun RunAlgorithm1(const Instance& inst, const Subset& order,
                        const OnlineConfig& config, std::uint64_t seed);

// Perturbs values, then with probability secretary_prob runs the single
// secretary on item profits and otherwise RunAlgorithm1, on a random order.
OnlineRun RunWithPreprocessing(const Instance& inst, const OnlineConfig& config,
                               std::uint64_t seed);

// beta / (beta + 2 e d).
double ReductionProbability(double beta, int dim);

// With probability ReductionProbability runs the single secretary on the
// original profits; otherwise RunAlgorithm1 on the separable surrogate cost.
// The reported profit is always the original one.
OnlineRun ReduceSupermodularToSeparable(const Instance& inst, double beta,
                                        const OnlineConfig& config,
                                        std::uint64_t seed);

// Lovasz extension of a set function with f(empty) = 0.
double LovaszExtension(const SetFunction& f, const Vec& x);

}  // namespace convsec

#endif  // CONVSEC_ONLINE_H_
