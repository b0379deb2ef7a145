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

// Seeded experiments: each trial generates an instance, runs one pipeline
// on it and records the profit against a fractional baseline. Rows are
// written as CSV sorted by seed; per-cell statistics go to a summary.

#ifndef CONVSEC_HARNESS_H_
#define CONVSEC_HARNESS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "convsec/instance.h"
#include "convsec/offline.h"
#include "convsec/online.h"

namespace convsec {

enum class Pipeline {
  kOfflineUnconstrained,
  kOfflineConstrained,
  kOnlineUnconstrained,
  kOnlineConstrained,
  kReduction,
};

std::string PipelineName(Pipeline pipeline);
Pipeline ParsePipeline(const std::string& name);
const std::vector<Pipeline>& AllPipelines();

struct ExperimentSpec {
  GeneratorConfig generator;
  // Dimensions to sweep; empty means generator.d alone.
  std::vector<int> dims;
  std::vector<Pipeline> pipelines = {Pipeline::kOfflineUnconstrained};
  int trials = 1;
  // When positive, trial k reuses instance k % instances of its dimension,
  // so several orders run on the same instance.
  int instances = 0;
  std::uint64_t seed = 0;
  bool oracle = true;
  double eps = 1e-6;
  double eta = 10.0;
  double beta = 1.0;
  double secretary_prob = 0.5;
  // Perturb and drop exceptional items before the offline pipelines.
  bool preprocess = true;
  std::string csv_path;
  std::string summary_path;
};

// The default benchmark: n = 60, values and sizes Uniform(0, 1), cost
// 0.05 * sum_i z_i^2. Uniform matroids get rank 10, partitions six blocks
// of capacity 2.
GeneratorConfig BenchmarkGenerator(int d, const std::string& matroid_kind = "free");

// Unconstrained pipelines replace the matroid by the free one.
bool IsUnconstrained(Pipeline pipeline);

struct TrialRow {
  std::uint64_t seed = 0;
  std::uint64_t order_hash = 0;
  Pipeline pipeline = Pipeline::kOfflineUnconstrained;
  int d = 1;
  double profit = 0.0;
  std::optional<double> baseline;
  std::optional<double> ratio;
  std::optional<double> mu_tau;
  std::optional<std::size_t> sample_size;
  std::string branch;
  // Online only.
  std::optional<bool> mu_ge_lambda_star;
  std::optional<bool> not_too_big;
  bool feasible = true;
  std::int64_t guard_violations = 0;
};

struct CellSummary {
  int d = 1;
  Pipeline pipeline = Pipeline::kOfflineUnconstrained;
  int trials = 0;
  std::string baseline_kind;
  double mean_profit = 0.0;
  std::optional<double> mean_ratio;
  std::optional<double> median_ratio;
  std::optional<double> min_ratio;
  std::optional<double> max_ratio;
  std::optional<double> freq_mu_ge_lambda_star;
  std::optional<double> freq_not_too_big;
  std::map<std::string, int> branches;
  int infeasible = 0;
  int negative = 0;
  std::int64_t guard_violations = 0;
  double runtime_seconds = 0.0;
};

struct ExperimentResult {
  std::vector<TrialRow> rows;
  std::vector<CellSummary> cells;
};

// 64-bit FNV-1a over the ids, each as 8 little-endian bytes.
std::uint64_t OrderHash(const std::vector<ItemId>& ids);
std::string HexHash(std::uint64_t hash);

// Seed of trial k at dimension d.
std::uint64_t TrialSeed(std::uint64_t base, int d, int k);

// Generated instance for a trial, with the pipeline's matroid and no
// preprocessing.
Instance TrialInstance(const ExperimentSpec& spec, Pipeline pipeline, int d,
                       int k);

// Perturbation followed by removal of exceptional items.
Instance PreprocessOffline(const Instance& inst, double noise_delta,
                           std::uint64_t seed);

struct SolveOutput {
  std::optional<OfflineSolution> offline;
  std::optional<OnlineRun> online;
  Instance solved;  // the instance the pipeline's choice refers to
  double profit = 0.0;
};

// Runs one pipeline on an instance with a seed, as the CLI does.
SolveOutput SolvePipeline(const ExperimentSpec& spec, Pipeline pipeline,
                          const Instance& inst, std::uint64_t seed);

ExperimentResult RunExperiment(const ExperimentSpec& spec, int workers = 1);

std::string RowsToCsv(const std::vector<TrialRow>& rows);

// Reads CS_LOG (trace, debug, info, warn, error, critical, off); the default
// level is warn.
void ConfigureLoggingFromEnv();

}  // namespace convsec

#endif  // CONVSEC_HARNESS_H_
