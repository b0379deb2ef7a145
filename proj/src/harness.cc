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

#include "convsec/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <tuple>
#include <utility>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "convsec/error.h"
#include "convsec/fopt.h"
#include "convsec/rng.h"

namespace convsec {
namespace {

constexpr double kNoiseDelta = 1e-6;

std::string FormatDouble(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double Ratio(double profit, double baseline) {
  return baseline > 1e-12 ? profit / baseline : 1.0;
}

std::optional<Vec> LambdaStar(const Instance& inst, double eps) {
  ClassifierOptions options;
  options.eps = eps;
  try {
    return FindGoodClassifier(inst, options).classifier.lambda;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoGoodClassifier) throw;
    return std::nullopt;
  }
}

TrialRow RunTrial(const ExperimentSpec& spec, Pipeline pipeline, int d,
                  int k) {
  const std::uint64_t seed = TrialSeed(spec.seed, d, k);
  const Instance inst = TrialInstance(spec, pipeline, d, k);
  SolveOutput out = SolvePipeline(spec, pipeline, inst, seed);

  TrialRow row;
  row.seed = seed;
  row.pipeline = pipeline;
  row.d = d;
  row.profit = out.profit;
  std::optional<double> baseline;
  if (spec.oracle) baseline = Fopt(out.solved).value;
  row.baseline = baseline;
  if (baseline) row.ratio = Ratio(out.profit, *baseline);

  Subset selected;
  if (out.offline) {
    const OfflineSolution& sol = *out.offline;
    selected = sol.chosen;
    row.branch = sol.candidate;
    row.order_hash = OrderHash(out.solved.ToIds(out.solved.All()));
    if (sol.classifier) row.mu_tau = sol.classifier->classifier.tau;
  } else {
    const OnlineRun& run = *out.online;
    selected = run.selected;
    row.branch = run.branch;
    row.order_hash = OrderHash(out.solved.ToIds(run.order));
    if (run.branch == "algorithm") {
      row.mu_tau = run.mu.tau;
      row.sample_size = run.sample_size;
      row.mu_ge_lambda_star = run.diagnostics.mu_ge_lambda_star;
      if (baseline && run.diagnostics.fopt_picked_mu) {
        row.not_too_big =
            *run.diagnostics.fopt_picked_mu >= *baseline / (48.0 * d) - 1e-9;
      }
    }
    row.guard_violations = run.diagnostics.guard_violations;
  }
  row.feasible = out.solved.index().IsIndependent(selected);
  spdlog::debug("trial seed={} pipeline={} d={} profit={}", seed,
                PipelineName(pipeline), d, row.profit);
  return row;
}

}  // namespace

std::string PipelineName(Pipeline pipeline) {
  switch (pipeline) {
    case Pipeline::kOfflineUnconstrained:
      return "offline_unconstrained";
    case Pipeline::kOfflineConstrained:
      return "offline_constrained";
    case Pipeline::kOnlineUnconstrained:
      return "online_unconstrained";
    case Pipeline::kOnlineConstrained:
      return "online_constrained";
    case Pipeline::kReduction:
      return "reduction";
  }
  return "unknown";
}

const std::vector<Pipeline>& AllPipelines() {
  static const std::vector<Pipeline> all = {
      Pipeline::kOfflineUnconstrained, Pipeline::kOfflineConstrained,
      Pipeline::kOnlineUnconstrained, Pipeline::kOnlineConstrained,
      Pipeline::kReduction};
  return all;
}

Pipeline ParsePipeline(const std::string& name) {
  for (Pipeline p : AllPipelines()) {
    if (PipelineName(p) == name) return p;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown pipeline '" + name + "'");
}

GeneratorConfig BenchmarkGenerator(int d, const std::string& matroid_kind) {
  GeneratorConfig config;
  config.n = 60;
  config.d = d;
  config.value_max = 1.0;
  config.size_max = 1.0;
  config.cost_family = "power";
  config.coeff_lo = 0.05;
  config.coeff_hi = 0.05;
  config.exponent = 2.0;
  config.matroid_kind = matroid_kind;
  config.rank = 10;
  config.num_blocks = 6;
  config.block_cap = 2;
  return config;
}

bool IsUnconstrained(Pipeline pipeline) {
  return pipeline == Pipeline::kOfflineUnconstrained ||
         pipeline == Pipeline::kOnlineUnconstrained;
}

std::uint64_t OrderHash(const std::vector<ItemId>& ids) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (ItemId id : ids) {
    const auto u = static_cast<std::uint64_t>(id);
    for (int b = 0; b < 8; ++b) {
      h ^= (u >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

std::string HexHash(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

std::uint64_t TrialSeed(std::uint64_t base, int d, int k) {
  return MixSeed(MixSeed(base, static_cast<std::uint64_t>(d)),
                 static_cast<std::uint64_t>(k));
}

Instance TrialInstance(const ExperimentSpec& spec, Pipeline pipeline, int d,
                       int k) {
  GeneratorConfig config = spec.generator;
  config.d = d;
  if (IsUnconstrained(pipeline)) {
    config.matroid_kind = "free";
    config.explicit_matroid.reset();
  }
  const std::uint64_t seed =
      spec.instances > 0
          ? MixSeed(MixSeed(spec.seed, static_cast<std::uint64_t>(d)),
                    (1ULL << 32) + static_cast<std::uint64_t>(k % spec.instances))
          : TrialSeed(spec.seed, d, k);
  return Generate(config, seed);
}

Instance PreprocessOffline(const Instance& inst, double noise_delta,
                           std::uint64_t seed) {
  return SplitExceptional(PerturbGeneralPosition(inst, noise_delta, seed)).core;
}

SolveOutput SolvePipeline(const ExperimentSpec& spec, Pipeline pipeline,
                          const Instance& inst, std::uint64_t seed) {
  OfflineOptions offline;
  offline.eps = spec.eps;
  OnlineConfig online;
  online.preprocess.eta = spec.eta;
  online.preprocess.secretary_prob = spec.secretary_prob;
  online.preprocess.noise_delta = kNoiseDelta;
  switch (pipeline) {
    case Pipeline::kOfflineUnconstrained:
    case Pipeline::kOfflineConstrained: {
      Instance solved = spec.preprocess
                            ? PreprocessOffline(inst, kNoiseDelta, MixSeed(seed, 7))
                            : inst;
      OfflineSolution sol = pipeline == Pipeline::kOfflineUnconstrained
                                ? SolveUnconstrained(solved, offline)
                                : SolveConstrained(solved, offline);
      const double profit = sol.profit;
      return SolveOutput{std::move(sol), std::nullopt, std::move(solved),
                         profit};
    }
    case Pipeline::kOnlineUnconstrained:
    case Pipeline::kOnlineConstrained: {
      online.lambda_star = LambdaStar(inst, spec.eps);
      online.fopt_picked_diagnostic = spec.oracle;
      OnlineRun run = RunWithPreprocessing(inst, online, seed);
      const double profit = run.profit;
      return SolveOutput{std::nullopt, std::move(run), inst, profit};
    }
    case Pipeline::kReduction: {
      OnlineRun run = ReduceSupermodularToSeparable(inst, spec.beta, online, seed);
      const double profit = run.profit;
      return SolveOutput{std::nullopt, std::move(run), inst, profit};
    }
  }
  Fail(ErrorCode::kInternal, "unhandled pipeline");
}

ExperimentResult RunExperiment(const ExperimentSpec& spec, int workers) {
  if (spec.trials < 1) Fail(ErrorCode::kInvalidArgument, "trials must be >= 1");
  const std::vector<int> dims =
      spec.dims.empty() ? std::vector<int>{spec.generator.d} : spec.dims;
  struct Job {
    int d;
    Pipeline pipeline;
    int k;
  };
  std::vector<Job> jobs;
  for (int d : dims) {
    for (Pipeline p : spec.pipelines) {
      for (int k = 0; k < spec.trials; ++k) jobs.push_back({d, p, k});
    }
  }
  std::vector<TrialRow> rows(jobs.size());
  std::vector<double> seconds(jobs.size(), 0.0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&]() {
    while (true) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (failure) return;
      }
      const auto start = std::chrono::steady_clock::now();
      try {
        rows[j] = RunTrial(spec, jobs[j].pipeline, jobs[j].d, jobs[j].k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
      seconds[j] = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    }
  };
  const int n_workers = std::max(1, workers);
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentResult result;
  for (int d : dims) {
    for (Pipeline p : spec.pipelines) {
      CellSummary cell;
      cell.d = d;
      cell.pipeline = p;
      cell.baseline_kind = spec.oracle ? "fopt" : "none";
      std::vector<double> ratios;
      int mu_known = 0;
      int mu_ge = 0;
      int big_known = 0;
      int big_ok = 0;
      for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (jobs[j].d != d || jobs[j].pipeline != p) continue;
        const TrialRow& r = rows[j];
        ++cell.trials;
        cell.mean_profit += r.profit;
        cell.runtime_seconds += seconds[j];
        if (r.ratio) ratios.push_back(*r.ratio);
        if (r.mu_ge_lambda_star) {
          ++mu_known;
          mu_ge += *r.mu_ge_lambda_star ? 1 : 0;
        }
        if (r.not_too_big) {
          ++big_known;
          big_ok += *r.not_too_big ? 1 : 0;
        }
        ++cell.branches[r.branch];
        cell.infeasible += r.feasible ? 0 : 1;
        cell.negative += r.profit < 0.0 ? 1 : 0;
        cell.guard_violations += r.guard_violations;
      }
      if (cell.trials > 0) cell.mean_profit /= cell.trials;
      if (!ratios.empty()) {
        double sum = 0.0;
        for (double r : ratios) sum += r;
        cell.mean_ratio = sum / ratios.size();
        std::sort(ratios.begin(), ratios.end());
        const std::size_t m = ratios.size();
        cell.median_ratio = m % 2 == 1 ? ratios[m / 2]
                                       : 0.5 * (ratios[m / 2 - 1] + ratios[m / 2]);
        cell.min_ratio = ratios.front();
        cell.max_ratio = ratios.back();
      }
      if (mu_known > 0) {
        cell.freq_mu_ge_lambda_star = static_cast<double>(mu_ge) / mu_known;
      }
      if (big_known > 0) {
        cell.freq_not_too_big = static_cast<double>(big_ok) / big_known;
      }
      result.cells.push_back(std::move(cell));
    }
  }
  std::sort(rows.begin(), rows.end(), [](const TrialRow& a, const TrialRow& b) {
    return std::make_tuple(a.seed, a.d, static_cast<int>(a.pipeline)) <
           std::make_tuple(b.seed, b.d, static_cast<int>(b.pipeline));
  });
  result.rows = std::move(rows);
  return result;
}

std::string RowsToCsv(const std::vector<TrialRow>& rows) {
  std::string out =
      "seed,order_hash,pipeline,profit,baseline,ratio,mu_tau,sample_size,"
      "branch,d\n";
  auto opt = [](const std::optional<double>& v) {
    return v ? FormatDouble(*v) : std::string();
  };
  for (const TrialRow& r : rows) {
    out += std::to_string(r.seed);
    out += ',' + HexHash(r.order_hash);
    out += ',' + PipelineName(r.pipeline);
    out += ',' + FormatDouble(r.profit);
    out += ',' + opt(r.baseline);
    out += ',' + opt(r.ratio);
    out += ',' + opt(r.mu_tau);
    out += ',' + (r.sample_size ? std::to_string(*r.sample_size) : std::string());
    out += ',' + r.branch;
    out += ',' + std::to_string(r.d);
    out += '\n';
  }
  return out;
}

void ConfigureLoggingFromEnv() {
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("CS_LOG")) {
    const spdlog::level::level_enum parsed = spdlog::level::from_str(env);
    // from_str maps unknown names to off; only accept "off" when spelled out.
    if (parsed != spdlog::level::off || std::string(env) == "off") {
      level = parsed;
    }
  }
  static std::once_flag once;
  std::call_once(once, []() {
    spdlog::set_default_logger(spdlog::stderr_color_mt("convsec"));
  });
  spdlog::set_level(level);
}

}  // namespace convsec
