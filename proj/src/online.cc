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

#include "convsec/online.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <utility>

#include "convsec/error.h"
#include "convsec/fopt.h"
#include "convsec/offline.h"
#include "convsec/rng.h"

namespace convsec {
namespace {

std::atomic<std::int64_t> global_guard_violations{0};

bool SameBreakpoint(double a, double b) {
  return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(b));
}

double FoptOf(const Instance& inst, Subset subset) {
  std::sort(subset.begin(), subset.end());
  return Fopt(inst, subset).value;
}

bool Dominates(const Vec& mu, const Vec& lambda) {
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] < lambda[i] - 1e-9 * std::max(1.0, std::fabs(lambda[i]))) {
      return false;
    }
  }
  return true;
}

std::optional<std::size_t> SecretaryPick(const Instance& inst,
                                         const Subset& order) {
  Vec profits(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    profits[k] = inst.SingletonProfit(order[k]);
  }
  const std::optional<std::size_t> k = SingleSecretary(profits);
  if (!k || !(profits[*k] > 0.0)) return std::nullopt;
  return order[*k];
}

}  // namespace

ThresholdResult LearnThreshold(const Instance& inst, const Subset& sample) {
  ThresholdResult result;
  result.mu = SentinelClassifier(inst.dim());
  if (sample.empty()) return result;
  const double total = FoptOf(inst, sample);
  result.fopt_sample = total;
  if (!(total > 0.0)) return result;
  const double target = total / (12.0 * inst.dim()) - 1e-9;

  Subset always;
  Subset order;
  std::vector<double> breakpoint(inst.size(), 0.0);
  for (std::size_t p : sample) {
    breakpoint[p] = ItemBreakpoint(inst.cost(), inst.item(p));
    (std::isinf(breakpoint[p]) ? always : order).push_back(p);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return breakpoint[a] > breakpoint[b];
                   });
  if (!always.empty()) {
    const double base = FoptOf(inst, always);
    if (base >= target) {
      result.fopt_picked = base;
      return result;
    }
  }
  // ends[g] is one past the last item of breakpoint group g.
  std::vector<std::size_t> ends;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k + 1 == order.size() ||
        !SameBreakpoint(breakpoint[order[k + 1]], breakpoint[order[k]])) {
      ends.push_back(k + 1);
    }
  }
  auto fopt_through = [&](std::size_t g) {
    Subset picked = always;
    picked.insert(picked.end(), order.begin(), order.begin() + ends[g]);
    return FoptOf(inst, std::move(picked));
  };
  // fopt of the picked sample is non-decreasing in g.
  std::size_t lo = 0;
  std::size_t hi = ends.size() - 1;
  double at_hi = total;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const double v = fopt_through(mid);
    if (v >= target) {
      hi = mid;
      at_hi = v;
    } else {
      lo = mid + 1;
    }
  }
  const std::size_t lead = hi == 0 ? order[0] : order[ends[hi - 1]];
  result.mu = CurvePoint(inst.cost(), breakpoint[lead]);
  result.fopt_picked = at_hi;
  return result;
}

GuardedObjective::GuardedObjective(const Instance& inst, SetFunction f)
    : inst_(inst), f_(std::move(f)) {}

double GuardedObjective::operator()(const Subset& subset) {
  ++evaluations_;
  if (!inst_.index().IsIndependent(subset)) {
    ++violations_;
    global_guard_violations.fetch_add(1);
    Fail(ErrorCode::kGuardViolation,
         "objective evaluated on a set outside the matroid");
  }
  return f_(subset);
}

std::int64_t GlobalGuardViolations() { return global_guard_violations.load(); }
void ResetGlobalGuardViolations() { global_guard_violations.store(0); }

SampleThresholdGreedy::SampleThresholdGreedy(const Instance& inst,
                                             std::size_t stream_length,
                                             GuardedObjective* f,
                                             const SubmodMSConfig& config)
    : inst_(inst),
      f_(f),
      config_(config),
      observe_(static_cast<std::size_t>(
          std::floor(config.sample_fraction * stream_length))),
      state_(&inst.index()) {
  value_ = (*f_)(Subset{});
}

bool SampleThresholdGreedy::Offer(std::size_t pos) {
  pending_value_.reset();
  if (seen_ < observe_) {
    observed_.push_back(pos);
    return false;
  }
  if (!threshold_ready_) {
    const Subset greedy = GreedyUnderMatroid(
        inst_, observed_, [&](const Subset& s) { return (*f_)(s); });
    const double g = (*f_)(greedy);
    const int rank = inst_.index().Rank(inst_.All());
    threshold_ = rank > 0 ? g / (config_.threshold_divisor * rank) : kInfinity;
    threshold_ready_ = true;
  }
  if (std::isinf(threshold_) || !state_.CanAdd(pos)) return false;
  Subset with = selected_;
  with.push_back(pos);
  const double v = (*f_)(with);
  pending_value_ = v;
  return v - value_ > threshold_;
}

void SampleThresholdGreedy::Commit(std::size_t pos, bool accepted) {
  ++seen_;
  if (accepted) {
    if (!pending_value_ || !state_.CanAdd(pos)) {
      Fail(ErrorCode::kInternal, "commit of an item that was not offered");
    }
    selected_.push_back(pos);
    state_.Add(pos);
    value_ = *pending_value_;
  }
  pending_value_.reset();
}

Subset SubmodMS(const Instance& inst, const Subset& stream, GuardedObjective* f,
                const SubmodMSConfig& config) {
  if (config.algorithm == SubmodAlgorithm::kPlainGreedy) {
    return GreedyUnderMatroid(inst, stream,
                              [&](const Subset& s) { return (*f)(s); });
  }
  SampleThresholdGreedy algo(inst, stream.size(), f, config);
  for (std::size_t p : stream) algo.Commit(p, algo.Offer(p));
  return algo.selected();
}

std::optional<std::size_t> SingleSecretary(
    const Vec& profits, std::optional<std::size_t> sample_size) {
  const std::size_t n = profits.size();
  if (n == 0) return std::nullopt;
  const std::size_t s = sample_size.value_or(static_cast<std::size_t>(
      std::ceil(static_cast<double>(n) / std::numbers::e)));
  double best = -kInfinity;
  for (std::size_t k = 0; k < std::min(s, n); ++k) {
    best = std::max(best, profits[k]);
  }
  for (std::size_t k = s; k < n; ++k) {
    if (profits[k] > best) return k;
  }
  return std::nullopt;
}

OnlineRun RunAlgorithm1(const Instance& inst, const Subset& order,
                        const OnlineConfig& config, std::uint64_t seed) {
  const std::size_t n = inst.size();
  if (order.size() != n) {
    Fail(ErrorCode::kInvalidArgument, "order must be a permutation of items");
  }
  {
    std::vector<bool> seen(n, false);
    for (std::size_t p : order) {
      if (p >= n || seen[p]) {
        Fail(ErrorCode::kInvalidArgument,
             "order must be a permutation of items");
      }
      seen[p] = true;
    }
  }
  OnlineRun run;
  run.order = order;
  run.mu = SentinelClassifier(inst.dim());
  if (n == 0) {
    run.branch = "empty";
    return run;
  }
  Rng rng(seed);
  const std::size_t k = config.sample_size
                            ? std::min(*config.sample_size, n)
                            : static_cast<std::size_t>(
                                  rng.BinomialHalf(static_cast<int>(n)));
  run.sample_size = k;
  const Subset sample(order.begin(), order.begin() + k);
  const ThresholdResult threshold = LearnThreshold(inst, sample);
  run.mu = threshold.mu;
  run.diagnostics.fopt_sample = threshold.fopt_sample;
  run.diagnostics.fopt_sample_mu = threshold.fopt_picked;

  for (std::size_t j = k; j < n; ++j) {
    const Item& e = inst.item(order[j]);
    if (CompareToThreshold(e.value, ThresholdOf(run.mu.lambda, e.size)) ==
        Side::kAbove) {
      run.filtered.push_back(order[j]);
    }
  }
  run.diagnostics.filtered_size = run.filtered.size();

  if (inst.index().is_free()) {
    Vec z(inst.dim(), 0.0);
    double value = 0.0;
    double current = 0.0;
    for (std::size_t p : run.filtered) {
      const Item& e = inst.item(p);
      Vec next = z;
      for (int i = 0; i < inst.dim(); ++i) next[i] += e.size[i];
      const double with = value + e.value - inst.cost().Eval(next);
      if (with >= current) {
        run.selected.push_back(p);
        z = std::move(next);
        value += e.value;
        current = with;
      }
    }
  } else {
    GuardedObjective f(inst, [&](const Subset& s) {
      return inst.SubsetProfit(s);
    });
    if (config.submod.algorithm == SubmodAlgorithm::kPlainGreedy) {
      run.selected = SubmodMS(inst, run.filtered, &f, config.submod);
    } else {
      SampleThresholdGreedy algo(inst, run.filtered.size(), &f, config.submod);
      double current = 0.0;
      for (std::size_t p : run.filtered) {
        bool accept = algo.Offer(p);
        if (accept) {
          Subset with = algo.selected();
          with.push_back(p);
          const double v = inst.SubsetProfit(with);
          accept = v >= current;
          if (accept) current = v;
        }
        algo.Commit(p, accept);
      }
      run.selected = algo.selected();
    }
    run.diagnostics.guard_evaluations = f.evaluations();
    run.diagnostics.guard_violations = f.violations();
  }
  std::sort(run.selected.begin(), run.selected.end());
  run.profit = inst.SubsetProfit(run.selected);

  if (config.lambda_star) {
    run.diagnostics.mu_ge_lambda_star =
        run.mu.sentinel || Dominates(run.mu.lambda, *config.lambda_star);
  }
  if (config.fopt_picked_diagnostic) {
    run.diagnostics.fopt_picked_mu =
        FoptOf(inst, Pick(inst, run.mu.lambda).picked);
  }
  return run;
}

OnlineRun RunWithPreprocessing(const Instance& inst, const OnlineConfig& config,
                               std::uint64_t seed) {
  OnlineRun run;
  run.mu = SentinelClassifier(inst.dim());
  run.branch = "empty";
  if (inst.empty()) return run;
  Rng rng(seed);
  const Instance perturbed = PerturbGeneralPosition(
      inst, config.preprocess.noise_delta, MixSeed(seed, 1));
  const Subset order = rng.Permutation(inst.size());
  if (rng.Bernoulli(config.preprocess.secretary_prob)) {
    run.order = order;
    run.branch = "secretary";
    if (const auto pick = SecretaryPick(perturbed, order)) {
      run.selected = {*pick};
    }
  } else {
    run = RunAlgorithm1(perturbed, order, config, MixSeed(seed, 2));
  }
  // Perturbation only lowers values, so the original profit is at least the
  // perturbed one.
  run.profit = inst.SubsetProfit(run.selected);
  return run;
}

double ReductionProbability(double beta, int dim) {
  if (!(beta > 0.0) || std::isinf(beta)) {
    Fail(ErrorCode::kInvalidArgument, "beta must be positive and finite");
  }
  return beta / (beta + 2.0 * std::numbers::e * dim);
}

OnlineRun ReduceSupermodularToSeparable(const Instance& inst, double beta,
                                        const OnlineConfig& config,
                                        std::uint64_t seed) {
  const double p = ReductionProbability(beta, inst.dim());
  OnlineRun run;
  run.mu = SentinelClassifier(inst.dim());
  run.branch = "empty";
  if (inst.empty()) return run;
  Rng rng(seed);
  const Subset order = rng.Permutation(inst.size());
  if (rng.Bernoulli(p)) {
    run.order = order;
    run.branch = "secretary";
    if (const auto pick = SecretaryPick(inst, order)) run.selected = {*pick};
    run.profit = inst.SubsetProfit(run.selected);
    run.diagnostics.surrogate_profit = run.profit;
    return run;
  }
  const Instance surrogate = inst.WithCost(inst.cost().SeparableSurrogate());
  OnlineConfig inner = config;
  inner.lambda_star.reset();
  run = RunAlgorithm1(surrogate, order, inner, MixSeed(seed, 2));
  run.diagnostics.surrogate_profit = run.profit;
  run.profit = inst.SubsetProfit(run.selected);
  return run;
}

double LovaszExtension(const SetFunction& f, const Vec& x) {
  Subset order(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) order[p] = p;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
  double total = 0.0;
  Subset prefix;
  for (std::size_t k = 0; k < order.size(); ++k) {
    prefix.push_back(order[k]);
    const double next = k + 1 < order.size() ? x[order[k + 1]] : 0.0;
    const double step = x[order[k]] - next;
    if (step != 0.0) total += step * f(prefix);
  }
  return total;
}

}  // namespace convsec
