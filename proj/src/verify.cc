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

#include "convsec/verify.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <utility>

#include <spdlog/spdlog.h>

#include "convsec/classifier.h"
#include "convsec/error.h"
#include "convsec/fopt.h"
#include "convsec/harness.h"
#include "convsec/offline.h"
#include "convsec/online.h"
#include "convsec/oracle.h"
#include "convsec/rng.h"

namespace convsec {
namespace {

class Checker {
 public:
  explicit Checker(SuiteReport* report) : report_(report) {}

  void Check(bool ok, const std::function<std::string()>& witness) {
    ++report_->checks;
    if (ok) return;
    ++report_->failures;
    report_->passed = false;
    if (report_->witness.empty()) report_->witness = witness();
  }

 private:
  SuiteReport* report_;
};

std::string Describe(const Vec& v) {
  std::ostringstream out;
  out.precision(17);
  out << '(';
  for (std::size_t k = 0; k < v.size(); ++k) out << (k ? ", " : "") << v[k];
  out << ')';
  return out.str();
}

int Scaled(VerifyLevel level, int quick, int full) {
  return level == VerifyLevel::kFull ? full : quick;
}

Vec RandomVec(Rng& rng, int d, double lo, double hi) {
  Vec v(d);
  for (double& x : v) x = rng.Uniform(lo, hi);
  return v;
}

double Dot(const Vec& a, const Vec& b) {
  double t = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) t += a[k] * b[k];
  return t;
}

CostModel RandomQuadratic(Rng& rng, int d) {
  Vec q(d * d, 0.0);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) q[i * d + j] = q[j * d + i] = rng.Uniform(0.0, 0.5);
  }
  for (int i = 0; i < d; ++i) {
    double row = 0.0;
    for (int j = 0; j < d; ++j) row += i == j ? 0.0 : q[i * d + j];
    q[i * d + i] = rng.Uniform(0.5, 1.5) + row;
  }
  return CostModel::SupermodularQuadratic(d, q);
}

std::vector<std::pair<std::string, CostModel>> Models(Rng& rng) {
  std::vector<std::pair<std::string, CostModel>> models;
  for (double p : {1.5, 2.0, 3.0}) {
    models.emplace_back("power p=" + std::to_string(p),
                        CostModel::SeparablePower(RandomVec(rng, 2, 0.5, 1.5),
                                                  Vec(2, p)));
  }
  models.emplace_back("quadratic d=2", RandomQuadratic(rng, 2));
  models.emplace_back("quadratic d=3", RandomQuadratic(rng, 3));
  models.emplace_back("exp", CostModel::SeparableExp(RandomVec(rng, 2, 0.5, 1.5),
                                                     RandomVec(rng, 2, 0.5, 1.5)));
  return models;
}

Instance RandomInstance(std::uint64_t seed, int n, int d,
                        const std::string& matroid, bool separable_only) {
  Rng rng(MixSeed(seed, 99));
  GeneratorConfig c;
  c.n = n;
  c.d = d;
  const int family = static_cast<int>(rng.Below(3));
  if (family == 1 && d >= 2 && !separable_only) {
    c.cost_family = "quadratic";
  } else if (family == 2) {
    c.cost_family = "exp";
  } else {
    c.cost_family = "power";
    c.exponent = std::vector<double>{1.5, 2.0, 3.0}[rng.Below(3)];
  }
  c.coeff_lo = 0.5;
  c.coeff_hi = 1.5;
  c.value_max = 2.0;
  c.size_max = 1.0;
  c.matroid_kind = matroid;
  c.rank = 1 + static_cast<int>(rng.Below(std::max(1, n / 2)));
  c.num_blocks = 1 + static_cast<int>(rng.Below(3));
  c.block_cap = 1 + static_cast<int>(rng.Below(2));
  return Generate(c, seed);
}

Subset FromMask(std::uint32_t mask, const Subset& universe) {
  Subset s;
  for (std::size_t k = 0; k < universe.size(); ++k) {
    if (mask & (1U << k)) s.push_back(universe[k]);
  }
  return s;
}

// Second differences of h(S) = g(S x) over all S and pairs outside S.
void CheckDiscreteSupermodular(const Instance& inst, Checker* checker) {
  const std::size_t n = inst.size();
  const Subset all = inst.All();
  std::vector<double> h(1U << n);
  for (std::uint32_t m = 0; m < (1U << n); ++m) {
    h[m] = inst.cost().Eval(inst.Occupancy(FromMask(m, all)));
  }
  for (std::uint32_t m = 0; m < (1U << n); ++m) {
    for (std::size_t a = 0; a < n; ++a) {
      if (m & (1U << a)) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (m & (1U << b)) continue;
        const std::uint32_t ma = m | (1U << a);
        const std::uint32_t mb = m | (1U << b);
        const double second = h[ma | mb] - h[ma] - h[mb] + h[m];
        checker->Check(second >= -1e-9, [&]() {
          return "h(S+a+b) - h(S+a) - h(S+b) + h(S) = " + std::to_string(second) +
                 " for mask " + std::to_string(m) + ", a=" + std::to_string(a) +
                 ", b=" + std::to_string(b);
        });
      }
    }
  }
}

void DualitySuite(const VerifyOptions& o, Checker* c) {
  Rng rng(MixSeed(o.seed, 1));
  const int points = Scaled(o.level, 100, 500);
  for (const auto& [name, g] : Models(rng)) {
    const int d = g.dim();
    const Vec top = g.Grad(Vec(d, 2.0));
    const double lam_hi = 1.2 * *std::max_element(top.begin(), top.end());
    for (int t = 0; t < points; ++t) {
      const Vec z = RandomVec(rng, d, 0.0, 2.0);
      const Vec lam = RandomVec(rng, d, 0.0, lam_hi);
      const double gz = g.Eval(z);
      const double conj = g.Conjugate(lam);
      c->Check(gz >= Dot(lam, z) - conj - 1e-7, [&]() {
        return name + ": Fenchel-Young fails at z=" + Describe(z) +
               " lambda=" + Describe(lam);
      });
      const Vec grad = g.Grad(z);
      const double lin = Dot(z, grad) - g.Conjugate(grad);
      c->Check(std::fabs(lin - gz) <= 1e-5 * std::max(1.0, std::fabs(gz)), [&]() {
        return name + ": linearization gap at z=" + Describe(z);
      });
      // Double dual over a grid of multiples of the gradient.
      double sup = -kInfinity;
      for (int k = 0; k <= 20; ++k) {
        Vec l = grad;
        for (double& x : l) x *= 0.5 + 0.05 * k;
        sup = std::max(sup, Dot(l, z) - g.Conjugate(l));
      }
      c->Check(std::fabs(sup - gz) <= 1e-4 * std::max(1.0, std::fabs(gz)), [&]() {
        return name + ": double dual differs at z=" + Describe(z);
      });
      Vec bigger = lam;
      for (double& x : bigger) x += rng.Uniform(0.0, 0.5);
      c->Check(g.Conjugate(bigger) >= conj - 1e-9, [&]() {
        return name + ": conjugate not monotone at lambda=" + Describe(lam);
      });
      double sum_marginal = 0.0;
      for (int i = 0; i < d; ++i) {
        sum_marginal += g.MarginalConjugate(i, lam[i]);
        Vec axis(d, 0.0);
        axis[i] = lam[i];
        const double a = g.Conjugate(axis);
        const double b = g.MarginalConjugate(i, lam[i]);
        c->Check(std::fabs(a - b) <= 1e-7 * std::max(1.0, std::fabs(b)), [&]() {
          return name + ": dual and marginal do not commute on axis " +
                 std::to_string(i);
        });
      }
      c->Check(conj <= sum_marginal + 1e-7, [&]() {
        return name + ": coordinate subadditivity fails at lambda=" +
               Describe(lam);
      });
    }
  }
}

void SupermodularitySuite(const VerifyOptions& o, Checker* c) {
  const int samples = Scaled(o.level, 200, 1000);
  if (o.instance) {
    const Instance& inst = *o.instance;
    Box box;
    box.lo.assign(inst.dim(), 0.0);
    box.hi = inst.Occupancy(inst.All());
    for (double& h : box.hi) h = std::max(h, 1.0);
    const SupermodularityReport r =
        CheckSupermodular(inst.cost(), samples, box, o.seed);
    c->Check(r.passed, [&]() {
      return "cross difference " + std::to_string(r.worst) + " at x=" +
             Describe(r.x) + " i=" + std::to_string(r.i) + " j=" +
             std::to_string(r.j) + " a=" + std::to_string(r.a) +
             " b=" + std::to_string(r.b);
    });
    if (inst.size() <= 12) CheckDiscreteSupermodular(inst, c);
    return;
  }
  Rng rng(MixSeed(o.seed, 2));
  for (const auto& [name, g] : Models(rng)) {
    const SupermodularityReport r =
        CheckSupermodular(g, samples, Box{}, MixSeed(o.seed, 3));
    c->Check(r.passed, [&]() { return name + ": cross difference violated"; });
    for (int t = 0; t < samples; ++t) {
      const Vec x = RandomVec(rng, g.dim(), 0.0, 2.0);
      const Vec y = RandomVec(rng, g.dim(), 0.0, 2.0);
      Vec xy = x;
      for (int i = 0; i < g.dim(); ++i) xy[i] += y[i];
      c->Check(g.Eval(x) + g.Eval(y) <= g.Eval(xy) + 1e-7, [&]() {
        return name + ": superadditivity fails at x=" + Describe(x);
      });
    }
  }
  const int instances = Scaled(o.level, 15, 50);
  for (int k = 0; k < instances; ++k) {
    const int n = 4 + k % 7;
    const Instance inst =
        RandomInstance(MixSeed(o.seed, 100 + k), n, 1 + k % 3, "free", false);
    CheckDiscreteSupermodular(inst, c);
    // Profit subadditivity over disjoint pairs.
    const Subset all = inst.All();
    std::vector<double> pi(1U << n);
    for (std::uint32_t m = 0; m < (1U << n); ++m) {
      pi[m] = inst.SubsetProfit(FromMask(m, all));
    }
    for (std::uint32_t a = 0; a < (1U << n); ++a) {
      const std::uint32_t rest = ((1U << n) - 1) & ~a;
      for (std::uint32_t b = rest;; b = (b - 1) & rest) {
        c->Check(pi[a | b] <= pi[a] + pi[b] + 1e-9, [&]() {
          return "profit subadditivity fails for masks " + std::to_string(a) +
                 ", " + std::to_string(b);
        });
        if (b == 0) break;
      }
    }
  }
}

void NegativeControlSuite(const VerifyOptions& o, Checker* c) {
  // A symmetric matrix with a negative off-diagonal entry is not
  // supermodular; the check must find it.
  const Vec q = {1.0, -0.5, -0.5, 1.0};
  CustomParams p;
  p.name = "negative_offdiag";
  p.eval = [q](const Vec& z) {
    return q[0] * z[0] * z[0] + 2 * q[1] * z[0] * z[1] + q[3] * z[1] * z[1];
  };
  p.grad = [q](const Vec& z) {
    return Vec{2 * (q[0] * z[0] + q[1] * z[1]), 2 * (q[2] * z[0] + q[3] * z[1])};
  };
  const CostModel broken = CostModel::Custom(2, p);
  const SupermodularityReport r = CheckSupermodular(broken, 200, Box{}, o.seed);
  c->Check(!r.passed && r.worst < -1e-9 && r.i != r.j, [&]() {
    return std::string("a cost with negative Q entries passed the check");
  });
}

void MatroidSuite(const VerifyOptions& o, Checker* c) {
  std::vector<Instance> instances;
  if (o.instance) {
    instances.push_back(*o.instance);
  } else {
    const int count = Scaled(o.level, 20, 60);
    const char* kinds[] = {"free", "uniform", "partition"};
    for (int k = 0; k < count; ++k) {
      instances.push_back(RandomInstance(MixSeed(o.seed, 200 + k), 3 + k % 8,
                                         1 + k % 3, kinds[k % 3], false));
    }
  }
  Rng rng(MixSeed(o.seed, 4));
  for (const Instance& inst : instances) {
    const std::size_t n = inst.size();
    if (n > 12) continue;
    const Subset all = inst.All();
    std::vector<double> w(n);
    for (double& x : w) x = rng.Uniform(-0.2, 1.0);
    double best = 0.0;
    for (std::uint32_t m = 0; m < (1U << n); ++m) {
      const Subset s = FromMask(m, all);
      if (!inst.index().IsIndependent(s)) continue;
      double t = 0.0;
      for (std::size_t p : s) t += w[p];
      best = std::max(best, t);
    }
    double greedy = 0.0;
    for (std::size_t p : inst.index().Greedy(all, w)) greedy += w[p];
    c->Check(std::fabs(greedy - best) <= 1e-12 * std::max(1.0, best), [&]() {
      return "greedy weight " + std::to_string(greedy) + " vs exhaustive " +
             std::to_string(best);
    });
    const FractionalSolution fw = Fopt(inst);
    const OracleResult opt = BruteForceOpt(inst);
    c->Check(InMatroidPolytope(inst, fw.x), []() {
      return std::string("fractional solution outside the polytope");
    });
    c->Check(fw.UpperBound() >= opt.value - 1e-9, [&]() {
      return "fopt " + std::to_string(fw.UpperBound()) + " below opt " +
             std::to_string(opt.value);
    });
    if (n >= 2) {
      Subset part(all.begin(), all.begin() + n / 2);
      c->Check(Fopt(inst, part).value <= fw.UpperBound() + 1e-6, []() {
        return std::string("fopt grew under restriction");
      });
    }
    if (n <= 4) {
      const OracleResult grid = GridFopt(inst, 0.05);
      c->Check(fw.UpperBound() >= grid.value - 1e-9, [&]() {
        return "Frank-Wolfe bound below the grid value";
      });
    }
  }
}

void OfflineSuite(const VerifyOptions& o, bool constrained, Checker* c) {
  const int count = Scaled(o.level, 40, 200);
  for (int k = 0; k < count; ++k) {
    const int d = 1 + k % 3;
    const int n = 4 + k % 9;
    const std::string kind = !constrained ? "free" : (k % 2 ? "uniform" : "partition");
    const std::uint64_t seed = MixSeed(o.seed, (constrained ? 400 : 300) + k);
    const Instance inst = PreprocessOffline(
        RandomInstance(seed, n, d, kind, false), 1e-6, MixSeed(seed, 1));
    OfflineOptions options;
    options.eps = o.eps;
    const OfflineSolution sol =
        constrained ? SolveConstrained(inst, options) : SolveUnconstrained(inst, options);
    const double fopt = Fopt(inst).UpperBound();
    const double factor = constrained ? 2.0 * d + 1.0 : d + 1.0;
    const double bound = fopt / factor - 2.0 * d * o.eps - 1e-5;
    c->Check(sol.profit >= bound, [&]() {
      return "seed " + std::to_string(seed) + ": profit " +
             std::to_string(sol.profit) + " below fopt/" +
             std::to_string(factor) + " = " + std::to_string(fopt / factor);
    });
    c->Check(inst.index().IsIndependent(sol.chosen) && sol.profit >= 0.0, [&]() {
      return "seed " + std::to_string(seed) + ": infeasible or negative";
    });
    if (sol.classifier && sol.classifier->classifier.on_curve) {
      c->Check(sol.classifier->balance_spread <= 2.0 * o.eps + 1e-9, [&]() {
        return "seed " + std::to_string(seed) + ": classifier not balanced";
      });
    }
  }
}

void PiPlusSuite(const VerifyOptions& o, Checker* c) {
  const int count = Scaled(o.level, 15, 50);
  int done = 0;
  for (int k = 0; done < count && k < 20 * count; ++k) {
    const std::uint64_t seed = MixSeed(o.seed, 500 + k);
    const char* kinds[] = {"free", "uniform", "partition"};
    const Instance inst = PreprocessOffline(
        RandomInstance(seed, 4 + k % 9, 1 + k % 3, kinds[k % 3], true), 1e-6,
        MixSeed(seed, 1));
    GoodClassifier gc;
    try {
      gc = FindGoodClassifier(inst);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoGoodClassifier) throw;
      continue;
    }
    const Subset open = Pick(inst, gc.classifier.lambda).open_picked;
    if (open.size() > 12) continue;
    ++done;
    const PiPlus pp = BuildPiPlus(inst, gc.classifier.lambda);
    const std::size_t u = open.size();
    std::vector<double> value(1U << u);
    for (std::uint32_t m = 0; m < (1U << u); ++m) value[m] = pp.Eval(FromMask(m, open));
    for (std::uint32_t m = 0; m < (1U << u); ++m) {
      const double scale = std::max(1.0, std::fabs(value[m]));
      c->Check(value[m] >= -1e-12 * scale, [&]() {
        return "seed " + std::to_string(seed) + ": pi+ negative";
      });
      for (std::size_t a = 0; a < u; ++a) {
        if (m & (1U << a)) continue;
        const std::uint32_t ma = m | (1U << a);
        c->Check(value[ma] >= value[m] - 1e-12 * scale, [&]() {
          return "seed " + std::to_string(seed) + ": pi+ not monotone";
        });
        for (std::size_t b = a + 1; b < u; ++b) {
          if (m & (1U << b)) continue;
          const std::uint32_t mb = m | (1U << b);
          const double second = value[ma | mb] - value[ma] - value[mb] + value[m];
          c->Check(second <= 1e-9, [&]() {
            return "seed " + std::to_string(seed) + ": pi+ not submodular";
          });
        }
      }
      const Subset s = FromMask(m, open);
      if (gc.p1_holds && inst.index().IsIndependent(s)) {
        const double pi = inst.SubsetProfit(s);
        c->Check(std::fabs(value[m] - pi) <= 1e-12 * std::max(1.0, std::fabs(pi)),
                 [&]() {
                   return "seed " + std::to_string(seed) +
                          ": pi+ differs from pi on a feasible filtered set";
                 });
      }
    }
  }
}

void OnlineSuite(const VerifyOptions& o, Checker* c) {
  const int trials = Scaled(o.level, 150, 1000);
  const std::int64_t guard_before = GlobalGuardViolations();
  const char* kinds[] = {"free", "uniform", "partition"};
  for (int k = 0; k < trials; ++k) {
    const int d = 1 + k % 3;
    const std::uint64_t seed = MixSeed(o.seed, 600 + k);
    const Instance inst =
        Generate(BenchmarkGenerator(d, kinds[(k / 3) % 3]), MixSeed(seed, 1));
    Rng rng(MixSeed(seed, 2));
    const Subset order = rng.Permutation(inst.size());
    OnlineConfig config;
    const GoodClassifier gc = FindGoodClassifier(inst);
    config.lambda_star = gc.classifier.lambda;
    const OnlineRun run = RunAlgorithm1(inst, order, config, MixSeed(seed, 3));
    c->Check(inst.index().IsIndependent(run.selected) && run.profit >= 0.0, [&]() {
      return "seed " + std::to_string(seed) + ": infeasible or negative run";
    });
    Subset expected;
    for (std::size_t j = run.sample_size; j < order.size(); ++j) {
      const Item& e = inst.item(order[j]);
      if (CompareToThreshold(e.value, ThresholdOf(run.mu.lambda, e.size)) ==
          Side::kAbove) {
        expected.push_back(order[j]);
      }
    }
    c->Check(expected == run.filtered, [&]() {
      return "seed " + std::to_string(seed) + ": filter mismatch";
    });
    c->Check(run.diagnostics.guard_violations == 0, [&]() {
      return "seed " + std::to_string(seed) + ": guard violation";
    });
    if (run.diagnostics.mu_ge_lambda_star.value_or(false) && gc.p1_holds) {
      for (std::size_t p : run.filtered) {
        const Item& e = inst.item(p);
        c->Check(CompareToThreshold(e.value, ThresholdOf(gc.classifier.lambda,
                                                         e.size)) != Side::kBelow,
                 [&]() {
                   return "seed " + std::to_string(seed) +
                          ": filtered item below lambda*";
                 });
      }
      const Vec grad = inst.cost().Grad(inst.Occupancy(run.selected));
      for (int i = 0; i < d; ++i) {
        c->Check(grad[i] <= gc.classifier.lambda[i] + 1e-7, [&]() {
          return "seed " + std::to_string(seed) + ": gradient above lambda*";
        });
      }
    }
  }
  c->Check(GlobalGuardViolations() == guard_before, []() {
    return std::string("guard violations recorded");
  });
}

void SecretarySuite(const VerifyOptions& o, Checker* c) {
  Subset perm = {0, 1, 2};
  int success = 0;
  int total = 0;
  do {
    Vec profits(3);
    for (int k = 0; k < 3; ++k) profits[k] = 1.0 + perm[k];
    const auto pick = SingleSecretary(profits, 1);
    success += pick && profits[*pick] == 3.0 ? 1 : 0;
    ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  c->Check(total == 6 && success == 3, [&]() {
    return "exhaustive secretary succeeded " + std::to_string(success) + "/6";
  });
  const int orders = Scaled(o.level, 2000, 10000);
  Rng rng(MixSeed(o.seed, 7));
  int hits = 0;
  for (int t = 0; t < orders; ++t) {
    const Subset order = rng.Permutation(50);
    Vec profits(50);
    for (int k = 0; k < 50; ++k) profits[k] = 1.0 + order[k];
    const auto pick = SingleSecretary(profits);
    hits += pick && profits[*pick] == 50.0 ? 1 : 0;
  }
  const double freq = static_cast<double>(hits) / orders;
  c->Check(freq >= 0.33, [&]() {
    return "secretary success frequency " + std::to_string(freq);
  });
}

void ReductionSuite(const VerifyOptions& o, Checker* c) {
  Rng rng(MixSeed(o.seed, 8));
  std::vector<CostModel> models = {
      CostModel::SupermodularQuadratic(2, {1.0, 0.5, 0.5, 1.0}),
      RandomQuadratic(rng, 2), RandomQuadratic(rng, 3)};
  const int points = Scaled(o.level, 200, 500);
  for (const CostModel& g : models) {
    const CostModel bar = g.SeparableSurrogate();
    for (int t = 0; t < points; ++t) {
      const Vec y = RandomVec(rng, g.dim(), 0.0, 2.0);
      double sep = 0.0;
      for (int i = 0; i < g.dim(); ++i) sep += g.Marginal(i, y[i]);
      const double gy = g.Eval(y);
      c->Check(sep <= gy + 1e-9 && gy <= bar.Eval(y) + 1e-9, [&]() {
        return "sandwich fails at y=" + Describe(y);
      });
    }
  }
  for (int d = 1; d <= 3; ++d) {
    for (double beta : {0.5, 1.0, 4.0}) {
      const double p = ReductionProbability(beta, d);
      c->Check(p == beta / (beta + 2.0 * std::numbers::e * d) && p > 0.0 && p < 1.0,
               []() { return std::string("branch probability formula"); });
    }
  }
  const int trials = Scaled(o.level, 100, 500);
  double orig = 0.0;
  double surrogate = 0.0;
  for (int k = 0; k < trials; ++k) {
    const std::uint64_t seed = MixSeed(o.seed, 800 + k);
    GeneratorConfig cfg;
    cfg.n = 20;
    cfg.d = 2 + k % 2;
    cfg.cost_family = "quadratic";
    cfg.coeff_lo = 0.05;
    cfg.coeff_hi = 0.2;
    cfg.offdiag = 0.05;
    cfg.matroid_kind = k % 2 ? "uniform" : "partition";
    cfg.rank = 5;
    cfg.num_blocks = 3;
    cfg.block_cap = 2;
    const Instance inst = Generate(cfg, seed);
    const OnlineRun run =
        ReduceSupermodularToSeparable(inst, 1.0, OnlineConfig{}, MixSeed(seed, 1));
    c->Check(inst.index().IsIndependent(run.selected) && run.profit >= 0.0, [&]() {
      return "seed " + std::to_string(seed) + ": infeasible or negative run";
    });
    c->Check(run.profit >= run.diagnostics.surrogate_profit.value_or(0.0) - 1e-12,
             [&]() {
               return "seed " + std::to_string(seed) +
                      ": original profit below surrogate profit";
             });
    orig += run.profit;
    surrogate += run.diagnostics.surrogate_profit.value_or(0.0);
  }
  c->Check(orig >= surrogate - 1e-9, []() {
    return std::string("mean original profit below mean surrogate profit");
  });
}

}  // namespace

VerifyLevel ParseVerifyLevel(const std::string& name) {
  if (name == "quick") return VerifyLevel::kQuick;
  if (name == "full") return VerifyLevel::kFull;
  Fail(ErrorCode::kInvalidArgument, "level must be 'quick' or 'full'");
}

const std::vector<std::string>& AllSuites() {
  static const std::vector<std::string> suites = {
      "duality", "supermodularity", "negative_control", "matroid",
      "offline_unconstrained", "offline_constrained", "pi_plus", "online",
      "secretary", "reduction"};
  return suites;
}

std::vector<SuiteReport> RunVerify(const VerifyOptions& options) {
  for (const std::string& s : options.suites) {
    if (std::find(AllSuites().begin(), AllSuites().end(), s) == AllSuites().end()) {
      Fail(ErrorCode::kInvalidArgument, "unknown suite '" + s + "'");
    }
  }
  std::vector<SuiteReport> reports;
  for (const std::string& name : options.suites) {
    SuiteReport report;
    report.name = name;
    Checker checker(&report);
    const auto start = std::chrono::steady_clock::now();
    try {
      if (name == "duality") DualitySuite(options, &checker);
      if (name == "supermodularity") SupermodularitySuite(options, &checker);
      if (name == "negative_control") NegativeControlSuite(options, &checker);
      if (name == "matroid") MatroidSuite(options, &checker);
      if (name == "offline_unconstrained") OfflineSuite(options, false, &checker);
      if (name == "offline_constrained") OfflineSuite(options, true, &checker);
      if (name == "pi_plus") PiPlusSuite(options, &checker);
      if (name == "online") OnlineSuite(options, &checker);
      if (name == "secretary") SecretarySuite(options, &checker);
      if (name == "reduction") ReductionSuite(options, &checker);
    } catch (const Error& e) {
      checker.Check(false, [&]() {
        return "error " + std::string(ErrorCodeName(e.code())) + ": " + e.what();
      });
    }
    report.seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    spdlog::info("suite {} {} ({} checks, {:.2f}s)", name,
                 report.passed ? "passed" : "FAILED", report.checks,
                 report.seconds);
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace convsec
