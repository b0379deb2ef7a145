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

// Convex, monotone, supermodular production costs g: R_+^d -> R_+ and their
// duality machinery. All conjugates are taken over the non-negative orthant:
//
//   g*(lambda) = sup_{z >= 0} <lambda, z> - g(z),   lambda >= 0.
//
// The marginal g_i(t) = g(t e_i) is the restriction of g to axis i, and its
// one-dimensional conjugate (g_i)* coincides with (g*)_i for monotone g.

#ifndef CONVSEC_COST_H_
#define CONVSEC_COST_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace convsec {

using Vec = std::vector<double>;

enum class CostKind { kSeparablePower, kSupermodularQuadratic, kSeparableExp,
                      kCustom };

std::string CostKindName(CostKind kind);

// g(z) = sum_i coeff[i] * z_i^exponent[i], coeff > 0, exponent > 1.
struct PowerParams {
  Vec coeff;
  Vec exponent;
};

// g(z) = z^T Q z with Q symmetric positive definite and entrywise >= 0.
// Stored row-major.
struct QuadraticParams {
  int dim = 0;
  Vec q;
  double at(int i, int j) const { return q[i * dim + j]; }
};

// g(z) = sum_i scale[i] * (exp(rate[i] * z_i) - 1), scale, rate > 0.
struct ExpParams {
  Vec scale;
  Vec rate;
};

// Arbitrary user-supplied model. No validation beyond dimension checks; the
// invariant checkers below exist to catch broken ones.
struct CustomParams {
  std::string name;
  bool separable = false;
  std::function<double(const Vec&)> eval;
  std::function<Vec(const Vec&)> grad;
};

using CostParams =
    std::variant<PowerParams, QuadraticParams, ExpParams, CustomParams>;

namespace detail {
class CostImpl;
}  // namespace detail

// Immutable value handle. Copies share the underlying model.
class CostModel {
 public:
  static CostModel SeparablePower(Vec coeff, Vec exponent);
  static CostModel SupermodularQuadratic(int dim, Vec q_row_major);
  static CostModel SeparableExp(Vec scale, Vec rate);
  static CostModel Custom(int dim, CustomParams params);

  CostKind kind() const;
  int dim() const;
  bool separable() const;
  const CostParams& params() const;

  double Eval(const Vec& z) const;
  Vec Grad(const Vec& z) const;
  double Conjugate(const Vec& lambda) const;

  double Marginal(int i, double t) const;
  // g_i'(t).
  double MarginalSlope(int i, double t) const;
  // (g_i)*(lam).
  double MarginalConjugate(int i, double lam) const;
  // Smallest lam >= g_i'(0) with (g_i)*(lam) = tau.
  double MarginalConjugateInverse(int i, double tau) const;
  // (g_1'(0), ..., g_d'(0)); the corner of the box where all dual marginals
  // vanish.
  Vec BoxCorner() const;

  // The separable upper bound y -> (1/d) sum_i g_i(d y_i).
  CostModel SeparableSurrogate() const;

 private:
  explicit CostModel(std::shared_ptr<const detail::CostImpl> impl)
      : impl_(std::move(impl)) {}
  std::shared_ptr<const detail::CostImpl> impl_;
};

// Coordinate box [lo_i, hi_i] used for random sampling.
struct Box {
  Vec lo;
  Vec hi;
};

struct SupermodularityReport {
  bool passed = true;
  int checks = 0;
  double worst = 0.0;
  // Witness of the worst violation: base point, coordinates and steps.
  Vec x;
  int i = -1;
  int j = -1;
  double a = 0.0;
  double b = 0.0;
};

// Samples points and distinct coordinate pairs and tests the discrete
// cross-difference g(x+a e_i+b e_j) - g(x+a e_i) - g(x+b e_j) + g(x) >= -1e-9.
SupermodularityReport CheckSupermodular(const CostModel& model, int samples,
                                        const Box& box, std::uint64_t seed);

// Separable cost whose marginals have slopes capped at gamma:
//   g+_i(t) = sup_{u <= gamma_i} [u t - g_i*(u)].
class TruncatedCost {
 public:
  // gamma entries may be +infinity.
  TruncatedCost(CostModel base, Vec gamma);

  const CostModel& base() const { return base_; }
  const Vec& gamma() const { return gamma_; }
  // Largest t with g_i'(t) <= gamma_i (infinite when gamma_i is).
  double Knee(int i) const { return knee_[i]; }

  double Marginal(int i, double t) const;
  double MarginalSlope(int i, double t) const;
  double Eval(const Vec& z) const;

 private:
  CostModel base_;
  Vec gamma_;
  Vec knee_;
  Vec knee_value_;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace convsec

#endif  // CONVSEC_COST_H_
