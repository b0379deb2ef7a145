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

#include "convsec/cost.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "convsec/error.h"
#include "convsec/rng.h"
#include "numeric.h"

namespace convsec {

std::string CostKindName(CostKind kind) {
  switch (kind) {
    case CostKind::kSeparablePower:
      return "separable_power";
    case CostKind::kSupermodularQuadratic:
      return "supermodular_quadratic";
    case CostKind::kSeparableExp:
      return "separable_exp";
    case CostKind::kCustom:
      return "custom";
  }
  return "unknown";
}

namespace detail {

class CostImpl {
 public:
  CostImpl(CostKind kind, int dim, bool separable, CostParams params)
      : kind_(kind), dim_(dim), separable_(separable),
        params_(std::move(params)) {}
  virtual ~CostImpl() = default;

  CostKind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool separable() const { return separable_; }
  const CostParams& params() const { return params_; }

  virtual double Eval(const Vec& z) const = 0;
  virtual Vec Grad(const Vec& z) const = 0;
  virtual double Conjugate(const Vec& lambda) const = 0;
  virtual double Marginal(int i, double t) const = 0;
  virtual double MarginalSlope(int i, double t) const = 0;
  virtual double MarginalConjugate(int i, double lam) const = 0;
  // Closed form where available; the numeric fallback lives in CostModel.
  virtual bool MarginalConjugateInverseClosed(int /*i*/, double /*tau*/,
                                              double* /*lam*/) const {
    return false;
  }
  virtual double Corner(int i) const = 0;

 private:
  CostKind kind_;
  int dim_;
  bool separable_;
  CostParams params_;
};

namespace {

using internal::HalfLineConjugate;

class PowerCost final : public CostImpl {
 public:
  explicit PowerCost(PowerParams p)
      : CostImpl(CostKind::kSeparablePower, static_cast<int>(p.coeff.size()),
                 true, p),
        c_(std::move(p.coeff)), p_(std::move(p.exponent)) {}

  double Eval(const Vec& z) const override {
    double total = 0.0;
    for (int i = 0; i < dim(); ++i) total += Marginal(i, z[i]);
    return total;
  }
  Vec Grad(const Vec& z) const override {
    Vec g(dim());
    for (int i = 0; i < dim(); ++i) g[i] = MarginalSlope(i, z[i]);
    return g;
  }
  double Conjugate(const Vec& lambda) const override {
    double total = 0.0;
    for (int i = 0; i < dim(); ++i) total += MarginalConjugate(i, lambda[i]);
    return total;
  }
  double Marginal(int i, double t) const override {
    return c_[i] * std::pow(t, p_[i]);
  }
  double MarginalSlope(int i, double t) const override {
    return c_[i] * p_[i] * std::pow(t, p_[i] - 1.0);
  }
  double MarginalConjugate(int i, double lam) const override {
    if (lam <= 0.0) return 0.0;
    const double t = std::pow(lam / (c_[i] * p_[i]), 1.0 / (p_[i] - 1.0));
    return (p_[i] - 1.0) * c_[i] * std::pow(t, p_[i]);
  }
  bool MarginalConjugateInverseClosed(int i, double tau,
                                      double* lam) const override {
    const double t = std::pow(tau / ((p_[i] - 1.0) * c_[i]), 1.0 / p_[i]);
    *lam = MarginalSlope(i, t);
    return true;
  }
  double Corner(int /*i*/) const override { return 0.0; }

 private:
  Vec c_;
  Vec p_;
};

class QuadraticCost final : public CostImpl {
 public:
  QuadraticCost(QuadraticParams p, bool separable)
      : CostImpl(CostKind::kSupermodularQuadratic, p.dim, separable, p),
        q_(p.dim, p.dim) {
    for (int i = 0; i < p.dim; ++i) {
      for (int j = 0; j < p.dim; ++j) q_(i, j) = p.at(i, j);
    }
    unconstrained_ = q_.llt();
  }

  double Eval(const Vec& z) const override {
    const Eigen::Map<const Eigen::VectorXd> v(z.data(), dim());
    return std::max(0.0, v.dot(q_ * v));
  }
  Vec Grad(const Vec& z) const override {
    const Eigen::Map<const Eigen::VectorXd> v(z.data(), dim());
    const Eigen::VectorXd g = 2.0 * (q_ * v);
    return Vec(g.data(), g.data() + dim());
  }
  double Conjugate(const Vec& lambda) const override;
  double Marginal(int i, double t) const override { return q_(i, i) * t * t; }
  double MarginalSlope(int i, double t) const override {
    return 2.0 * q_(i, i) * t;
  }
  double MarginalConjugate(int i, double lam) const override {
    return lam * lam / (4.0 * q_(i, i));
  }
  bool MarginalConjugateInverseClosed(int i, double tau,
                                      double* lam) const override {
    *lam = 2.0 * std::sqrt(q_(i, i) * tau);
    return true;
  }
  double Corner(int /*i*/) const override { return 0.0; }

 private:
  Eigen::MatrixXd q_;
  Eigen::LLT<Eigen::MatrixXd> unconstrained_;
};

// max_{z >= 0} lambda^T z - z^T Q z. The unconstrained maximizer Q^{-1}
// lambda / 2 is used when it is non-negative; otherwise a primal active-set
// method in the style of Lawson-Hanson finds the orthant-constrained one.
double QuadraticCost::Conjugate(const Vec& lambda) const {
  const int d = dim();
  const Eigen::Map<const Eigen::VectorXd> lam(lambda.data(), d);
  Eigen::VectorXd z = 0.5 * unconstrained_.solve(lam);
  if ((z.array() >= 0.0).all()) {
    return std::max(0.0, 0.5 * lam.dot(z));
  }
  // Minimize 0.5 z^T H z - lam^T z over z >= 0 with H = 2Q.
  const Eigen::MatrixXd h = 2.0 * q_;
  z.setZero();
  std::vector<bool> free(d, false);
  for (int outer = 0; outer < 8 * d + 8; ++outer) {
    const Eigen::VectorXd w = lam - h * z;
    int enter = -1;
    double best = 1e-14 * (1.0 + lam.cwiseAbs().maxCoeff());
    for (int j = 0; j < d; ++j) {
      if (!free[j] && w[j] > best) {
        best = w[j];
        enter = j;
      }
    }
    if (enter < 0) break;
    free[enter] = true;
    for (int inner = 0; inner <= d; ++inner) {
      std::vector<int> idx;
      for (int j = 0; j < d; ++j) {
        if (free[j]) idx.push_back(j);
      }
      const int k = static_cast<int>(idx.size());
      Eigen::MatrixXd hff(k, k);
      Eigen::VectorXd lf(k);
      for (int a = 0; a < k; ++a) {
        lf[a] = lam[idx[a]];
        for (int b = 0; b < k; ++b) hff(a, b) = h(idx[a], idx[b]);
      }
      const Eigen::VectorXd sf = hff.llt().solve(lf);
      bool all_positive = true;
      for (int a = 0; a < k; ++a) all_positive &= sf[a] > 0.0;
      if (all_positive) {
        z.setZero();
        for (int a = 0; a < k; ++a) z[idx[a]] = sf[a];
        break;
      }
      double alpha = 1.0;
      int blocking = -1;
      for (int a = 0; a < k; ++a) {
        if (sf[a] <= 0.0) {
          const double zj = z[idx[a]];
          const double step = zj > sf[a] ? zj / (zj - sf[a]) : 0.0;
          if (step < alpha || blocking < 0) {
            alpha = step;
            blocking = idx[a];
          }
        }
      }
      for (int a = 0; a < k; ++a) {
        z[idx[a]] = std::max(0.0, z[idx[a]] + alpha * (sf[a] - z[idx[a]]));
        if (z[idx[a]] == 0.0) free[idx[a]] = false;
      }
      z[blocking] = 0.0;
      free[blocking] = false;
    }
  }
  return std::max(0.0, lam.dot(z) - z.dot(q_ * z));
}

class ExpCost final : public CostImpl {
 public:
  explicit ExpCost(ExpParams p)
      : CostImpl(CostKind::kSeparableExp, static_cast<int>(p.scale.size()),
                 true, p),
        a_(std::move(p.scale)), b_(std::move(p.rate)) {}

  double Eval(const Vec& z) const override {
    double total = 0.0;
    for (int i = 0; i < dim(); ++i) total += Marginal(i, z[i]);
    return total;
  }
  Vec Grad(const Vec& z) const override {
    Vec g(dim());
    for (int i = 0; i < dim(); ++i) g[i] = MarginalSlope(i, z[i]);
    return g;
  }
  double Conjugate(const Vec& lambda) const override {
    double total = 0.0;
    for (int i = 0; i < dim(); ++i) total += MarginalConjugate(i, lambda[i]);
    return total;
  }
  double Marginal(int i, double t) const override {
    return a_[i] * std::expm1(b_[i] * t);
  }
  double MarginalSlope(int i, double t) const override {
    return a_[i] * b_[i] * std::exp(b_[i] * t);
  }
  double MarginalConjugate(int i, double lam) const override {
    const double corner = a_[i] * b_[i];
    if (lam <= corner) return 0.0;
    const double r = lam / corner;
    // (lam/b) ln r - lam/b + a, written to stay accurate near r = 1.
    return std::max(0.0, a_[i] * (r * std::log(r) - r + 1.0));
  }
  double Corner(int i) const override { return a_[i] * b_[i]; }

 private:
  Vec a_;
  Vec b_;
};

class CustomCost final : public CostImpl {
 public:
  CustomCost(int dim, CustomParams p)
      : CostImpl(CostKind::kCustom, dim, p.separable, p),
        eval_(p.eval), grad_(p.grad) {}

  double Eval(const Vec& z) const override { return eval_(z); }
  Vec Grad(const Vec& z) const override {
    Vec g = grad_(z);
    if (static_cast<int>(g.size()) != dim()) {
      Fail(ErrorCode::kInvalidCost, "custom gradient has wrong dimension");
    }
    return g;
  }
  double Conjugate(const Vec& lambda) const override;
  double Marginal(int i, double t) const override {
    Vec z(dim(), 0.0);
    z[i] = t;
    return eval_(z);
  }
  double MarginalSlope(int i, double t) const override {
    Vec z(dim(), 0.0);
    z[i] = t;
    return Grad(z)[i];
  }
  double MarginalConjugate(int i, double lam) const override {
    double value = 0.0;
    double arg = 0.0;
    if (!HalfLineConjugate([&](double t) { return Marginal(i, t); },
                           [&](double t) { return MarginalSlope(i, t); }, lam,
                           &value, &arg)) {
      Fail(ErrorCode::kInvalidCost,
           "marginal conjugate is unbounded on coordinate " +
               std::to_string(i));
    }
    return value;
  }
  double Corner(int i) const override { return MarginalSlope(i, 0.0); }

 private:
  std::function<double(const Vec&)> eval_;
  std::function<Vec(const Vec&)> grad_;
};

// Cyclic coordinate ascent on <lambda, z> - g(z) over z >= 0. Each coordinate
// step solves d/dz_i g(z) = lambda_i exactly by bisection, which is valid
// because the partial derivative is non-decreasing along the axis.
double CustomCost::Conjugate(const Vec& lambda) const {
  const int d = dim();
  if (separable()) {
    double total = 0.0;
    for (int i = 0; i < d; ++i) total += MarginalConjugate(i, lambda[i]);
    return total;
  }
  Vec z(d, 0.0);
  const double scale =
      1.0 + *std::max_element(lambda.begin(), lambda.end());
  for (int sweep = 0; sweep < 10000; ++sweep) {
    for (int i = 0; i < d; ++i) {
      auto partial = [&](double t) {
        Vec y = z;
        y[i] = t;
        return Grad(y)[i];
      };
      if (partial(0.0) >= lambda[i]) {
        z[i] = 0.0;
        continue;
      }
      double hi = 0.0;
      if (!internal::ExpandBracket(
              [&](double t) { return partial(t) >= lambda[i]; },
              std::max(1.0, z[i]), &hi)) {
        Fail(ErrorCode::kInvalidCost, "conjugate is unbounded");
      }
      double lo = 0.0;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (partial(mid) >= lambda[i]) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      z[i] = 0.5 * (lo + hi);
    }
    const Vec g = Grad(z);
    double stationarity = 0.0;
    for (int i = 0; i < d; ++i) {
      const double r = lambda[i] - g[i];
      stationarity = std::max(stationarity,
                              z[i] > 0.0 ? std::fabs(r) : std::max(0.0, r));
    }
    if (stationarity <= internal::kStationarityTolerance * scale) break;
  }
  double value = -eval_(z);
  for (int i = 0; i < d; ++i) value += lambda[i] * z[i];
  return std::max(0.0, value);
}

bool AllFinite(const Vec& v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

}  // namespace
}  // namespace detail

namespace {

void CheckPoint(int dim, const Vec& z, const char* what) {
  if (static_cast<int>(z.size()) != dim) {
    Fail(ErrorCode::kDimensionMismatch,
         std::string(what) + " has dimension " + std::to_string(z.size()) +
             ", expected " + std::to_string(dim));
  }
  for (double x : z) {
    if (!(x >= 0.0)) {
      Fail(ErrorCode::kInvalidArgument,
           std::string(what) + " must be non-negative");
    }
  }
}

void CheckCoordinate(int dim, int i) {
  if (i < 0 || i >= dim) {
    Fail(ErrorCode::kInvalidArgument,
         "coordinate " + std::to_string(i) + " out of range");
  }
}

void CheckScalar(double t, const char* what) {
  if (!(t >= 0.0)) {
    Fail(ErrorCode::kInvalidArgument, std::string(what) + " must be >= 0");
  }
}

}  // namespace

CostModel CostModel::SeparablePower(Vec coeff, Vec exponent) {
  if (coeff.empty() || coeff.size() != exponent.size()) {
    Fail(ErrorCode::kInvalidCost, "power cost needs matching non-empty params");
  }
  for (std::size_t i = 0; i < coeff.size(); ++i) {
    if (!(coeff[i] > 0.0) || !(exponent[i] > 1.0) ||
        !std::isfinite(coeff[i]) || !std::isfinite(exponent[i])) {
      Fail(ErrorCode::kInvalidCost,
           "power cost needs coeff > 0 and exponent > 1");
    }
  }
  return CostModel(std::make_shared<detail::PowerCost>(
      PowerParams{std::move(coeff), std::move(exponent)}));
}

CostModel CostModel::SupermodularQuadratic(int dim, Vec q) {
  if (dim < 1 || static_cast<int>(q.size()) != dim * dim) {
    Fail(ErrorCode::kInvalidCost, "quadratic cost needs a dim x dim matrix");
  }
  if (!detail::AllFinite(q)) {
    Fail(ErrorCode::kInvalidCost, "quadratic cost has non-finite entries");
  }
  bool separable = true;
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const double qij = q[i * dim + j];
      const double qji = q[j * dim + i];
      if (qij < 0.0) {
        Fail(ErrorCode::kInvalidCost,
             "quadratic cost entries must be non-negative");
      }
      if (std::fabs(qij - qji) > 1e-12 * std::max(1.0, std::fabs(qij))) {
        Fail(ErrorCode::kInvalidCost, "quadratic cost matrix must be symmetric");
      }
      if (i != j && qij != 0.0) separable = false;
      m(i, j) = 0.5 * (qij + qji);
    }
    if (!(q[i * dim + i] > 0.0)) {
      Fail(ErrorCode::kInvalidCost,
           "quadratic cost diagonal must be strictly positive");
    }
  }
  if (m.llt().info() != Eigen::Success) {
    Fail(ErrorCode::kInvalidCost,
         "quadratic cost matrix must be positive definite");
  }
  Vec sym(m.data(), m.data() + dim * dim);
  return CostModel(std::make_shared<detail::QuadraticCost>(
      QuadraticParams{dim, std::move(sym)}, separable));
}

CostModel CostModel::SeparableExp(Vec scale, Vec rate) {
  if (scale.empty() || scale.size() != rate.size()) {
    Fail(ErrorCode::kInvalidCost, "exp cost needs matching non-empty params");
  }
  for (std::size_t i = 0; i < scale.size(); ++i) {
    if (!(scale[i] > 0.0) || !(rate[i] > 0.0) || !std::isfinite(scale[i]) ||
        !std::isfinite(rate[i])) {
      Fail(ErrorCode::kInvalidCost, "exp cost needs scale > 0 and rate > 0");
    }
  }
  return CostModel(std::make_shared<detail::ExpCost>(
      ExpParams{std::move(scale), std::move(rate)}));
}

CostModel CostModel::Custom(int dim, CustomParams params) {
  if (dim < 1 || !params.eval || !params.grad) {
    Fail(ErrorCode::kInvalidCost, "custom cost needs dim >= 1, eval and grad");
  }
  return CostModel(std::make_shared<detail::CustomCost>(dim, std::move(params)));
}

CostKind CostModel::kind() const { return impl_->kind(); }
int CostModel::dim() const { return impl_->dim(); }
bool CostModel::separable() const { return impl_->separable(); }
const CostParams& CostModel::params() const { return impl_->params(); }

double CostModel::Eval(const Vec& z) const {
  CheckPoint(dim(), z, "z");
  return impl_->Eval(z);
}

Vec CostModel::Grad(const Vec& z) const {
  CheckPoint(dim(), z, "z");
  return impl_->Grad(z);
}

double CostModel::Conjugate(const Vec& lambda) const {
  CheckPoint(dim(), lambda, "lambda");
  return impl_->Conjugate(lambda);
}

double CostModel::Marginal(int i, double t) const {
  CheckCoordinate(dim(), i);
  CheckScalar(t, "t");
  return impl_->Marginal(i, t);
}

double CostModel::MarginalSlope(int i, double t) const {
  CheckCoordinate(dim(), i);
  CheckScalar(t, "t");
  return impl_->MarginalSlope(i, t);
}

double CostModel::MarginalConjugate(int i, double lam) const {
  CheckCoordinate(dim(), i);
  CheckScalar(lam, "lam");
  return impl_->MarginalConjugate(i, lam);
}

double CostModel::MarginalConjugateInverse(int i, double tau) const {
  CheckCoordinate(dim(), i);
  CheckScalar(tau, "tau");
  if (!std::isfinite(tau)) {
    Fail(ErrorCode::kCurveRangeExceeded, "tau must be finite");
  }
  const double corner = impl_->Corner(i);
  if (tau == 0.0) return corner;
  double lam = 0.0;
  if (impl_->MarginalConjugateInverseClosed(i, tau, &lam)) {
    return std::max(lam, corner);
  }
  auto reached = [&](double x) { return impl_->MarginalConjugate(i, x) >= tau; };
  double hi = 0.0;
  if (!internal::ExpandBracket(reached, std::max(1.0, 2.0 * corner), &hi)) {
    Fail(ErrorCode::kCurveRangeExceeded,
         "no finite curve point for tau " + std::to_string(tau));
  }
  double lo = corner;
  for (int it = 0; it < 400; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi || hi - lo <= 1e-12 * std::max(1.0, hi)) break;
    if (reached(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Vec CostModel::BoxCorner() const {
  Vec corner(dim());
  for (int i = 0; i < dim(); ++i) corner[i] = impl_->Corner(i);
  return corner;
}

CostModel CostModel::SeparableSurrogate() const {
  const int d = dim();
  const double dd = static_cast<double>(d);
  switch (kind()) {
    case CostKind::kSeparablePower: {
      PowerParams p = std::get<PowerParams>(params());
      for (int i = 0; i < d; ++i) p.coeff[i] *= std::pow(dd, p.exponent[i] - 1);
      return SeparablePower(std::move(p.coeff), std::move(p.exponent));
    }
    case CostKind::kSupermodularQuadratic: {
      const auto& q = std::get<QuadraticParams>(params());
      Vec coeff(d);
      for (int i = 0; i < d; ++i) coeff[i] = dd * q.at(i, i);
      return SeparablePower(std::move(coeff), Vec(d, 2.0));
    }
    case CostKind::kSeparableExp: {
      ExpParams p = std::get<ExpParams>(params());
      for (int i = 0; i < d; ++i) {
        p.scale[i] /= dd;
        p.rate[i] *= dd;
      }
      return SeparableExp(std::move(p.scale), std::move(p.rate));
    }
    case CostKind::kCustom:
      break;
  }
  const CostModel base = *this;
  CustomParams p;
  p.name = std::get<CustomParams>(params()).name + "_surrogate";
  p.separable = true;
  p.eval = [base, d, dd](const Vec& y) {
    double total = 0.0;
    for (int i = 0; i < d; ++i) total += base.Marginal(i, dd * y[i]) / dd;
    return total;
  };
  p.grad = [base, d, dd](const Vec& y) {
    Vec g(d);
    for (int i = 0; i < d; ++i) g[i] = base.MarginalSlope(i, dd * y[i]);
    return g;
  };
  return Custom(d, std::move(p));
}

SupermodularityReport CheckSupermodular(const CostModel& model, int samples,
                                        const Box& box, std::uint64_t seed) {
  const int d = model.dim();
  if (samples < 1) Fail(ErrorCode::kInvalidArgument, "samples must be >= 1");
  Vec lo = box.lo.empty() ? Vec(d, 0.0) : box.lo;
  Vec hi = box.hi.empty() ? Vec(d, 1.0) : box.hi;
  if (static_cast<int>(lo.size()) != d || static_cast<int>(hi.size()) != d) {
    Fail(ErrorCode::kDimensionMismatch, "box dimension mismatch");
  }
  Rng rng(seed);
  SupermodularityReport report;
  for (int s = 0; s < samples; ++s) {
    Vec x(d);
    for (int k = 0; k < d; ++k) x[k] = rng.Uniform(lo[k], hi[k]);
    const int i = static_cast<int>(rng.Below(d));
    int j = i;
    if (d >= 2) {
      j = static_cast<int>(rng.Below(d - 1));
      if (j >= i) ++j;
    }
    const double wi = hi[i] > lo[i] ? hi[i] - lo[i] : 1.0;
    const double wj = hi[j] > lo[j] ? hi[j] - lo[j] : 1.0;
    const double a = rng.Uniform(0.0, wi);
    const double b = rng.Uniform(0.0, wj);
    Vec xa = x, xb = x, xab = x;
    xa[i] += a;
    xb[j] += b;
    xab[i] += a;
    xab[j] += b;
    const double cross =
        model.Eval(xab) - model.Eval(xa) - model.Eval(xb) + model.Eval(x);
    ++report.checks;
    if (cross < report.worst) {
      report.worst = cross;
      if (cross < -1e-9) {
        report.passed = false;
        report.x = x;
        report.i = i;
        report.j = j;
        report.a = a;
        report.b = b;
      }
    }
  }
  return report;
}

TruncatedCost::TruncatedCost(CostModel base, Vec gamma)
    : base_(std::move(base)), gamma_(std::move(gamma)) {
  if (!base_.separable()) {
    Fail(ErrorCode::kRequiresSeparable,
         "gradient truncation needs a separable cost");
  }
  const int d = base_.dim();
  if (static_cast<int>(gamma_.size()) != d) {
    Fail(ErrorCode::kDimensionMismatch, "gamma has wrong dimension");
  }
  knee_.assign(d, kInfinity);
  knee_value_.assign(d, kInfinity);
  for (int i = 0; i < d; ++i) {
    const double g = gamma_[i];
    if (!(g >= 0.0)) Fail(ErrorCode::kInvalidArgument, "gamma must be >= 0");
    if (std::isinf(g)) continue;
    double t = 0.0;
    if (base_.MarginalSlope(i, 0.0) > g) {
      t = 0.0;
    } else {
      const auto& impl_params = base_.params();
      bool closed = false;
      if (std::holds_alternative<PowerParams>(impl_params)) {
        const auto& p = std::get<PowerParams>(impl_params);
        t = std::pow(g / (p.coeff[i] * p.exponent[i]),
                     1.0 / (p.exponent[i] - 1.0));
        closed = true;
      } else if (std::holds_alternative<QuadraticParams>(impl_params)) {
        t = g / (2.0 * std::get<QuadraticParams>(impl_params).at(i, i));
        closed = true;
      } else if (std::holds_alternative<ExpParams>(impl_params)) {
        const auto& p = std::get<ExpParams>(impl_params);
        t = std::log(g / (p.scale[i] * p.rate[i])) / p.rate[i];
        closed = true;
      }
      if (!closed) {
        auto above = [&](double x) { return base_.MarginalSlope(i, x) > g; };
        double hi = 0.0;
        if (!internal::ExpandBracket(above, 1.0, &hi)) continue;
        double lo = 0.0;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
          const double mid = lo + 0.5 * (hi - lo);
          if (above(mid)) {
            hi = mid;
          } else {
            lo = mid;
          }
        }
        t = lo;
      }
      t = std::max(0.0, t);
    }
    knee_[i] = t;
    knee_value_[i] = base_.Marginal(i, t);
  }
}

double TruncatedCost::Marginal(int i, double t) const {
  CheckCoordinate(base_.dim(), i);
  CheckScalar(t, "t");
  if (t <= knee_[i]) return base_.Marginal(i, t);
  return knee_value_[i] + gamma_[i] * (t - knee_[i]);
}

double TruncatedCost::MarginalSlope(int i, double t) const {
  CheckCoordinate(base_.dim(), i);
  CheckScalar(t, "t");
  if (t <= knee_[i]) return std::min(base_.MarginalSlope(i, t), gamma_[i]);
  return gamma_[i];
}

double TruncatedCost::Eval(const Vec& z) const {
  CheckPoint(base_.dim(), z, "z");
  double total = 0.0;
  for (int i = 0; i < base_.dim(); ++i) total += Marginal(i, z[i]);
  return total;
}

}  // namespace convsec
