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

#include "numeric.h"

#include <algorithm>
#include <cmath>

namespace convsec::internal {

Maximum GoldenSectionMax(const std::function<double(double)>& f, double lo,
                         double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  Maximum best{0.5 * (a + b), f(0.5 * (a + b))};
  for (double x : {lo, hi}) {
    const double fx = f(x);
    if (fx >= best.value) best = {x, fx};
  }
  return best;
}

double BisectMonotone(const std::function<bool(double)>& pred, double lo,
                      double hi, double tol) {
  while (hi - lo > tol * std::max(1.0, std::fabs(hi))) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

bool ExpandBracket(const std::function<bool(double)>& pred, double start,
                   double* hi) {
  double x = std::max(start, 1e-300);
  while (!pred(x)) {
    x *= 2.0;
    if (x > kBracketCap) return false;
  }
  *hi = x;
  return true;
}

bool HalfLineConjugate(const std::function<double(double)>& f,
                       const std::function<double(double)>& slope, double lam,
                       double* value, double* argmax) {
  if (slope(0.0) >= lam) {
    *value = 0.0;
    *argmax = 0.0;
    return true;
  }
  double hi = 0.0;
  if (!ExpandBracket([&](double t) { return slope(t) >= lam; }, 1.0, &hi)) {
    return false;
  }
  // Relative tolerance close to machine precision; the objective is flat at
  // the root so this costs almost nothing in value accuracy.
  double lo = 0.0;
  while (hi - lo > 1e-15 * hi) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (slope(mid) >= lam) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double t = 0.5 * (lo + hi);
  *argmax = t;
  *value = std::max(0.0, lam * t - f(t));
  return true;
}

}  // namespace convsec::internal
