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

// Linear classifiers lambda >= 0 that pick U_lambda = {e : v(e) >= <lambda,
// s(e)>}, the balanced curve on which they are searched, and the offline
// search for a good classifier.
//
// The curve is parametrized by tau. For tau >= 0 the point lambda(tau) has
// every dual marginal equal to tau, (g_i)*(lambda_i) = tau. For tau in
// [-1, 0) it runs along the segment (1 + tau) * corner, where corner is the
// vector of slopes g_i'(0). lambda(tau) is non-decreasing in every
// coordinate.

#ifndef CONVSEC_CLASSIFIER_H_
#define CONVSEC_CLASSIFIER_H_

#include <optional>

#include "convsec/instance.h"

namespace convsec {

struct Classifier {
  Vec lambda;
  double tau = 0.0;
  bool on_curve = true;
  // Picks nothing at all; returned when no threshold can be learned.
  bool sentinel = false;
};

Classifier CurvePoint(const CostModel& cost, double tau);
Classifier SentinelClassifier(int dim);

// Largest tau with lambda_i(tau) <= g, for g >= 0.
double CurveParameterForCoordinate(const CostModel& cost, int i, double g);

// <lambda, s> over the coordinates where s is positive.
double ThresholdOf(const Vec& lambda, const Vec& size);

enum class Side { kAbove, kTie, kBelow };

// value vs threshold, with ties within 1e-12 relative.
Side CompareToThreshold(double value, double threshold);

// Largest tau at which the item is still picked; +infinity for zero size.
double ItemBreakpoint(const CostModel& cost, const Item& item);

struct PickReport {
  Subset picked;       // U_lambda
  Subset open_picked;  // strictly above the threshold
  Vec occupancy;       // summed size over picked
  std::optional<std::size_t> threshold_item;
  bool multiple_ties = false;
};

PickReport Pick(const Instance& inst, const Vec& lambda);

struct ClassifierOptions {
  double eps = 1e-6;
  double gradient_tol = 1e-7;
};

struct GoodClassifier {
  Classifier classifier;
  // Feasible subset of U_lambda with grad g(S x_occ)_{i_star} >= lambda_i_star.
  Subset x_occ;
  int i_star = 0;
  // True when lambda sits exactly on an item breakpoint.
  bool at_breakpoint = false;
  std::optional<std::size_t> threshold_item;
  // Whether every feasible subset of the open picked set was verified to
  // keep grad g(Sx) <= lambda. The check is exact for free matroids and for
  // separable costs and conservative otherwise.
  bool p1_holds = true;
  // max_i (g_i)*(lambda_i) - min_i (g_i)*(lambda_i).
  double balance_spread = 0.0;
};

// Walks down the curve from large tau and stops at the first classifier for
// which some feasible subset of the picked items pushes a gradient
// coordinate up to lambda. Every set picked above that point keeps all
// gradient coordinates below lambda. NoGoodClassifier when no item has a
// positive value.
GoodClassifier FindGoodClassifier(const Instance& inst,
                                  const ClassifierOptions& options = {});

// Feasible subset of `universe` maximizing coordinate i of the occupancy.
Subset MaxOccupancySubset(const Instance& inst, const Subset& universe, int i);

}  // namespace convsec

#endif  // CONVSEC_CLASSIFIER_H_
