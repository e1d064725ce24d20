// Copyright 2026 The Bolton Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BOLTON_BASELINES_H_
#define BOLTON_BASELINES_H_

#include <cstdint>

#include "bolton/dataset.h"
#include "bolton/loss.h"
#include "bolton/private_sgd.h"
#include "bolton/sgd.h"

namespace bolton {

// Per-iteration noise parameters for the constant-epoch BST14 baseline.
struct Bst14Params {
  int64_t total_updates = 0;  // T = k * m
  double delta1 = 0.0;        // delta / T
  double epsilon1 = 0.0;      // root of the composition equation below
  double epsilon2 = 0.0;      // min(1, m * epsilon1 / 2)
  double sigma_sq = 0.0;      // 2 ln(1.25/delta1) / epsilon2^2
};

// Solves epsilon = T*e1*(exp(e1) - 1) + sqrt(2 T ln(1/delta1)) * e1 for the
// unique positive root e1 by bisection; the left side is 0 at e1 = 0 and
// strictly increasing. The absolute residual at the returned root is below
// 1e-10; failure to converge within 200 bisection steps throws.
double SolveBst14Epsilon1(double epsilon, double total_updates,
                          double delta1);

Bst14Params ComputeBst14Params(double epsilon, double delta, int passes,
                               int64_t m);

// Convex BST14 with constant epochs: T = k*m with-replacement steps, each
// perturbed by z ~ N(0, sigma^2 I_d) and projected onto the radius ball,
// with eta_t = 2R/(G sqrt(t)), G = sqrt(d sigma^2 + b^2 L^2). `batch_size`
// enters only through G, matching the published listing. Requires
// delta > 0.
PrivateRunReport Bst14Convex(const Dataset& ds, const LossModel& model,
                             int passes, const PrivacyBudget& budget,
                             double radius, int64_t batch_size,
                             uint64_t seed);

// Strongly convex BST14 with constant epochs: identical noise parameters,
// eta_t = 1/(gamma t).
PrivateRunReport Bst14StronglyConvex(const Dataset& ds,
                                     const LossModel& model, int passes,
                                     const PrivacyBudget& budget,
                                     double radius, int64_t batch_size,
                                     uint64_t seed);

// SCS13-style noisy mini-batch PSGD: disjoint permutation-ordered batches,
// each update perturbed by a Laplace-ball draw with per-step sensitivity 2L
// at budget epsilon/k (parallel composition across a pass's disjoint
// batches, sequential composition across the k passes):
//   w <- Project(w - eta_t * (g_batch + kappa_t / b), radius).
PrivateRunReport Scs13(const Dataset& ds, const LossModel& model, int passes,
                       double epsilon, int64_t batch_size,
                       const StepSchedule& schedule, double radius,
                       uint64_t seed);

}  // namespace bolton

#endif  // BOLTON_BASELINES_H_
