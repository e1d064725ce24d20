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

#ifndef BOLTON_PRIVATE_SGD_H_
#define BOLTON_PRIVATE_SGD_H_

#include <cstdint>
#include <string>

#include <Eigen/Core>

#include "bolton/dataset.h"
#include "bolton/loss.h"
#include "bolton/noise.h"
#include "bolton/sensitivity.h"
#include "bolton/sgd.h"

namespace bolton {

// Which sensitivity value calibrates the output noise: the numerically
// unrolled recursion (tight, the default) or the published closed form.
enum class SensitivityRule { kRecursion, kClosedForm };

// The full record of one private training run. The SGD phase is the
// unmodified deterministic trainer; noise touches only the released model,
// so private_model - noiseless_model == noise exactly.
struct PrivateRunReport {
  std::string algorithm;
  Eigen::VectorXd noiseless_model;
  Eigen::VectorXd noise;
  Eigen::VectorXd private_model;
  double delta2 = 0.0;
  PrivacyBudget budget;
  double sgd_seconds = 0.0;
  double noise_seconds = 0.0;
};

// Seed of the output-noise stream for a training seed. Exposed so tests
// can reproduce the exact noise vector of a run.
uint64_t NoiseStreamSeed(uint64_t seed);

// The constant step size R/(L sqrt(m)) used by the convex trainer when the
// caller does not supply one; requires a finite radius.
double DefaultConvexStepSize(const LossModel& model, int64_t m);

// Output-perturbed convex PSGD (gamma = 0; constant, decreasing or
// square-root schedule with eta_t <= 2/beta). Runs the noiseless trainer,
// computes delta2 per `rule`, and adds one draw of Laplace-ball noise when
// budget.delta == 0 or Gaussian noise when budget.delta > 0 and
// epsilon < 1. For delta > 0 with epsilon >= 1 (outside the Gaussian
// mechanism's range) the Laplace ball is used: pure epsilon-DP implies
// (epsilon, delta)-DP.
PrivateRunReport PrivatePsgdConvex(const Dataset& ds, const LossModel& model,
                                   const StepSchedule& schedule,
                                   const SgdConfig& cfg,
                                   const PrivacyBudget& budget,
                                   SensitivityRule rule =
                                       SensitivityRule::kRecursion);

// Output-perturbed strongly convex PSGD (gamma > 0, finite radius) with the
// decreasing schedule min(1/(gamma t), 1/beta). With the recursion rule,
// delta2 = min(recursion, 2L/(gamma m)) when the batch size divides m;
// otherwise the recursion alone is used, since the closed form is only
// certified for a whole number of batches covering the data.
PrivateRunReport PrivatePsgdStronglyConvex(const Dataset& ds,
                                           const LossModel& model,
                                           const SgdConfig& cfg,
                                           const PrivacyBudget& budget,
                                           SensitivityRule rule =
                                               SensitivityRule::kRecursion);

}  // namespace bolton

#endif  // BOLTON_PRIVATE_SGD_H_
