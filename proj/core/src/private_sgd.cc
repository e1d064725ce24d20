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

#include "bolton/private_sgd.h"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace bolton {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point begin, Clock::time_point end) {
  return std::chrono::duration<double>(end - begin).count();
}

Eigen::VectorXd DrawOutputNoise(int dim, double delta2,
                                const PrivacyBudget& budget, Rng& rng) {
  if (budget.delta == 0.0 || budget.epsilon >= 1.0) {
    return SampleLaplaceBall(dim, delta2, budget.epsilon, rng);
  }
  return SampleGaussian(dim, delta2, budget.epsilon, budget.delta, rng);
}

PrivateRunReport Perturb(const Dataset& ds, const LossModel& model,
                         const StepSchedule& schedule, const SgdConfig& cfg,
                         const PrivacyBudget& budget, double delta2) {
  PrivateRunReport report;
  report.algorithm = "output_perturbation";
  report.budget = budget;
  report.delta2 = delta2;

  const auto sgd_begin = Clock::now();
  const SgdResult result = RunPsgd(ds, model, schedule, cfg);
  const auto sgd_end = Clock::now();

  report.noiseless_model = result.Released(cfg.averaging);
  Rng noise_rng(NoiseStreamSeed(cfg.seed));
  report.noise = DrawOutputNoise(ds.dim(), delta2, budget, noise_rng);
  report.private_model = report.noiseless_model + report.noise;
  const auto noise_end = Clock::now();

  report.sgd_seconds = Seconds(sgd_begin, sgd_end);
  report.noise_seconds = Seconds(sgd_end, noise_end);
  return report;
}

}  // namespace

uint64_t NoiseStreamSeed(uint64_t seed) {
  return DeriveSeed(seed, /*stream=*/0x6e6f6973);
}

double DefaultConvexStepSize(const LossModel& model, int64_t m) {
  if (!std::isfinite(model.radius)) {
    throw std::invalid_argument(
        "private psgd: the default step size R/(L sqrt(m)) needs a finite "
        "radius; supply eta explicitly for unconstrained runs");
  }
  const LossConstants c = ComputeConstants(model);
  return model.radius / (c.lipschitz * std::sqrt(static_cast<double>(m)));
}

PrivateRunReport PrivatePsgdConvex(const Dataset& ds, const LossModel& model,
                                   const StepSchedule& schedule,
                                   const SgdConfig& cfg,
                                   const PrivacyBudget& budget,
                                   SensitivityRule rule) {
  ValidateBudget(budget);
  const LossConstants constants = ComputeConstants(model);
  if (constants.strong_convexity > 0.0) {
    throw std::invalid_argument(
        "private psgd (convex): model is strongly convex; use the strongly "
        "convex trainer");
  }
  if (schedule.kind == StepSchedule::Kind::kStronglyConvexDecreasing) {
    throw std::invalid_argument(
        "private psgd (convex): schedule requires gamma > 0");
  }
  const SensitivityBound bound =
      rule == SensitivityRule::kRecursion
          ? RecursionBound(schedule, ds.size(), cfg.passes, cfg.batch_size,
                           constants, cfg.fresh_permutation_per_pass)
          : ClosedFormBound(schedule, ds.size(), cfg.passes, cfg.batch_size,
                            constants);
  return Perturb(ds, model, schedule, cfg, budget, bound.delta2);
}

PrivateRunReport PrivatePsgdStronglyConvex(const Dataset& ds,
                                           const LossModel& model,
                                           const SgdConfig& cfg,
                                           const PrivacyBudget& budget,
                                           SensitivityRule rule) {
  ValidateBudget(budget);
  const LossConstants constants = ComputeConstants(model);
  if (!(constants.strong_convexity > 0.0)) {
    throw std::invalid_argument(
        "private psgd (strongly convex): model must have gamma > 0");
  }
  if (!std::isfinite(cfg.radius)) {
    throw std::invalid_argument(
        "private psgd (strongly convex): projection radius required");
  }
  const StepSchedule schedule = StepSchedule::StronglyConvexDecreasing();
  double delta2;
  if (rule == SensitivityRule::kRecursion) {
    delta2 = RecursionBound(schedule, ds.size(), cfg.passes, cfg.batch_size,
                            constants, cfg.fresh_permutation_per_pass)
                 .delta2;
    if (ds.size() % cfg.batch_size == 0) {
      delta2 = std::min(delta2,
                        StronglyConvexDecreasingBound(
                            constants.lipschitz, constants.strong_convexity,
                            ds.size(), cfg.batch_size)
                            .delta2);
    }
  } else {
    delta2 = StronglyConvexDecreasingBound(constants.lipschitz,
                                           constants.strong_convexity,
                                           ds.size(), cfg.batch_size)
                 .delta2;
  }
  return Perturb(ds, model, schedule, cfg, budget, delta2);
}

}  // namespace bolton
