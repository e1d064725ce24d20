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

#include "bolton/baselines.h"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "bolton/noise.h"
#include "bolton/rng.h"

namespace bolton {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point begin, Clock::time_point end) {
  return std::chrono::duration<double>(end - begin).count();
}

double CompositionLhs(double e1, double total_updates, double root_term) {
  return total_updates * e1 * std::expm1(e1) + root_term * e1;
}

PrivateRunReport FinishBaseline(const char* name, Eigen::VectorXd w,
                                const PrivacyBudget& budget,
                                Clock::time_point begin) {
  PrivateRunReport report;
  report.algorithm = name;
  report.noiseless_model = w;
  report.noise = Eigen::VectorXd::Zero(w.size());
  report.private_model = std::move(w);
  report.budget = budget;
  report.sgd_seconds = Seconds(begin, Clock::now());
  report.noise_seconds = 0.0;  // per-iteration noise is part of the SGD loop
  return report;
}

void CheckBaselineInputs(const Dataset& ds, double radius,
                         int64_t batch_size, int passes) {
  if (passes < 1) throw std::invalid_argument("baseline: passes must be >= 1");
  if (!(std::isfinite(radius) && radius > 0.0)) {
    throw std::invalid_argument("baseline: a finite radius is required");
  }
  if (batch_size < 1 || batch_size > ds.size()) {
    throw std::invalid_argument("baseline: invalid batch size");
  }
  if (!IsNormalized(ds)) {
    throw std::invalid_argument("baseline: dataset must be normalized first");
  }
}

// Per-loss scale of the per-iteration Gaussian in BST14; 1 for both
// supported losses on unit-norm data.
double IotaFor(const LossModel&) { return 1.0; }

PrivateRunReport RunBst14(const char* name, const Dataset& ds,
                          const LossModel& model, int passes,
                          const PrivacyBudget& budget, double radius,
                          int64_t batch_size, uint64_t seed,
                          bool strongly_convex) {
  ValidateBudget(budget);
  if (budget.delta <= 0.0) {
    throw std::invalid_argument("bst14: requires delta > 0");
  }
  CheckBaselineInputs(ds, radius, batch_size, passes);
  const LossConstants constants = ComputeConstants(model);
  if (strongly_convex && !(constants.strong_convexity > 0.0)) {
    throw std::invalid_argument("bst14: strongly convex variant needs gamma > 0");
  }

  const auto begin = Clock::now();
  const int64_t m = ds.size();
  const Bst14Params params =
      ComputeBst14Params(budget.epsilon, budget.delta, passes, m);
  const double sigma = std::sqrt(params.sigma_sq * IotaFor(model));
  const int dim = ds.dim();
  const double gradient_scale =
      std::sqrt(static_cast<double>(dim) * params.sigma_sq +
                static_cast<double>(batch_size * batch_size) *
                    constants.lipschitz * constants.lipschitz);

  Rng rng(DeriveSeed(seed, /*stream=*/0x62737431));
  Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd step(dim);
  for (int64_t t = 1; t <= params.total_updates; ++t) {
    const int64_t i = static_cast<int64_t>(
        rng.NextBelow(static_cast<uint64_t>(m)));
    step.setZero();
    AddDataGradient(model, w, ds.row(i), ds.label(i), 1.0, step);
    if (model.lambda > 0.0) step += model.lambda * w;
    for (int j = 0; j < dim; ++j) step[j] += sigma * rng.NextGaussian();
    const double eta =
        strongly_convex
            ? 1.0 / (constants.strong_convexity * static_cast<double>(t))
            : 2.0 * radius / (gradient_scale * std::sqrt(static_cast<double>(t)));
    w = Project(w - eta * step, radius);
  }
  return FinishBaseline(name, std::move(w), budget, begin);
}

}  // namespace

double SolveBst14Epsilon1(double epsilon, double total_updates,
                          double delta1) {
  if (!(epsilon > 0.0) || !(total_updates > 0.0) ||
      !(delta1 > 0.0 && delta1 < 1.0)) {
    throw std::invalid_argument("bst14: epsilon, T and delta1 must be positive");
  }
  const double root_term = std::sqrt(2.0 * total_updates * std::log(1.0 / delta1));
  double lo = 0.0;
  double hi = 1.0;
  int doubling = 0;
  while (CompositionLhs(hi, total_updates, root_term) < epsilon) {
    hi *= 2.0;
    if (++doubling > 200) {
      throw std::runtime_error("bst14: root bracketing did not converge");
    }
  }
  double mid = hi;
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double value = CompositionLhs(mid, total_updates, root_term);
    if (value < epsilon) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (std::abs(value - epsilon) < 1e-12 && hi - lo < 1e-15 * (1.0 + mid)) {
      break;
    }
  }
  const double residual =
      std::abs(CompositionLhs(mid, total_updates, root_term) - epsilon);
  if (residual >= 1e-10) {
    throw std::runtime_error("bst14: bisection residual above tolerance");
  }
  return mid;
}

Bst14Params ComputeBst14Params(double epsilon, double delta, int passes,
                               int64_t m) {
  if (passes < 1 || m < 1) {
    throw std::invalid_argument("bst14: passes and m must be >= 1");
  }
  Bst14Params params;
  params.total_updates = static_cast<int64_t>(passes) * m;
  params.delta1 = delta / static_cast<double>(params.total_updates);
  params.epsilon1 = SolveBst14Epsilon1(
      epsilon, static_cast<double>(params.total_updates), params.delta1);
  params.epsilon2 =
      std::min(1.0, static_cast<double>(m) * params.epsilon1 / 2.0);
  params.sigma_sq = 2.0 * std::log(1.25 / params.delta1) /
                    (params.epsilon2 * params.epsilon2);
  return params;
}

PrivateRunReport Bst14Convex(const Dataset& ds, const LossModel& model,
                             int passes, const PrivacyBudget& budget,
                             double radius, int64_t batch_size,
                             uint64_t seed) {
  return RunBst14("bst14", ds, model, passes, budget, radius, batch_size,
                  seed, /*strongly_convex=*/false);
}

PrivateRunReport Bst14StronglyConvex(const Dataset& ds,
                                     const LossModel& model, int passes,
                                     const PrivacyBudget& budget,
                                     double radius, int64_t batch_size,
                                     uint64_t seed) {
  return RunBst14("bst14", ds, model, passes, budget, radius, batch_size,
                  seed, /*strongly_convex=*/true);
}

PrivateRunReport Scs13(const Dataset& ds, const LossModel& model, int passes,
                       double epsilon, int64_t batch_size,
                       const StepSchedule& schedule, double radius,
                       uint64_t seed) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("scs13: epsilon must be > 0");
  }
  CheckBaselineInputs(ds, radius, batch_size, passes);
  const LossConstants constants = ComputeConstants(model);
  ValidateSchedule(schedule, constants);

  const auto begin = Clock::now();
  const int64_t m = ds.size();
  const int dim = ds.dim();
  const int64_t updates_per_pass = m / batch_size;
  const double inv_batch = 1.0 / static_cast<double>(batch_size);
  const double step_sensitivity = 2.0 * constants.lipschitz;
  const double step_epsilon = epsilon / static_cast<double>(passes);

  const Permutation perm = SamplePermutation(m, seed);
  Rng noise_rng(DeriveSeed(seed, /*stream=*/0x73637331));
  Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd grad(dim);
  int64_t t = 0;
  for (int pass = 0; pass < passes; ++pass) {
    for (int64_t batch = 0; batch < updates_per_pass; ++batch) {
      ++t;
      const double eta = StepSize(schedule, t, m, constants);
      grad.setZero();
      const int64_t first = batch * batch_size;
      for (int64_t offset = 0; offset < batch_size; ++offset) {
        const int64_t i = perm.mapping[first + offset];
        AddDataGradient(model, w, ds.row(i), ds.label(i), inv_batch, grad);
      }
      if (model.lambda > 0.0) grad += model.lambda * w;
      grad += inv_batch * SampleLaplaceBall(dim, step_sensitivity,
                                            step_epsilon, noise_rng);
      w = Project(w - eta * grad, radius);
    }
  }
  PrivateRunReport report = FinishBaseline(
      "scs13", std::move(w), PrivacyBudget{epsilon, 0.0}, begin);
  return report;
}

}  // namespace bolton
