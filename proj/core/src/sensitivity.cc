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

#include "bolton/sensitivity.h"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bolton {
namespace {

void CheckPositive(double value, const char* name) {
  if (!(value > 0.0)) {
    throw std::invalid_argument(std::string("sensitivity: ") + name +
                                " must be > 0");
  }
}

void CheckCounts(int passes, int64_t batch_size) {
  if (passes < 1) throw std::invalid_argument("sensitivity: passes must be >= 1");
  if (batch_size < 1) {
    throw std::invalid_argument("sensitivity: batch size must be >= 1");
  }
}

int64_t UpdatesPerPass(int64_t m, int64_t batch_size) {
  const int64_t n = m / batch_size;
  if (n < 1) {
    throw std::invalid_argument(
        "sensitivity: batch size exceeds dataset size");
  }
  return n;
}

double Harmonic(int k) {
  double h = 0.0;
  for (int j = 1; j <= k; ++j) h += 1.0 / static_cast<double>(j);
  return h;
}

}  // namespace

std::string SensitivityBound::Describe() const {
  std::ostringstream os;
  os << provenance << ": delta2=" << delta2 << " (k=" << passes
     << ", m=" << dataset_size << ", b=" << batch_size
     << ", L=" << constants.lipschitz << ", beta=" << constants.smoothness
     << ", gamma=" << constants.strong_convexity << ", schedule=" << schedule
     << ")";
  return os.str();
}

SensitivityBound ConvexConstantBound(int passes, double lipschitz, double eta,
                                     int64_t batch_size) {
  CheckCounts(passes, batch_size);
  CheckPositive(eta, "eta");
  if (lipschitz < 0.0) {
    throw std::invalid_argument("sensitivity: lipschitz must be >= 0");
  }
  SensitivityBound bound;
  bound.delta2 = 2.0 * passes * lipschitz * eta /
                 static_cast<double>(batch_size);
  bound.provenance = "convex-constant-step";
  bound.passes = passes;
  bound.batch_size = batch_size;
  bound.constants.lipschitz = lipschitz;
  bound.schedule = StepSchedule::Constant(eta).Describe();
  return bound;
}

SensitivityBound ConvexDecreasingBound(int passes, int64_t m, double c,
                                       double lipschitz, double smoothness,
                                       int64_t batch_size) {
  CheckCounts(passes, batch_size);
  CheckPositive(smoothness, "smoothness");
  if (!(c >= 0.0 && c < 1.0)) {
    throw std::invalid_argument("sensitivity: c must lie in [0,1)");
  }
  const int64_t n = UpdatesPerPass(m, batch_size);
  const double md = static_cast<double>(m);
  double tail;
  if (batch_size == 1) {
    tail = std::log(static_cast<double>(passes)) / md;
  } else {
    tail = Harmonic(passes - 1) / static_cast<double>(n);
  }
  SensitivityBound bound;
  bound.delta2 = 4.0 * lipschitz / smoothness *
                 (std::pow(md, -c) + tail) / static_cast<double>(batch_size);
  bound.provenance = "convex-decreasing-step";
  bound.passes = passes;
  bound.dataset_size = m;
  bound.batch_size = batch_size;
  bound.constants.lipschitz = lipschitz;
  bound.constants.smoothness = smoothness;
  bound.schedule = StepSchedule::ConvexDecreasing(c).Describe();
  return bound;
}

SensitivityBound ConvexSqrtBound(int passes, int64_t m, double c,
                                 double lipschitz, double smoothness,
                                 int64_t batch_size) {
  CheckCounts(passes, batch_size);
  CheckPositive(smoothness, "smoothness");
  if (!(c >= 0.0 && c < 1.0)) {
    throw std::invalid_argument("sensitivity: c must lie in [0,1)");
  }
  const int64_t n = UpdatesPerPass(m, batch_size);
  const double mc = std::pow(static_cast<double>(m), c);
  double sum = 0.0;
  for (int j = 0; j < passes; ++j) {
    sum += 1.0 / (std::sqrt(static_cast<double>(j) * n + 1.0) + mc);
  }
  SensitivityBound bound;
  bound.delta2 =
      4.0 * lipschitz / smoothness * sum / static_cast<double>(batch_size);
  bound.provenance = "convex-sqrt-step";
  bound.passes = passes;
  bound.dataset_size = m;
  bound.batch_size = batch_size;
  bound.constants.lipschitz = lipschitz;
  bound.constants.smoothness = smoothness;
  bound.schedule = StepSchedule::ConvexSqrt(c).Describe();
  return bound;
}

SensitivityBound StronglyConvexConstantBound(double eta, double gamma,
                                             double lipschitz,
                                             int64_t updates_per_pass,
                                             int64_t batch_size) {
  CheckPositive(eta, "eta");
  CheckPositive(gamma, "gamma");
  if (updates_per_pass < 1) {
    throw std::invalid_argument("sensitivity: updates per pass must be >= 1");
  }
  if (batch_size < 1) {
    throw std::invalid_argument("sensitivity: batch size must be >= 1");
  }
  const double contraction = eta * gamma;
  if (!(contraction < 1.0)) {
    throw std::invalid_argument("sensitivity: eta*gamma must be < 1");
  }
  SensitivityBound bound;
  bound.delta2 =
      2.0 * eta * lipschitz / static_cast<double>(batch_size) /
      (1.0 - std::pow(1.0 - contraction,
                      static_cast<double>(updates_per_pass)));
  bound.provenance = "strongly-convex-constant-step";
  bound.passes = 0;
  bound.dataset_size = updates_per_pass * batch_size;
  bound.batch_size = batch_size;
  bound.constants.lipschitz = lipschitz;
  bound.constants.strong_convexity = gamma;
  bound.schedule = StepSchedule::Constant(eta).Describe();
  return bound;
}

SensitivityBound StronglyConvexDecreasingBound(double lipschitz, double gamma,
                                               int64_t m,
                                               int64_t batch_size) {
  CheckPositive(gamma, "gamma");
  if (m < 1) throw std::invalid_argument("sensitivity: m must be >= 1");
  if (batch_size < 1) {
    throw std::invalid_argument("sensitivity: batch size must be >= 1");
  }
  SensitivityBound bound;
  bound.delta2 = 2.0 * lipschitz / (gamma * static_cast<double>(m));
  bound.provenance = "strongly-convex-decreasing-step";
  bound.passes = 0;  // the bound has no k
  bound.dataset_size = m;
  bound.batch_size = batch_size;
  bound.constants.lipschitz = lipschitz;
  bound.constants.strong_convexity = gamma;
  bound.schedule = StepSchedule::StronglyConvexDecreasing().Describe();
  return bound;
}

SensitivityBound RecursionBound(const StepSchedule& schedule, int64_t m,
                                int passes, int64_t batch_size,
                                const LossConstants& constants,
                                bool /*fresh_permutation_per_pass*/) {
  CheckCounts(passes, batch_size);
  ValidateSchedule(schedule, constants);
  const int64_t n = UpdatesPerPass(m, batch_size);
  const int64_t total = n * passes;
  const double gamma = constants.strong_convexity;
  const double lipschitz = constants.lipschitz;
  const double hit_increment_scale = 2.0 * lipschitz /
                                     static_cast<double>(batch_size);

  std::vector<double> etas(total);
  for (int64_t t = 1; t <= total; ++t) {
    const double eta = StepSize(schedule, t, m, constants);
    // The expansiveness certificates behind the recursion require
    // eta <= 2/beta in the convex case and eta <= 1/beta when gamma > 0.
    const double cap = gamma > 0.0 ? 1.0 / constants.smoothness
                                   : 2.0 / constants.smoothness;
    if (eta > cap * (1.0 + 1e-12)) {
      throw std::invalid_argument(
          "sensitivity: schedule exceeds the expansiveness step cap");
    }
    etas[t - 1] = eta;
  }

  double worst = 0.0;
  for (int64_t hit = 1; hit <= n; ++hit) {
    double delta = 0.0;
    for (int64_t t = 1; t <= total; ++t) {
      const double eta = etas[t - 1];
      const double rho = gamma > 0.0 ? 1.0 - eta * gamma : 1.0;
      if ((t - hit) % n == 0 && t >= hit) {
        delta = std::min(rho, 1.0) * delta + eta * hit_increment_scale;
      } else {
        delta = rho * delta;
      }
    }
    worst = std::max(worst, delta);
  }

  SensitivityBound bound;
  bound.delta2 = worst;
  bound.provenance = "growth-recursion";
  bound.passes = passes;
  bound.dataset_size = m;
  bound.batch_size = batch_size;
  bound.constants = constants;
  bound.schedule = schedule.Describe();
  return bound;
}

SensitivityBound ClosedFormBound(const StepSchedule& schedule, int64_t m,
                                 int passes, int64_t batch_size,
                                 const LossConstants& constants) {
  ValidateSchedule(schedule, constants);
  switch (schedule.kind) {
    case StepSchedule::Kind::kConstant:
      if (constants.strong_convexity > 0.0) {
        return StronglyConvexConstantBound(schedule.eta,
                                           constants.strong_convexity,
                                           constants.lipschitz,
                                           UpdatesPerPass(m, batch_size),
                                           batch_size);
      }
      return ConvexConstantBound(passes, constants.lipschitz, schedule.eta,
                                 batch_size);
    case StepSchedule::Kind::kConvexDecreasing:
      return ConvexDecreasingBound(passes, m, schedule.exponent,
                                   constants.lipschitz, constants.smoothness,
                                   batch_size);
    case StepSchedule::Kind::kConvexSqrt:
      return ConvexSqrtBound(passes, m, schedule.exponent,
                             constants.lipschitz, constants.smoothness,
                             batch_size);
    case StepSchedule::Kind::kStronglyConvexDecreasing:
      return StronglyConvexDecreasingBound(constants.lipschitz,
                                           constants.strong_convexity, m,
                                           batch_size);
  }
  throw std::invalid_argument("ClosedFormBound: unknown schedule");
}

}  // namespace bolton
