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

#include "bolton/noise.h"

#include <cmath>
#include <stdexcept>

namespace bolton {

void ValidateBudget(const PrivacyBudget& budget) {
  if (!(budget.epsilon > 0.0)) {
    throw std::invalid_argument("budget: epsilon must be > 0");
  }
  if (!(budget.delta >= 0.0 && budget.delta < 1.0)) {
    throw std::invalid_argument("budget: delta must lie in [0,1)");
  }
}

Eigen::VectorXd SampleLaplaceBall(int dim, double delta2, double epsilon,
                                  Rng& rng) {
  if (dim < 1) throw std::invalid_argument("noise: dim must be >= 1");
  if (delta2 < 0.0) throw std::invalid_argument("noise: delta2 must be >= 0");
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("noise: epsilon must be > 0");
  }
  if (delta2 == 0.0) return Eigen::VectorXd::Zero(dim);
  const Eigen::VectorXd direction = rng.NextUnitSphere(dim);
  const double magnitude =
      rng.NextGamma(static_cast<double>(dim), delta2 / epsilon);
  return magnitude * direction;
}

double GaussianSigma(double delta2, double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument(
        "noise: the Gaussian mechanism requires epsilon in (0,1)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument(
        "noise: the Gaussian mechanism requires delta in (0,1)");
  }
  if (delta2 < 0.0) throw std::invalid_argument("noise: delta2 must be >= 0");
  const double c = std::sqrt(2.0 * std::log(1.25 / delta)) * (1.0 + 1e-9);
  return c * delta2 / epsilon;
}

Eigen::VectorXd SampleGaussian(int dim, double delta2, double epsilon,
                               double delta, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("noise: dim must be >= 1");
  const double sigma = GaussianSigma(delta2, epsilon, delta);
  Eigen::VectorXd noise(dim);
  for (int i = 0; i < dim; ++i) noise[i] = sigma * rng.NextGaussian();
  return noise;
}

}  // namespace bolton
