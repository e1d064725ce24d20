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

#ifndef BOLTON_NOISE_H_
#define BOLTON_NOISE_H_

#include <Eigen/Core>

#include "bolton/rng.h"

namespace bolton {

// A differential-privacy budget; delta = 0 means pure epsilon-DP.
struct PrivacyBudget {
  double epsilon = 1.0;
  double delta = 0.0;
};

void ValidateBudget(const PrivacyBudget& budget);

// High-dimensional Laplace noise with density p(kappa) proportional to
// exp(-epsilon |kappa| / delta2): a uniform direction on the unit sphere
// scaled by a Gamma(dim, delta2/epsilon) magnitude. The direction is drawn
// first, then the magnitude; delta2 = 0 yields the zero vector. Releasing
// f(S) + kappa for a query with L2-sensitivity delta2 is epsilon-DP.
Eigen::VectorXd SampleLaplaceBall(int dim, double delta2, double epsilon,
                                  Rng& rng);

// Spherical Gaussian noise with per-coordinate standard deviation
// sigma = c * delta2 / epsilon, c = sqrt(2 ln(1.25/delta)) * (1 + 1e-9),
// giving (epsilon, delta)-DP for epsilon in (0,1). The small factor keeps
// the strict inequality on c. Rejects epsilon outside (0,1).
Eigen::VectorXd SampleGaussian(int dim, double delta2, double epsilon,
                               double delta, Rng& rng);

// The sigma used by SampleGaussian, exposed for calibration checks.
double GaussianSigma(double delta2, double epsilon, double delta);

}  // namespace bolton

#endif  // BOLTON_NOISE_H_
