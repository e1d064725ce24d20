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

#ifndef BOLTON_SENSITIVITY_H_
#define BOLTON_SENSITIVITY_H_

#include <cstdint>
#include <string>

#include "bolton/loss.h"
#include "bolton/sgd.h"

namespace bolton {

// An L2-sensitivity value together with the formula that produced it and
// the parameters it was evaluated at. delta2 bounds the worst-case distance
// between the released models of permutation SGD on neighboring datasets
// that share all randomness.
struct SensitivityBound {
  double delta2 = 0.0;
  std::string provenance;
  int passes = 0;
  int64_t dataset_size = 0;  // 0 when the formula does not involve m
  int64_t batch_size = 1;
  LossConstants constants;
  std::string schedule;

  std::string Describe() const;
};

// Convex loss, constant step eta <= 2/beta:
//   delta2 = 2 k L eta / b.
// The per-pass hit adds 2*eta*L/b and 1-expansive steps leave it unchanged,
// so the batched bound is exact for every batch size.
SensitivityBound ConvexConstantBound(int passes, double lipschitz, double eta,
                                     int64_t batch_size);

// Convex loss, decreasing step eta_t = 2/(beta (t + m^c)):
//   b = 1: delta2 = (4L/beta) (1/m^c + ln(k)/m).
//   b > 1: delta2 = (4L/(beta b)) (1/m^c + H_{k-1}/n) with n = floor(m/b).
// With batching the differing batch is met at update 1 + j*n rather than
// 1 + j*m, so the harmonic tail must run at the per-pass update count n;
// dividing the b = 1 form by b would undercut the recursion for k >= 2.
SensitivityBound ConvexDecreasingBound(int passes, int64_t m, double c,
                                       double lipschitz, double smoothness,
                                       int64_t batch_size);

// Convex loss, square-root step eta_t = 2/(beta (sqrt(t) + m^c)):
//   delta2 = (4L/(beta b)) * sum_{j=0}^{k-1} 1/(sqrt(j*n + 1) + m^c),
// the exact hit-time sum with n = floor(m/b) updates per pass (n = m when
// b = 1).
SensitivityBound ConvexSqrtBound(int passes, int64_t m, double c,
                                 double lipschitz, double smoothness,
                                 int64_t batch_size);

// Strongly convex loss, constant step eta <= 1/beta, 0 < eta*gamma < 1:
//   delta2 = (2 eta L / b) / (1 - (1 - eta gamma)^n),
// where n = updates_per_pass = floor(m/b).
SensitivityBound StronglyConvexConstantBound(double eta, double gamma,
                                             double lipschitz,
                                             int64_t updates_per_pass,
                                             int64_t batch_size);

// Strongly convex loss, decreasing step eta_t = min(1/(gamma t), 1/beta):
//   delta2 = 2L/(gamma m), independent of the number of passes.
// No /b refinement: with batches the per-hit gain is cancelled by the
// shorter per-pass horizon, so the closed form is unchanged (exact when b
// divides m; for b that does not divide m use the recursion instead).
SensitivityBound StronglyConvexDecreasingBound(double lipschitz, double gamma,
                                               int64_t m, int64_t batch_size);

// Numerically unrolls the divergence recursion over all T = k*floor(m/b)
// updates. Between hits delta_t <- rho_t * delta_{t-1}; at the update whose
// batch contains the differing example delta_t <- min(rho_t,1)*delta_{t-1}
// + 2*eta_t*L/b, with rho_t = 1 for gamma = 0 and rho_t = 1 - eta_t*gamma
// for gamma > 0. Returns the maximum final divergence over all possible
// differing-batch positions. This is the tightest bound the analysis gives
// and is what the private trainers calibrate noise to by default.
// `fresh_permutation_per_pass` is accepted for interface symmetry and
// ignored: the bound holds for any fixed permutation sequence.
SensitivityBound RecursionBound(const StepSchedule& schedule, int64_t m,
                                int passes, int64_t batch_size,
                                const LossConstants& constants,
                                bool fresh_permutation_per_pass = false);

// The closed form matching a schedule/constants pair, used as cross-check
// and for reproducing closed-form noise calibration.
SensitivityBound ClosedFormBound(const StepSchedule& schedule, int64_t m,
                                 int passes, int64_t batch_size,
                                 const LossConstants& constants);

}  // namespace bolton

#endif  // BOLTON_SENSITIVITY_H_
