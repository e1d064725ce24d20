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

#ifndef BOLTON_SGD_H_
#define BOLTON_SGD_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bolton/dataset.h"
#include "bolton/loss.h"

namespace bolton {

// Step-size schedules, indexed by the global update counter t = 1..T.
// With mini-batches the counter advances once per batch.
struct StepSchedule {
  enum class Kind {
    kConstant,                  // eta_t = eta
    kConvexDecreasing,          // eta_t = 2 / (beta * (t + m^c))
    kConvexSqrt,                // eta_t = 2 / (beta * (sqrt(t) + m^c))
    kStronglyConvexDecreasing,  // eta_t = min(1/(gamma*t), 1/beta)
  };

  Kind kind = Kind::kConstant;
  double eta = 0.0;       // constant schedule only
  double exponent = 0.0;  // the c in [0,1) for the decreasing/sqrt schedules

  static StepSchedule Constant(double eta);
  static StepSchedule ConvexDecreasing(double c);
  static StepSchedule ConvexSqrt(double c);
  static StepSchedule StronglyConvexDecreasing();

  std::string Describe() const;
};

// Checks the schedule against the loss constants: constant steps need
// eta <= 2/beta (<= 1/beta when gamma > 0), the strongly convex schedule
// needs gamma > 0, and c must lie in [0,1).
void ValidateSchedule(const StepSchedule& schedule, const LossConstants& c);

// eta_t for 1-based update index t on a training set of size m.
double StepSize(const StepSchedule& schedule, int64_t t, int64_t m,
                const LossConstants& c);

// Euclidean projection onto the radius-R ball; identity when R is
// kUnbounded. Exactly idempotent.
Eigen::VectorXd Project(Eigen::VectorXd w, double radius);

enum class Averaging { kLastIterate, kUniformAverage };

struct SgdConfig {
  int passes = 1;
  int64_t batch_size = 1;
  double radius = kUnbounded;  // projection radius for each update
  Averaging averaging = Averaging::kLastIterate;
  bool fresh_permutation_per_pass = false;
  uint64_t seed = 0;
};

struct SgdResult {
  Eigen::VectorXd final_iterate;
  Eigen::VectorXd averaged_iterate;  // uniform average of w_1..w_T
  int64_t update_count = 0;
  std::vector<double> step_sizes;  // eta_t for t = 1..T

  const Eigen::VectorXd& Released(Averaging averaging) const {
    return averaging == Averaging::kLastIterate ? final_iterate
                                                : averaged_iterate;
  }
};

// Deterministic permutation-based SGD from w_0 = 0. Each pass visits the
// data in permutation order in consecutive batches of size b; the trailing
// m mod b examples of a pass are skipped so every update averages exactly
// b gradients. The update is
//   w <- Project(w - eta_t * ((1/b) sum_{i in B} grad_i(w)), radius)
// with t counting batches globally across passes. Fully determined by
// cfg.seed; safe to run concurrently on a shared dataset.
SgdResult RunPsgd(const Dataset& ds, const LossModel& model,
                  const StepSchedule& schedule, const SgdConfig& cfg);

// Weighted running sum of iterates: Sum(alpha_t * w_t) without storing the
// iterate history.
class ModelAverager {
 public:
  void Add(const Eigen::VectorXd& iterate, double weight);
  const Eigen::VectorXd& WeightedSum() const;
  double TotalWeight() const { return total_weight_; }

 private:
  Eigen::VectorXd sum_;
  double total_weight_ = 0.0;
};

}  // namespace bolton

#endif  // BOLTON_SGD_H_
