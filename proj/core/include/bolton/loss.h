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

#ifndef BOLTON_LOSS_H_
#define BOLTON_LOSS_H_

#include <limits>
#include <string>

#include <Eigen/Core>

#include "bolton/dataset.h"

namespace bolton {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

enum class LossKind { kLogistic, kHuberSvm };

// A loss family together with its regularization weight, Huber half-width
// and hypothesis-norm bound. Certified optimization constants are derived
// from these fields; they are never user supplied, so noise calibration
// cannot drift from the loss actually optimized.
struct LossModel {
  LossKind kind = LossKind::kLogistic;
  double lambda = 0.0;
  double huber_h = 0.1;            // only meaningful for kHuberSvm
  double radius = kUnbounded;      // hypothesis-norm bound; kUnbounded if none

  static LossModel Logistic(double lambda, double radius = kUnbounded);
  static LossModel HuberSvm(double h, double lambda,
                            double radius = kUnbounded);
};

// Certified constants of a loss model on the unit-norm data domain:
// an upper bound on the gradient norm (for |w| <= radius), an upper bound
// on the gradient's Lipschitz constant, and a curvature lower bound.
struct LossConstants {
  double lipschitz = 0.0;
  double smoothness = 0.0;
  double strong_convexity = 0.0;
};

void ValidateLossModel(const LossModel& model);

// Returns (L, beta, gamma) for the model:
//   logistic:  lambda = 0 -> (1, 1, 0);        lambda > 0 -> (1+lambda*R, 1+lambda, lambda)
//   huber svm: lambda = 0 -> (1, 1/(2h), 0);   lambda > 0 -> (1+lambda*R, 1/(2h)+lambda, lambda)
// lambda > 0 requires a finite radius.
LossConstants ComputeConstants(const LossModel& model);

// Per-example loss value, including the (lambda/2)|w|^2 term.
double LossValue(const LossModel& model, const Eigen::VectorXd& w,
                 const Eigen::Ref<const Eigen::RowVectorXd>& x, double y);

// Per-example gradient, including the lambda*w term.
Eigen::VectorXd LossGradient(const LossModel& model, const Eigen::VectorXd& w,
                             const Eigen::Ref<const Eigen::RowVectorXd>& x,
                             double y);

// Accumulates weight * (data-term gradient) into `out`, excluding the
// lambda*w regularizer. The regularizer is linear in w, so batch loops add
// it once per update instead of once per example.
void AddDataGradient(const LossModel& model, const Eigen::VectorXd& w,
                     const Eigen::Ref<const Eigen::RowVectorXd>& x, double y,
                     double weight, Eigen::VectorXd& out);

// Mean loss over a dataset at w.
double EmpiricalRisk(const LossModel& model, const Dataset& ds,
                     const Eigen::VectorXd& w);

// Fraction of examples with sign(<w,x>) == y; <w,x> == 0 predicts +1.
double Accuracy(const Dataset& ds, const Eigen::VectorXd& w);

std::string ToString(LossKind kind);

}  // namespace bolton

#endif  // BOLTON_LOSS_H_
