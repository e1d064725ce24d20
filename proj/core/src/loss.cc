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

#include "bolton/loss.h"

#include <cmath>
#include <stdexcept>

namespace bolton {
namespace {

// ln(1 + e^t) without overflow for large |t|.
double Softplus(double t) {
  return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t)));
}

// 1 / (1 + e^-t), stable in both tails.
double Sigmoid(double t) {
  if (t >= 0.0) {
    return 1.0 / (1.0 + std::exp(-t));
  }
  const double e = std::exp(t);
  return e / (1.0 + e);
}

void CheckDims(const LossModel&, const Eigen::VectorXd& w,
               const Eigen::Ref<const Eigen::RowVectorXd>& x) {
  if (w.size() != x.size()) {
    throw std::invalid_argument("loss: model/example dimension mismatch");
  }
}

// Derivative of the Huber data term with respect to z = y<w,x>. The middle
// branch is used at exact boundaries; it agrees with both neighbors there.
double HuberSlope(double z, double h) {
  if (z > 1.0 + h) return 0.0;
  if (std::abs(1.0 - z) <= h) return -(1.0 + h - z) / (2.0 * h);
  return -1.0;
}

double HuberValue(double z, double h) {
  if (z > 1.0 + h) return 0.0;
  if (std::abs(1.0 - z) <= h) {
    const double slack = 1.0 + h - z;
    return slack * slack / (4.0 * h);
  }
  return 1.0 - z;
}

}  // namespace

LossModel LossModel::Logistic(double lambda, double radius) {
  LossModel model;
  model.kind = LossKind::kLogistic;
  model.lambda = lambda;
  model.radius = radius;
  ValidateLossModel(model);
  return model;
}

LossModel LossModel::HuberSvm(double h, double lambda, double radius) {
  LossModel model;
  model.kind = LossKind::kHuberSvm;
  model.lambda = lambda;
  model.huber_h = h;
  model.radius = radius;
  ValidateLossModel(model);
  return model;
}

void ValidateLossModel(const LossModel& model) {
  if (model.lambda < 0.0) {
    throw std::invalid_argument("loss: lambda must be >= 0");
  }
  if (model.kind == LossKind::kHuberSvm && !(model.huber_h > 0.0)) {
    throw std::invalid_argument("loss: huber half-width must be > 0");
  }
  if (!(model.radius > 0.0)) {
    throw std::invalid_argument("loss: radius must be > 0 or unbounded");
  }
  if (model.lambda > 0.0 && !std::isfinite(model.radius)) {
    throw std::invalid_argument(
        "loss: lambda > 0 requires a finite hypothesis radius");
  }
}

LossConstants ComputeConstants(const LossModel& model) {
  ValidateLossModel(model);
  LossConstants c;
  const double data_smoothness = model.kind == LossKind::kLogistic
                                     ? 1.0
                                     : 1.0 / (2.0 * model.huber_h);
  if (model.lambda == 0.0) {
    c.lipschitz = 1.0;
    c.smoothness = data_smoothness;
    c.strong_convexity = 0.0;
  } else {
    c.lipschitz = 1.0 + model.lambda * model.radius;
    c.smoothness = data_smoothness + model.lambda;
    c.strong_convexity = model.lambda;
  }
  return c;
}

double LossValue(const LossModel& model, const Eigen::VectorXd& w,
                 const Eigen::Ref<const Eigen::RowVectorXd>& x, double y) {
  CheckDims(model, w, x);
  const double z = y * x.dot(w.transpose());
  const double reg = 0.5 * model.lambda * w.squaredNorm();
  if (model.kind == LossKind::kLogistic) return Softplus(-z) + reg;
  return HuberValue(z, model.huber_h) + reg;
}

Eigen::VectorXd LossGradient(const LossModel& model, const Eigen::VectorXd& w,
                             const Eigen::Ref<const Eigen::RowVectorXd>& x,
                             double y) {
  CheckDims(model, w, x);
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(w.size());
  AddDataGradient(model, w, x, y, 1.0, grad);
  if (model.lambda > 0.0) grad += model.lambda * w;
  return grad;
}

void AddDataGradient(const LossModel& model, const Eigen::VectorXd& w,
                     const Eigen::Ref<const Eigen::RowVectorXd>& x, double y,
                     double weight, Eigen::VectorXd& out) {
  const double z = y * x.dot(w.transpose());
  double coeff = 0.0;
  if (model.kind == LossKind::kLogistic) {
    coeff = -y * Sigmoid(-z);
  } else {
    coeff = y * HuberSlope(z, model.huber_h);
  }
  out.noalias() += (weight * coeff) * x.transpose();
}

double EmpiricalRisk(const LossModel& model, const Dataset& ds,
                     const Eigen::VectorXd& w) {
  double total = 0.0;
  for (int64_t i = 0; i < ds.size(); ++i) {
    total += LossValue(model, w, ds.row(i), ds.label(i));
  }
  return total / static_cast<double>(ds.size());
}

double Accuracy(const Dataset& ds, const Eigen::VectorXd& w) {
  int64_t correct = 0;
  for (int64_t i = 0; i < ds.size(); ++i) {
    const double score = ds.row(i).dot(w.transpose());
    const double predicted = score >= 0.0 ? 1.0 : -1.0;
    if (predicted == ds.label(i)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(ds.size());
}

std::string ToString(LossKind kind) {
  return kind == LossKind::kLogistic ? "logistic" : "huber";
}

}  // namespace bolton
