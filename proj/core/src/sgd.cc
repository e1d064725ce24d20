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

#include "bolton/sgd.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bolton/rng.h"

namespace bolton {
namespace {

// Tolerance for eta <= bound checks so that callers may pass exactly 2/beta.
constexpr double kEtaSlack = 1.0 + 1e-12;

}  // namespace

StepSchedule StepSchedule::Constant(double eta) {
  StepSchedule s;
  s.kind = Kind::kConstant;
  s.eta = eta;
  return s;
}

StepSchedule StepSchedule::ConvexDecreasing(double c) {
  StepSchedule s;
  s.kind = Kind::kConvexDecreasing;
  s.exponent = c;
  return s;
}

StepSchedule StepSchedule::ConvexSqrt(double c) {
  StepSchedule s;
  s.kind = Kind::kConvexSqrt;
  s.exponent = c;
  return s;
}

StepSchedule StepSchedule::StronglyConvexDecreasing() {
  StepSchedule s;
  s.kind = Kind::kStronglyConvexDecreasing;
  return s;
}

std::string StepSchedule::Describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kConstant:
      os << "constant(eta=" << eta << ")";
      break;
    case Kind::kConvexDecreasing:
      os << "decreasing(c=" << exponent << ")";
      break;
    case Kind::kConvexSqrt:
      os << "sqrt(c=" << exponent << ")";
      break;
    case Kind::kStronglyConvexDecreasing:
      os << "strongly-convex-decreasing";
      break;
  }
  return os.str();
}

void ValidateSchedule(const StepSchedule& schedule, const LossConstants& c) {
  switch (schedule.kind) {
    case StepSchedule::Kind::kConstant: {
      if (!(schedule.eta > 0.0)) {
        throw std::invalid_argument("schedule: constant eta must be > 0");
      }
      const double cap = c.strong_convexity > 0.0 ? 1.0 / c.smoothness
                                                  : 2.0 / c.smoothness;
      if (schedule.eta > cap * kEtaSlack) {
        throw std::invalid_argument(
            "schedule: constant eta exceeds the expansiveness cap");
      }
      break;
    }
    case StepSchedule::Kind::kConvexDecreasing:
    case StepSchedule::Kind::kConvexSqrt:
      if (!(schedule.exponent >= 0.0 && schedule.exponent < 1.0)) {
        throw std::invalid_argument("schedule: c must lie in [0,1)");
      }
      break;
    case StepSchedule::Kind::kStronglyConvexDecreasing:
      if (!(c.strong_convexity > 0.0)) {
        throw std::invalid_argument(
            "schedule: strongly convex schedule needs gamma > 0");
      }
      break;
  }
}

double StepSize(const StepSchedule& schedule, int64_t t, int64_t m,
                const LossConstants& c) {
  if (t < 1) throw std::invalid_argument("StepSize: t is 1-based");
  switch (schedule.kind) {
    case StepSchedule::Kind::kConstant:
      return schedule.eta;
    case StepSchedule::Kind::kConvexDecreasing:
      return 2.0 / (c.smoothness *
                    (static_cast<double>(t) +
                     std::pow(static_cast<double>(m), schedule.exponent)));
    case StepSchedule::Kind::kConvexSqrt:
      return 2.0 / (c.smoothness *
                    (std::sqrt(static_cast<double>(t)) +
                     std::pow(static_cast<double>(m), schedule.exponent)));
    case StepSchedule::Kind::kStronglyConvexDecreasing:
      return std::min(1.0 / (c.strong_convexity * static_cast<double>(t)),
                      1.0 / c.smoothness);
  }
  throw std::invalid_argument("StepSize: unknown schedule");
}

Eigen::VectorXd Project(Eigen::VectorXd w, double radius) {
  if (!std::isfinite(radius)) return w;
  if (!(radius > 0.0)) {
    throw std::invalid_argument("Project: radius must be > 0 or unbounded");
  }
  double norm = w.norm();
  while (norm > radius) {
    w *= radius / norm;
    norm = w.norm();
  }
  return w;
}

SgdResult RunPsgd(const Dataset& ds, const LossModel& model,
                  const StepSchedule& schedule, const SgdConfig& cfg) {
  const int64_t m = ds.size();
  if (m < 1) throw std::invalid_argument("RunPsgd: empty dataset");
  if (cfg.passes < 1) throw std::invalid_argument("RunPsgd: passes must be >= 1");
  if (cfg.batch_size < 1) {
    throw std::invalid_argument("RunPsgd: batch size must be >= 1");
  }
  if (cfg.batch_size > m) {
    throw std::invalid_argument("RunPsgd: batch size exceeds dataset size");
  }
  if (!IsNormalized(ds)) {
    throw std::invalid_argument("RunPsgd: dataset must be normalized first");
  }
  const LossConstants constants = ComputeConstants(model);
  ValidateSchedule(schedule, constants);
  if (model.lambda > 0.0 && cfg.radius > model.radius * kEtaSlack) {
    throw std::invalid_argument(
        "RunPsgd: projection radius exceeds the loss model's norm bound");
  }

  const int64_t updates_per_pass = m / cfg.batch_size;
  const int64_t total_updates = updates_per_pass * cfg.passes;
  const double inv_batch = 1.0 / static_cast<double>(cfg.batch_size);

  SgdResult result;
  result.step_sizes.reserve(total_updates);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(ds.dim());
  Eigen::VectorXd grad(ds.dim());
  ModelAverager averager;
  const double uniform_weight = 1.0 / static_cast<double>(total_updates);

  Permutation perm = SamplePermutation(m, cfg.seed);
  int64_t t = 0;
  for (int pass = 0; pass < cfg.passes; ++pass) {
    if (cfg.fresh_permutation_per_pass && pass > 0) {
      perm = SamplePermutation(m, DeriveSeed(cfg.seed, pass));
    }
    for (int64_t batch = 0; batch < updates_per_pass; ++batch) {
      ++t;
      const double eta = StepSize(schedule, t, m, constants);
      grad.setZero();
      const int64_t begin = batch * cfg.batch_size;
      for (int64_t offset = 0; offset < cfg.batch_size; ++offset) {
        const int64_t i = perm.mapping[begin + offset];
        AddDataGradient(model, w, ds.row(i), ds.label(i), inv_batch, grad);
      }
      if (model.lambda > 0.0) grad += model.lambda * w;
      w = Project(w - eta * grad, cfg.radius);
      averager.Add(w, uniform_weight);
      result.step_sizes.push_back(eta);
    }
  }

  result.final_iterate = std::move(w);
  result.averaged_iterate = averager.WeightedSum();
  result.update_count = total_updates;
  return result;
}

void ModelAverager::Add(const Eigen::VectorXd& iterate, double weight) {
  if (weight < 0.0) {
    throw std::invalid_argument("ModelAverager: weights must be >= 0");
  }
  if (sum_.size() == 0) {
    sum_ = weight * iterate;
  } else {
    sum_ += weight * iterate;
  }
  total_weight_ += weight;
}

const Eigen::VectorXd& ModelAverager::WeightedSum() const {
  if (sum_.size() == 0) {
    throw std::logic_error("ModelAverager: no iterates added");
  }
  return sum_;
}

}  // namespace bolton
