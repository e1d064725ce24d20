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
//
// Test-only numerical oracles, kept independent of the library code paths
// they check.

#ifndef BOLTON_TESTS_NUMERIC_CHECKS_H_
#define BOLTON_TESTS_NUMERIC_CHECKS_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Core>

namespace bolton::testing {

// Central finite-difference gradient of f at w.
inline Eigen::VectorXd FiniteDifferenceGradient(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& w, double step) {
  Eigen::VectorXd grad(w.size());
  Eigen::VectorXd probe = w;
  for (int i = 0; i < w.size(); ++i) {
    probe[i] = w[i] + step;
    const double up = f(probe);
    probe[i] = w[i] - step;
    const double down = f(probe);
    probe[i] = w[i];
    grad[i] = (up - down) / (2.0 * step);
  }
  return grad;
}

// CDF of Gamma(shape, scale) for integer shape:
// P(X <= x) = 1 - exp(-z) * sum_{i<shape} z^i / i!, z = x / scale.
inline double GammaCdfIntegerShape(int shape, double scale, double x) {
  if (x <= 0.0) return 0.0;
  const double z = x / scale;
  double term = 1.0;  // z^0 / 0!
  double sum = 1.0;
  for (int i = 1; i < shape; ++i) {
    term *= z / static_cast<double>(i);
    sum += term;
  }
  const double tail = std::exp(-z + std::log(sum));
  return 1.0 - std::min(1.0, tail);
}

// Kolmogorov-Smirnov statistic of samples against a CDF.
inline double KsStatistic(std::vector<double> samples,
                          const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double ks = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    const double value = cdf(samples[i]);
    ks = std::max(ks, std::abs(static_cast<double>(i) / n - value));
    ks = std::max(ks, std::abs(static_cast<double>(i + 1) / n - value));
  }
  return ks;
}

inline double Median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// Accelerated projected gradient descent on a smooth convex objective over
// the radius ball; used as the reference minimizer when measuring excess
// empirical risk.
inline Eigen::VectorXd MinimizeProjected(
    const std::function<double(const Eigen::VectorXd&)>& value,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& gradient,
    int dim, double radius, double smoothness, int iterations) {
  auto project = [radius](Eigen::VectorXd v) {
    const double norm = v.norm();
    if (std::isfinite(radius) && norm > radius) v *= radius / norm;
    return v;
  };
  Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd momentum = w;
  const double step = 1.0 / smoothness;
  double t_prev = 1.0;
  double best_value = value(w);
  Eigen::VectorXd best = w;
  for (int i = 0; i < iterations; ++i) {
    const Eigen::VectorXd next = project(momentum - step * gradient(momentum));
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_prev * t_prev));
    momentum = next + ((t_prev - 1.0) / t_next) * (next - w);
    w = next;
    t_prev = t_next;
    const double candidate = value(w);
    if (candidate < best_value) {
      best_value = candidate;
      best = w;
    }
  }
  return best;
}

}  // namespace bolton::testing

#endif  // BOLTON_TESTS_NUMERIC_CHECKS_H_
