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

#include "bolton/rng.h"

#include <cmath>
#include <stdexcept>

namespace bolton {
namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

uint64_t Mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

uint64_t DeriveSeed(uint64_t seed, uint64_t stream) {
  return Mix64(seed + kGolden * (stream + 1));
}

uint64_t Rng::NextU64() {
  state_ += kGolden;
  return Mix64(state_);
}

double Rng::NextUnit() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

double Rng::NextUnitOpen() {
  return static_cast<double>((NextU64() >> 11) + 1) * 0x1.0p-53;
}

uint64_t Rng::NextBelow(uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::NextBelow: n must be >= 1");
  // Multiply-shift bounded draw; bias is O(n / 2^64), negligible here.
  return static_cast<uint64_t>(
      (static_cast<unsigned __int128>(NextU64()) * n) >> 64);
}

double Rng::NextGaussian() {
  const double u1 = NextUnitOpen();
  const double u2 = NextUnit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double Rng::NextGamma(double shape, double scale) {
  if (shape < 1.0) {
    throw std::invalid_argument("Rng::NextGamma: shape must be >= 1");
  }
  if (scale == 0.0) return 0.0;
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = NextGaussian();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = NextUnitOpen();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      return d * v * scale;
    }
  }
}

Eigen::VectorXd Rng::NextUnitSphere(int dim) {
  if (dim < 1) {
    throw std::invalid_argument("Rng::NextUnitSphere: dim must be >= 1");
  }
  Eigen::VectorXd v(dim);
  for (;;) {
    for (int i = 0; i < dim; ++i) v[i] = NextGaussian();
    const double norm = v.norm();
    if (norm > 1e-12) return v / norm;
  }
}

}  // namespace bolton
