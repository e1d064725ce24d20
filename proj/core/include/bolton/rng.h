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

#ifndef BOLTON_RNG_H_
#define BOLTON_RNG_H_

#include <cstdint>

#include <Eigen/Core>

namespace bolton {

// Derives an independent stream seed from a base seed and a stream tag.
// All sub-stream seeding in the library (per-pass permutations, noise
// streams, per-row experiment streams) goes through this function so that
// tests can reproduce any internal stream.
uint64_t DeriveSeed(uint64_t seed, uint64_t stream);

// Counter-based generator (SplitMix64). The state is a counter advanced by
// a fixed odd constant; outputs are a bijective hash of the counter. A
// given seed fully determines the stream on every platform.
//
// Instances are cheap to construct and must not be shared across threads;
// create one stream per logical task instead.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t NextU64();

  // Uniform in [0, 1).
  double NextUnit();

  // Uniform in (0, 1]; safe as a logarithm argument.
  double NextUnitOpen();

  // Uniform integer in [0, n). Requires n >= 1.
  uint64_t NextBelow(uint64_t n);

  // Standard normal via Box-Muller (two uniforms per variate).
  double NextGaussian();

  // Gamma(shape, scale) via the Marsaglia-Tsang rejection method.
  // Requires shape >= 1.
  double NextGamma(double shape, double scale);

  // Uniform direction on the unit sphere in `dim` dimensions.
  Eigen::VectorXd NextUnitSphere(int dim);

 private:
  uint64_t state_;
};

}  // namespace bolton

#endif  // BOLTON_RNG_H_
