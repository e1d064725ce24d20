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

#include "bolton/synthetic.h"

#include <stdexcept>

#include "bolton/rng.h"

namespace bolton {

Dataset GenerateSynthetic(int64_t m, int d, double margin, double flip_prob,
                          uint64_t seed) {
  if (m < 2) throw std::invalid_argument("synthetic: m must be >= 2");
  if (d < 1) throw std::invalid_argument("synthetic: d must be >= 1");
  if (!(margin > 0.0)) {
    throw std::invalid_argument("synthetic: margin must be > 0");
  }
  if (!(flip_prob >= 0.0 && flip_prob < 0.5)) {
    throw std::invalid_argument("synthetic: flip probability must be in [0, 0.5)");
  }
  Rng rng(DeriveSeed(seed, /*stream=*/0x73796e74));
  const Eigen::VectorXd direction = rng.NextUnitSphere(d);
  RowMatrixXd features(m, d);
  Eigen::VectorXd labels(m);
  for (int64_t i = 0; i < m; ++i) {
    const double y = rng.NextBelow(2) == 0 ? -1.0 : 1.0;
    for (int j = 0; j < d; ++j) {
      features(i, j) = y * margin * direction[j] + rng.NextGaussian();
    }
    labels[i] = rng.NextUnit() < flip_prob ? -y : y;
  }
  return Normalize(Dataset(std::move(features), std::move(labels)));
}

}  // namespace bolton
