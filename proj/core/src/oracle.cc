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

#include "bolton/oracle.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bolton {
namespace {

void CheckReplacement(const Example& replacement) {
  if (replacement.y != -1.0 && replacement.y != 1.0) {
    throw std::invalid_argument("oracle: replacement label must be -1 or +1");
  }
  if (replacement.x.norm() > 1.0 + kNormSlack) {
    throw std::invalid_argument("oracle: replacement must be normalized");
  }
}

}  // namespace

double Divergence(const SensitivityProbe& probe) {
  if (probe.base == nullptr) {
    throw std::invalid_argument("oracle: probe has no base dataset");
  }
  CheckReplacement(probe.replacement);
  const Dataset& base = *probe.base;
  const Dataset neighbor =
      base.WithRow(probe.differing_index, probe.replacement);
  const SgdResult on_base = RunPsgd(base, probe.model, probe.schedule,
                                    probe.config);
  const SgdResult on_neighbor = RunPsgd(neighbor, probe.model, probe.schedule,
                                        probe.config);
  return (on_base.Released(probe.config.averaging) -
          on_neighbor.Released(probe.config.averaging))
      .norm();
}

std::vector<Example> ReplacementPool(const Dataset& ds, int64_t index,
                                     Rng& rng) {
  if (index < 0 || index >= ds.size()) {
    throw std::invalid_argument("oracle: index out of range");
  }
  const Example original = ds.example(index);
  std::vector<Example> pool;
  pool.push_back(Example{original.x, -original.y});
  pool.push_back(Example{-original.x, -original.y});
  pool.push_back(Example{rng.NextUnitSphere(ds.dim()), 1.0});
  pool.push_back(Example{rng.NextUnitSphere(ds.dim()), -1.0});
  pool.push_back(Example{Eigen::VectorXd::Zero(ds.dim()), 1.0});
  return pool;
}

double EmpiricalSensitivity(const Dataset& ds, const LossModel& model,
                            const StepSchedule& schedule,
                            const SgdConfig& cfg,
                            int extra_permutation_seeds, Rng& pool_rng) {
  if (extra_permutation_seeds < 0) {
    throw std::invalid_argument("oracle: seed count must be >= 0");
  }
  std::vector<uint64_t> seeds{cfg.seed};
  for (int j = 1; j <= extra_permutation_seeds; ++j) {
    seeds.push_back(DeriveSeed(cfg.seed, 0x6f72636c + j));
  }

  double worst = 0.0;
  SensitivityProbe probe;
  probe.base = &ds;
  probe.model = model;
  probe.schedule = schedule;
  for (int64_t i = 0; i < ds.size(); ++i) {
    const std::vector<Example> pool = ReplacementPool(ds, i, pool_rng);
    for (const Example& replacement : pool) {
      for (const uint64_t seed : seeds) {
        probe.differing_index = i;
        probe.replacement = replacement;
        probe.config = cfg;
        probe.config.seed = seed;
        worst = std::max(worst, Divergence(probe));
      }
    }
  }
  return worst;
}

}  // namespace bolton
