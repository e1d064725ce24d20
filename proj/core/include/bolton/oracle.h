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

#ifndef BOLTON_ORACLE_H_
#define BOLTON_ORACLE_H_

#include <cstdint>
#include <vector>

#include "bolton/dataset.h"
#include "bolton/loss.h"
#include "bolton/rng.h"
#include "bolton/sgd.h"

namespace bolton {

// One neighboring-dataset experiment: run the trainer on `base` and on
// `base` with row `differing_index` replaced, under identical randomness.
struct SensitivityProbe {
  const Dataset* base = nullptr;
  int64_t differing_index = 0;
  Example replacement;  // must be normalized with label in {-1,+1}
  LossModel model;
  StepSchedule schedule;
  SgdConfig config;
};

// Distance between the released models of the two runs (last iterate or
// average per config.averaging). Both runs share the permutation seed, so
// this is a certified lower bound on the L2-sensitivity.
double Divergence(const SensitivityProbe& probe);

// Adversarial replacements for row `index`: a label flip, the sign-flipped
// point with flipped label, a random unit-sphere point with each label, and
// the zero point. Sign-flip constructions are near the worst case for
// linear-model gradients; random draws alone under-explore the supremum.
std::vector<Example> ReplacementPool(const Dataset& ds, int64_t index,
                                     Rng& rng);

// Maximum observed divergence over every differing index, the replacement
// pool, and 1 + extra_permutation_seeds permutation seeds. A lower bound on
// the true L2-sensitivity of the configured trainer.
double EmpiricalSensitivity(const Dataset& ds, const LossModel& model,
                            const StepSchedule& schedule,
                            const SgdConfig& cfg,
                            int extra_permutation_seeds, Rng& pool_rng);

}  // namespace bolton

#endif  // BOLTON_ORACLE_H_
