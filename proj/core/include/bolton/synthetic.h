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

#ifndef BOLTON_SYNTHETIC_H_
#define BOLTON_SYNTHETIC_H_

#include <cstdint>

#include "bolton/dataset.h"

namespace bolton {

// Two-class Gaussian clouds: y uniform in {-1,+1},
// x = y * margin * u + N(0, I_d) with u a fixed seeded unit direction,
// labels then flipped with probability flip_prob, features normalized.
Dataset GenerateSynthetic(int64_t m, int d, double margin, double flip_prob,
                          uint64_t seed);

}  // namespace bolton

#endif  // BOLTON_SYNTHETIC_H_
