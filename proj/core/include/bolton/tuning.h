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

#ifndef BOLTON_TUNING_H_
#define BOLTON_TUNING_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "bolton/dataset.h"
#include "bolton/private_sgd.h"
#include "bolton/rng.h"

namespace bolton {

// One grid point of the hyper-parameter search. eta = 0 and batch = 0 mean
// "use the trainer's default".
struct Candidate {
  int passes = 1;
  double lambda = 0.0;
  double eta = 0.0;
  int64_t batch = 0;
};

// Lexicographic order (passes, lambda, eta, batch); ties in public tuning
// resolve to the smaller candidate.
bool operator<(const Candidate& a, const Candidate& b);
bool operator==(const Candidate& a, const Candidate& b);

// Trains one candidate on a chunk of data; supplied by the caller so the
// tuner is agnostic to which private (or noiseless) trainer is being tuned.
using CandidateTrainer = std::function<PrivateRunReport(
    const Dataset& train, const Candidate& candidate, uint64_t seed)>;

// Softmax selection probabilities P(i) proportional to
// exp(epsilon * utility_i / 2), computed with log-sum-exp stabilization.
std::vector<double> SelectionProbabilities(
    const std::vector<double>& utilities, double epsilon);

// Draws an index with the probabilities above. Utilities must come from a
// sensitivity-1 query (here: negated validation error counts) for the draw
// to be epsilon-DP.
size_t ExponentialMechanism(const std::vector<double>& utilities,
                            double epsilon, Rng& rng);

struct TuneResult {
  Candidate chosen;
  size_t chosen_index = 0;
  std::vector<int64_t> validation_errors;  // per candidate
  PrivateRunReport report;                 // the chosen, already-trained model
  double total_epsilon = 0.0;
  double total_delta = 0.0;
  int64_t dropped_rows = 0;
};

// Private tuning: splits ds into |grid|+1 equal contiguous chunks, trains
// candidate i on chunk i with `budget_train`, counts each model's
// misclassifications on the held-out last chunk, and selects with the
// exponential mechanism at epsilon_tune. Because every individual lands in
// exactly one chunk, the total cost is
// (budget_train.epsilon + epsilon_tune, budget_train.delta).
TuneResult PrivateTune(const Dataset& ds, const std::vector<Candidate>& grid,
                       const CandidateTrainer& trainer,
                       const PrivacyBudget& budget_train, double epsilon_tune,
                       uint64_t seed);

struct PublicTuneResult {
  Candidate chosen;
  size_t chosen_index = 0;
  std::vector<int64_t> validation_errors;
};

// Non-private grid search on public data: an 80/20 train/validation split,
// every candidate trained on the same train part, plain argmin of
// validation errors (ties to the lexicographically smallest candidate).
// Consumes no privacy budget.
PublicTuneResult PublicTune(const Dataset& ds_public,
                            const std::vector<Candidate>& grid,
                            const CandidateTrainer& trainer, uint64_t seed);

}  // namespace bolton

#endif  // BOLTON_TUNING_H_
