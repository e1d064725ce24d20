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

#include "bolton/tuning.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace bolton {
namespace {

Dataset Slice(const Dataset& ds, int64_t begin, int64_t count) {
  RowMatrixXd x(count, ds.dim());
  Eigen::VectorXd y(count);
  for (int64_t i = 0; i < count; ++i) {
    x.row(i) = ds.row(begin + i);
    y[i] = ds.label(begin + i);
  }
  return Dataset(std::move(x), std::move(y));
}

int64_t CountErrors(const Dataset& validation, const Eigen::VectorXd& w) {
  int64_t errors = 0;
  for (int64_t i = 0; i < validation.size(); ++i) {
    const double predicted = validation.row(i).dot(w.transpose()) >= 0.0
                                 ? 1.0
                                 : -1.0;
    if (predicted != validation.label(i)) ++errors;
  }
  return errors;
}

}  // namespace

bool operator<(const Candidate& a, const Candidate& b) {
  return std::tie(a.passes, a.lambda, a.eta, a.batch) <
         std::tie(b.passes, b.lambda, b.eta, b.batch);
}

bool operator==(const Candidate& a, const Candidate& b) {
  return std::tie(a.passes, a.lambda, a.eta, a.batch) ==
         std::tie(b.passes, b.lambda, b.eta, b.batch);
}

std::vector<double> SelectionProbabilities(
    const std::vector<double>& utilities, double epsilon) {
  if (utilities.empty()) {
    throw std::invalid_argument("exponential mechanism: empty candidate list");
  }
  if (epsilon < 0.0) {
    throw std::invalid_argument("exponential mechanism: epsilon must be >= 0");
  }
  std::vector<double> logits(utilities.size());
  double max_logit = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < utilities.size(); ++i) {
    logits[i] = 0.5 * epsilon * utilities[i];
    max_logit = std::max(max_logit, logits[i]);
  }
  double total = 0.0;
  for (double& logit : logits) {
    logit = std::exp(logit - max_logit);
    total += logit;
  }
  for (double& logit : logits) logit /= total;
  return logits;
}

size_t ExponentialMechanism(const std::vector<double>& utilities,
                            double epsilon, Rng& rng) {
  const std::vector<double> probabilities =
      SelectionProbabilities(utilities, epsilon);
  const double draw = rng.NextUnit();
  double cumulative = 0.0;
  for (size_t i = 0; i < probabilities.size(); ++i) {
    cumulative += probabilities[i];
    if (draw < cumulative) return i;
  }
  return probabilities.size() - 1;
}

TuneResult PrivateTune(const Dataset& ds, const std::vector<Candidate>& grid,
                       const CandidateTrainer& trainer,
                       const PrivacyBudget& budget_train, double epsilon_tune,
                       uint64_t seed) {
  if (grid.empty()) throw std::invalid_argument("tune: empty candidate grid");
  const int64_t chunks = static_cast<int64_t>(grid.size()) + 1;
  const int64_t chunk_size = ds.size() / chunks;
  if (chunk_size < 1) {
    throw std::invalid_argument(
        "tune: grid larger than the dataset allows (need |grid|+1 chunks)");
  }

  const Dataset validation =
      Slice(ds, (chunks - 1) * chunk_size, chunk_size);
  TuneResult result;
  result.dropped_rows = ds.size() - chunks * chunk_size;
  result.validation_errors.resize(grid.size());

  std::vector<double> utilities(grid.size());
  std::vector<PrivateRunReport> reports(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    const Dataset train =
        Slice(ds, static_cast<int64_t>(i) * chunk_size, chunk_size);
    reports[i] = trainer(train, grid[i], DeriveSeed(seed, i));
    result.validation_errors[i] = CountErrors(validation,
                                              reports[i].private_model);
    utilities[i] = -static_cast<double>(result.validation_errors[i]);
  }

  Rng mechanism_rng(DeriveSeed(seed, /*stream=*/0x74756e65));
  result.chosen_index = ExponentialMechanism(utilities, epsilon_tune,
                                             mechanism_rng);
  result.chosen = grid[result.chosen_index];
  result.report = std::move(reports[result.chosen_index]);
  result.total_epsilon = budget_train.epsilon + epsilon_tune;
  result.total_delta = budget_train.delta;
  return result;
}

PublicTuneResult PublicTune(const Dataset& ds_public,
                            const std::vector<Candidate>& grid,
                            const CandidateTrainer& trainer, uint64_t seed) {
  if (grid.empty()) throw std::invalid_argument("tune: empty candidate grid");
  const auto [train, validation] =
      TrainTestSplit(ds_public, 0.2, DeriveSeed(seed, 0x7075626c));

  PublicTuneResult result;
  result.validation_errors.resize(grid.size());
  bool have_best = false;
  int64_t best_errors = 0;
  for (size_t i = 0; i < grid.size(); ++i) {
    const PrivateRunReport report = trainer(train, grid[i],
                                            DeriveSeed(seed, i));
    const int64_t errors = CountErrors(validation, report.private_model);
    result.validation_errors[i] = errors;
    const bool better =
        !have_best || errors < best_errors ||
        (errors == best_errors && grid[i] < result.chosen);
    if (better) {
      have_best = true;
      best_errors = errors;
      result.chosen = grid[i];
      result.chosen_index = i;
    }
  }
  return result;
}

}  // namespace bolton
