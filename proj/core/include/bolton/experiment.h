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

#ifndef BOLTON_EXPERIMENT_H_
#define BOLTON_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bolton/baselines.h"
#include "bolton/dataset.h"
#include "bolton/loss.h"
#include "bolton/private_sgd.h"
#include "bolton/sgd.h"

namespace bolton {

enum class Algorithm { kNoiseless, kOutputPerturbation, kScs13, kBst14 };

std::string ToString(Algorithm algorithm);
Algorithm AlgorithmFromString(const std::string& name);

struct SyntheticSpec {
  int64_t m = 5000;
  int d = 10;
  double margin = 1.0;
  double flip_prob = 0.05;
  uint64_t seed = 1;
};

// A full experiment: the cross product of (algorithm, epsilon, seed) on one
// dataset. Defaults mirror the repo-wide experiment setup: batch 50, Huber
// half-width 0.1, radius 1/lambda for strongly convex runs, delta = 1/m^2,
// epsilons {0.1, 0.5, 1, 2, 4}.
struct ExperimentConfig {
  // Data source: a file, or the synthetic generator when data_path is "".
  std::string data_path;
  DatasetFormat format = DatasetFormat::kCsv;
  int declared_dim = 0;
  SyntheticSpec synthetic;
  double test_fraction = 0.2;
  uint64_t split_seed = 7;
  int target_dim = 0;  // > 0 applies random projection before training
  uint64_t projection_seed = 11;

  LossKind loss = LossKind::kLogistic;
  double lambda = 0.0;
  double huber_h = 0.1;

  std::vector<Algorithm> algorithms = {Algorithm::kNoiseless,
                                       Algorithm::kOutputPerturbation};
  std::vector<double> epsilons = {0.1, 0.5, 1.0, 2.0, 4.0};
  double delta = -1.0;  // < 0 means the 1/m^2 default

  int passes = 5;
  int64_t batch = 50;
  double radius = 0.0;  // 0 = default: 1/lambda if lambda > 0, else unbounded
  double eta = 0.0;     // 0 = default R/(L sqrt(m)) for convex constant steps
  StepSchedule::Kind schedule_kind = StepSchedule::Kind::kConstant;
  double schedule_exponent = 0.5;
  SensitivityRule rule = SensitivityRule::kRecursion;
  std::optional<Averaging> averaging;  // default: per-convexity choice

  std::vector<uint64_t> seeds = {1, 2, 3, 4, 5};
  std::string out_path;
  bool timings = false;  // timing columns stay empty unless enabled
};

// Parses a JSON config document; unknown keys are an error. Fields omitted
// in the document keep the defaults above.
ExperimentConfig ParseExperimentConfig(const std::string& json_text);
ExperimentConfig LoadExperimentConfig(const std::string& path);

struct ResultRow {
  std::string algorithm;
  double epsilon = 0.0;
  double delta = 0.0;
  int passes = 0;
  int64_t batch = 0;
  uint64_t seed = 0;
  double test_accuracy = 0.0;
  double train_loss = 0.0;
  std::optional<double> delta2;
  std::optional<double> sgd_seconds;
  std::optional<double> noise_seconds;
};

// Materialized dataset pair an experiment runs against.
struct ExperimentData {
  Dataset train;
  Dataset test;
};

ExperimentData PrepareData(const ExperimentConfig& config);

// The effective model/config row parameters after defaults are applied.
struct ResolvedSettings {
  LossModel model;
  StepSchedule schedule;
  SgdConfig sgd;
  double delta = 0.0;
};

ResolvedSettings ResolveSettings(const ExperimentConfig& config,
                                 int64_t train_size, uint64_t seed);

// Runs one (algorithm, epsilon, seed) cell and scores it on `test`.
ResultRow RunCell(const ExperimentData& data, const ExperimentConfig& config,
                  Algorithm algorithm, double epsilon, uint64_t seed);

// Executes the full cross product. Rows that fail are logged to stderr and
// skipped. Deterministic given the config, regardless of the worker-pool
// size (capped by the BOLTON_THREADS environment variable).
std::vector<ResultRow> RunExperiment(const ExperimentConfig& config);

// Stable-order CSV with an LF-terminated header and one line per row.
// Reals are printed with six digits (fixed for accuracies/losses/seconds,
// significant for budgets and sensitivities), so identical configs produce
// byte-identical files.
std::string FormatReport(const std::vector<ResultRow>& rows);
void WriteReport(const std::vector<ResultRow>& rows, const std::string& path);

// Dataset CSV ("label,f1,...,fd") with round-trippable reals.
void WriteDatasetCsv(const Dataset& ds, const std::string& path);

}  // namespace bolton

#endif  // BOLTON_EXPERIMENT_H_
