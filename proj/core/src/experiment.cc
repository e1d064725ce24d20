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

#include "bolton/experiment.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "bolton/rng.h"
#include "bolton/synthetic.h"

namespace bolton {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point begin, Clock::time_point end) {
  return std::chrono::duration<double>(end - begin).count();
}

std::string FormatFixed(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

std::string FormatCompact(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

int WorkerCount(size_t cells) {
  unsigned threads = std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  if (const char* env = std::getenv("BOLTON_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed >= 1) threads = static_cast<unsigned>(parsed);
  }
  return static_cast<int>(std::min<size_t>(threads, std::max<size_t>(cells, 1)));
}

StepSchedule::Kind ScheduleKindFromString(const std::string& name) {
  if (name == "constant") return StepSchedule::Kind::kConstant;
  if (name == "decreasing") return StepSchedule::Kind::kConvexDecreasing;
  if (name == "sqrt") return StepSchedule::Kind::kConvexSqrt;
  if (name == "strongly-convex-decreasing") {
    return StepSchedule::Kind::kStronglyConvexDecreasing;
  }
  throw std::invalid_argument("config: unknown schedule '" + name + "'");
}

void ApplyConfigJson(const json& doc, ExperimentConfig& config) {
  for (const auto& [key, value] : doc.items()) {
    if (key == "data_path") {
      config.data_path = value.get<std::string>();
    } else if (key == "format") {
      const std::string f = value.get<std::string>();
      if (f == "csv") {
        config.format = DatasetFormat::kCsv;
      } else if (f == "svmlight") {
        config.format = DatasetFormat::kSvmLight;
      } else {
        throw std::invalid_argument("config: unknown format '" + f + "'");
      }
    } else if (key == "dim") {
      config.declared_dim = value.get<int>();
    } else if (key == "synthetic") {
      for (const auto& [skey, svalue] : value.items()) {
        if (skey == "m") {
          config.synthetic.m = svalue.get<int64_t>();
        } else if (skey == "d") {
          config.synthetic.d = svalue.get<int>();
        } else if (skey == "margin") {
          config.synthetic.margin = svalue.get<double>();
        } else if (skey == "flip_prob") {
          config.synthetic.flip_prob = svalue.get<double>();
        } else if (skey == "seed") {
          config.synthetic.seed = svalue.get<uint64_t>();
        } else {
          throw std::invalid_argument("config: unknown synthetic key '" +
                                      skey + "'");
        }
      }
    } else if (key == "test_fraction") {
      config.test_fraction = value.get<double>();
    } else if (key == "split_seed") {
      config.split_seed = value.get<uint64_t>();
    } else if (key == "target_dim") {
      config.target_dim = value.get<int>();
    } else if (key == "projection_seed") {
      config.projection_seed = value.get<uint64_t>();
    } else if (key == "loss") {
      const std::string name = value.get<std::string>();
      if (name == "logistic") {
        config.loss = LossKind::kLogistic;
      } else if (name == "huber") {
        config.loss = LossKind::kHuberSvm;
      } else {
        throw std::invalid_argument("config: unknown loss '" + name + "'");
      }
    } else if (key == "lambda") {
      config.lambda = value.get<double>();
    } else if (key == "h") {
      config.huber_h = value.get<double>();
    } else if (key == "algorithms") {
      config.algorithms.clear();
      for (const auto& name : value) {
        config.algorithms.push_back(
            AlgorithmFromString(name.get<std::string>()));
      }
    } else if (key == "epsilons") {
      config.epsilons = value.get<std::vector<double>>();
    } else if (key == "delta") {
      config.delta = value.get<double>();
    } else if (key == "passes") {
      config.passes = value.get<int>();
    } else if (key == "batch") {
      config.batch = value.get<int64_t>();
    } else if (key == "radius") {
      config.radius = value.get<double>();
    } else if (key == "eta") {
      config.eta = value.get<double>();
    } else if (key == "schedule") {
      config.schedule_kind = ScheduleKindFromString(value.get<std::string>());
    } else if (key == "c") {
      config.schedule_exponent = value.get<double>();
    } else if (key == "bound") {
      const std::string name = value.get<std::string>();
      if (name == "recursion") {
        config.rule = SensitivityRule::kRecursion;
      } else if (name == "closed-form") {
        config.rule = SensitivityRule::kClosedForm;
      } else {
        throw std::invalid_argument("config: unknown bound rule '" + name +
                                    "'");
      }
    } else if (key == "averaging") {
      const std::string name = value.get<std::string>();
      if (name == "last") {
        config.averaging = Averaging::kLastIterate;
      } else if (name == "average") {
        config.averaging = Averaging::kUniformAverage;
      } else {
        throw std::invalid_argument("config: unknown averaging '" + name +
                                    "'");
      }
    } else if (key == "seeds") {
      config.seeds = value.get<std::vector<uint64_t>>();
    } else if (key == "out") {
      config.out_path = value.get<std::string>();
    } else if (key == "timings") {
      config.timings = value.get<bool>();
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  if (config.seeds.empty()) {
    throw std::invalid_argument("config: seeds must be non-empty");
  }
}

}  // namespace

std::string ToString(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kNoiseless:
      return "noiseless";
    case Algorithm::kOutputPerturbation:
      return "output_perturbation";
    case Algorithm::kScs13:
      return "scs13";
    case Algorithm::kBst14:
      return "bst14";
  }
  return "unknown";
}

Algorithm AlgorithmFromString(const std::string& name) {
  if (name == "noiseless") return Algorithm::kNoiseless;
  if (name == "output_perturbation") return Algorithm::kOutputPerturbation;
  if (name == "scs13") return Algorithm::kScs13;
  if (name == "bst14") return Algorithm::kBst14;
  throw std::invalid_argument("config: unknown algorithm '" + name + "'");
}

ExperimentConfig ParseExperimentConfig(const std::string& json_text) {
  ExperimentConfig config;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: bad JSON: ") + e.what());
  }
  try {
    ApplyConfigJson(doc, config);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: bad value: ") + e.what());
  }
  return config;
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseExperimentConfig(buffer.str());
}

ExperimentData PrepareData(const ExperimentConfig& config) {
  if (config.data_path.empty()) {
    // Synthetic runs keep the configured training size exact and score on an
    // independently generated test set from the same distribution.
    const SyntheticSpec& s = config.synthetic;
    const int64_t test_size = std::max<int64_t>(
        2, static_cast<int64_t>(std::llround(
               static_cast<double>(s.m) * config.test_fraction)));
    Dataset train = GenerateSynthetic(s.m, s.d, s.margin, s.flip_prob, s.seed);
    Dataset test = GenerateSynthetic(test_size, s.d, s.margin, s.flip_prob,
                                     DeriveSeed(s.seed, 0x74657374));
    if (config.target_dim > 0) {
      train = RandomProjection(train, config.target_dim,
                               config.projection_seed);
      test = RandomProjection(test, config.target_dim,
                              config.projection_seed);
    }
    return ExperimentData{std::move(train), std::move(test)};
  }
  Dataset full = Normalize(
      LoadDataset(config.data_path, config.format, config.declared_dim));
  if (config.target_dim > 0) {
    full = RandomProjection(full, config.target_dim, config.projection_seed);
  }
  auto [train, test] =
      TrainTestSplit(full, config.test_fraction, config.split_seed);
  return ExperimentData{std::move(train), std::move(test)};
}

ResolvedSettings ResolveSettings(const ExperimentConfig& config,
                                 int64_t train_size, uint64_t seed) {
  ResolvedSettings settings;
  double radius = config.radius;
  if (radius == 0.0) {
    radius = config.lambda > 0.0 ? 1.0 / config.lambda : kUnbounded;
  }
  settings.model =
      config.loss == LossKind::kLogistic
          ? LossModel::Logistic(config.lambda, radius)
          : LossModel::HuberSvm(config.huber_h, config.lambda, radius);

  StepSchedule schedule;
  switch (config.schedule_kind) {
    case StepSchedule::Kind::kConstant: {
      double eta = config.eta;
      if (eta == 0.0) eta = DefaultConvexStepSize(settings.model, train_size);
      schedule = StepSchedule::Constant(eta);
      break;
    }
    case StepSchedule::Kind::kConvexDecreasing:
      schedule = StepSchedule::ConvexDecreasing(config.schedule_exponent);
      break;
    case StepSchedule::Kind::kConvexSqrt:
      schedule = StepSchedule::ConvexSqrt(config.schedule_exponent);
      break;
    case StepSchedule::Kind::kStronglyConvexDecreasing:
      schedule = StepSchedule::StronglyConvexDecreasing();
      break;
  }
  settings.schedule = schedule;

  settings.sgd.passes = config.passes;
  settings.sgd.batch_size = config.batch;
  settings.sgd.radius = radius;
  settings.sgd.averaging = config.averaging.value_or(
      config.lambda > 0.0 ? Averaging::kLastIterate
                          : Averaging::kUniformAverage);
  settings.sgd.seed = seed;

  settings.delta = config.delta;
  if (settings.delta < 0.0) {
    const double md = static_cast<double>(train_size);
    settings.delta = 1.0 / (md * md);
  }
  return settings;
}

ResultRow RunCell(const ExperimentData& data, const ExperimentConfig& config,
                  Algorithm algorithm, double epsilon, uint64_t seed) {
  const ResolvedSettings s = ResolveSettings(config, data.train.size(), seed);
  ResultRow row;
  row.algorithm = ToString(algorithm);
  row.epsilon = epsilon;
  row.delta = algorithm == Algorithm::kNoiseless ||
                      algorithm == Algorithm::kScs13
                  ? 0.0
                  : s.delta;
  row.passes = config.passes;
  row.batch = config.batch;
  row.seed = seed;

  const bool strongly_convex = config.lambda > 0.0;
  Eigen::VectorXd released;
  switch (algorithm) {
    case Algorithm::kNoiseless: {
      const auto begin = Clock::now();
      const SgdResult result =
          RunPsgd(data.train, s.model, s.schedule, s.sgd);
      row.sgd_seconds = Seconds(begin, Clock::now());
      row.noise_seconds = 0.0;
      released = result.Released(s.sgd.averaging);
      break;
    }
    case Algorithm::kOutputPerturbation: {
      const PrivateRunReport report =
          strongly_convex
              ? PrivatePsgdStronglyConvex(data.train, s.model, s.sgd,
                                          PrivacyBudget{epsilon, s.delta},
                                          config.rule)
              : PrivatePsgdConvex(data.train, s.model, s.schedule, s.sgd,
                                  PrivacyBudget{epsilon, s.delta},
                                  config.rule);
      row.delta2 = report.delta2;
      row.sgd_seconds = report.sgd_seconds;
      row.noise_seconds = report.noise_seconds;
      released = report.private_model;
      break;
    }
    case Algorithm::kScs13: {
      const PrivateRunReport report =
          Scs13(data.train, s.model, config.passes, epsilon,
                config.batch, s.schedule, s.sgd.radius, seed);
      row.sgd_seconds = report.sgd_seconds;
      row.noise_seconds = report.noise_seconds;
      released = report.private_model;
      break;
    }
    case Algorithm::kBst14: {
      const PrivacyBudget budget{epsilon, s.delta};
      const PrivateRunReport report =
          strongly_convex
              ? Bst14StronglyConvex(data.train, s.model, config.passes,
                                    budget, s.sgd.radius, config.batch, seed)
              : Bst14Convex(data.train, s.model, config.passes, budget,
                            s.sgd.radius, config.batch, seed);
      row.sgd_seconds = report.sgd_seconds;
      row.noise_seconds = report.noise_seconds;
      released = report.private_model;
      break;
    }
  }

  row.test_accuracy = Accuracy(data.test, released);
  row.train_loss = EmpiricalRisk(s.model, data.train, released);
  if (!config.timings) {
    row.sgd_seconds.reset();
    row.noise_seconds.reset();
  }
  return row;
}

std::vector<ResultRow> RunExperiment(const ExperimentConfig& config) {
  const ExperimentData data = PrepareData(config);

  struct Cell {
    Algorithm algorithm;
    double epsilon;
    uint64_t seed;
  };
  // The full (algorithm, epsilon, seed) cross product, one row per cell;
  // noiseless cells ignore epsilon but still echo it.
  std::vector<Cell> cells;
  for (const Algorithm algorithm : config.algorithms) {
    for (const double epsilon : config.epsilons) {
      for (const uint64_t seed : config.seeds) {
        cells.push_back(Cell{algorithm, epsilon, seed});
      }
    }
  }

  std::vector<std::optional<ResultRow>> results(cells.size());
  std::vector<std::string> errors(cells.size());
  std::atomic<size_t> next{0};
  const int workers = WorkerCount(cells.size());
  auto worker = [&]() {
    for (;;) {
      const size_t index = next.fetch_add(1);
      if (index >= cells.size()) return;
      const Cell& cell = cells[index];
      try {
        results[index] =
            RunCell(data, config, cell.algorithm, cell.epsilon, cell.seed);
      } catch (const std::exception& e) {
        errors[index] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (std::thread& thread : pool) thread.join();

  std::vector<ResultRow> rows;
  rows.reserve(cells.size());
  for (size_t i = 0; i < cells.size(); ++i) {
    if (results[i].has_value()) {
      rows.push_back(std::move(*results[i]));
    } else {
      std::cerr << "skipping " << ToString(cells[i].algorithm)
                << " eps=" << cells[i].epsilon << " seed=" << cells[i].seed
                << ": " << errors[i] << "\n";
    }
  }
  return rows;
}

std::string FormatReport(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  os << "algorithm,epsilon,delta,k,b,seed,test_accuracy,train_loss,delta2,"
        "sgd_seconds,noise_seconds\n";
  for (const ResultRow& row : rows) {
    os << row.algorithm << ',' << FormatCompact(row.epsilon) << ','
       << FormatCompact(row.delta) << ',' << row.passes << ',' << row.batch
       << ',' << row.seed << ',' << FormatFixed(row.test_accuracy) << ','
       << FormatFixed(row.train_loss) << ','
       << (row.delta2 ? FormatCompact(*row.delta2) : "") << ','
       << (row.sgd_seconds ? FormatFixed(*row.sgd_seconds) : "") << ','
       << (row.noise_seconds ? FormatFixed(*row.noise_seconds) : "") << '\n';
  }
  return os.str();
}

void WriteReport(const std::vector<ResultRow>& rows, const std::string& path) {
  if (rows.empty()) throw std::runtime_error("report: no rows to write");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("report: cannot write " + path);
  out << FormatReport(rows);
}

void WriteDatasetCsv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("synth: cannot write " + path);
  char buffer[64];
  for (int64_t i = 0; i < ds.size(); ++i) {
    std::snprintf(buffer, sizeof(buffer), "%.0f", ds.label(i));
    out << buffer;
    for (int j = 0; j < ds.dim(); ++j) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", ds.features()(i, j));
      out << ',' << buffer;
    }
    out << '\n';
  }
}

}  // namespace bolton
