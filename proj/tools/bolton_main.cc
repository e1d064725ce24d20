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
//
// Command line harness around the bolton core library. Subcommands:
//   synth          generate a synthetic dataset CSV
//   train          noiseless permutation SGD
//   private-train  output-perturbed private SGD
//   baseline       per-iteration-noise baselines (bst14, scs13)
//   tune           grid search (private by default, --public for argmin)
//   sensitivity    print one analytic sensitivity bound as a CSV row
//   oracle         empirical-vs-analytic sensitivity comparison row
//   bench          timing-oriented experiment sweep
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bolton/experiment.h"
#include "bolton/oracle.h"
#include "bolton/rng.h"
#include "bolton/sensitivity.h"
#include "bolton/synthetic.h"
#include "bolton/tuning.h"

namespace {

using bolton::Algorithm;
using bolton::ExperimentConfig;
using bolton::StepSchedule;

struct SharedFlags {
  std::string config_path;
  std::string data_path;
  std::string format = "csv";
  int dim = 0;
  int64_t synth_m = 0;
  int synth_d = 0;
  double synth_margin = 0;
  double synth_flip = 0;
  uint64_t synth_seed = 0;
  double test_fraction = 0;
  int target_dim = 0;
  std::string loss;
  double lambda = 0;
  double huber_h = 0;
  std::vector<double> epsilons;
  double delta = 0;
  int passes = 0;
  int64_t batch = 0;
  double radius = 0;
  double eta = 0;
  std::string schedule;
  double exponent = 0;
  std::string bound;
  std::string averaging;
  uint64_t seed = 0;
  std::vector<uint64_t> seeds;
  std::string out;
  bool timings = false;
};

void AddSharedFlags(CLI::App* cmd, SharedFlags& f) {
  // --h is the Huber half-width, so help is long-form only.
  cmd->set_help_flag("--help", "print this help message and exit");
  cmd->add_option("--config", f.config_path,
                  "JSON config file; explicit flags override its fields");
  cmd->add_option("--data", f.data_path, "dataset file (csv or svmlight)");
  cmd->add_option("--format", f.format, "dataset format: csv|svmlight");
  cmd->add_option("--dim", f.dim, "declared feature dimension (svmlight)");
  cmd->add_option("--synth-m", f.synth_m, "synthetic training size");
  cmd->add_option("--synth-d", f.synth_d, "synthetic dimension");
  cmd->add_option("--synth-margin", f.synth_margin, "synthetic class margin");
  cmd->add_option("--synth-flip", f.synth_flip, "synthetic label flip prob");
  cmd->add_option("--synth-seed", f.synth_seed, "synthetic generator seed");
  cmd->add_option("--test-fraction", f.test_fraction, "held-out fraction");
  cmd->add_option("--project-dim", f.target_dim,
                  "random-projection target dimension (0 = off)");
  cmd->add_option("--loss", f.loss, "loss: logistic|huber");
  cmd->add_option("--lambda", f.lambda, "L2 regularization weight");
  cmd->add_option("--h", f.huber_h, "huber smoothing half-width");
  cmd->add_option("--epsilon", f.epsilons, "privacy budget(s) to sweep");
  cmd->add_option("--delta", f.delta, "privacy delta (default 1/m^2)");
  cmd->add_option("--passes", f.passes, "number of passes k");
  cmd->add_option("--batch", f.batch, "mini-batch size b");
  cmd->add_option("--radius", f.radius,
                  "projection radius R (default 1/lambda when lambda > 0)");
  cmd->add_option("--eta", f.eta,
                  "constant step size (default R/(L sqrt(m)))");
  cmd->add_option("--schedule", f.schedule,
                  "constant|decreasing|sqrt|strongly-convex-decreasing");
  cmd->add_option("--c", f.exponent, "schedule exponent c in [0,1)");
  cmd->add_option("--bound", f.bound,
                  "noise calibration: recursion|closed-form");
  cmd->add_option("--averaging", f.averaging, "released model: last|average");
  cmd->add_option("--seed", f.seed, "single run seed");
  cmd->add_option("--seeds", f.seeds, "list of run seeds");
  cmd->add_option("--out", f.out, "output CSV path");
  cmd->add_flag("--timings", f.timings, "fill the timing columns");
}

ExperimentConfig BuildConfig(const CLI::App* cmd, const SharedFlags& f) {
  ExperimentConfig config;
  if (cmd->count("--config")) config = bolton::LoadExperimentConfig(f.config_path);
  if (cmd->count("--data")) config.data_path = f.data_path;
  if (cmd->count("--format")) {
    if (f.format == "csv") {
      config.format = bolton::DatasetFormat::kCsv;
    } else if (f.format == "svmlight") {
      config.format = bolton::DatasetFormat::kSvmLight;
    } else {
      throw std::invalid_argument("unknown format: " + f.format);
    }
  }
  if (cmd->count("--dim")) config.declared_dim = f.dim;
  if (cmd->count("--synth-m")) config.synthetic.m = f.synth_m;
  if (cmd->count("--synth-d")) config.synthetic.d = f.synth_d;
  if (cmd->count("--synth-margin")) config.synthetic.margin = f.synth_margin;
  if (cmd->count("--synth-flip")) config.synthetic.flip_prob = f.synth_flip;
  if (cmd->count("--synth-seed")) config.synthetic.seed = f.synth_seed;
  if (cmd->count("--test-fraction")) config.test_fraction = f.test_fraction;
  if (cmd->count("--project-dim")) config.target_dim = f.target_dim;
  if (cmd->count("--loss")) {
    if (f.loss == "logistic") {
      config.loss = bolton::LossKind::kLogistic;
    } else if (f.loss == "huber") {
      config.loss = bolton::LossKind::kHuberSvm;
    } else {
      throw std::invalid_argument("unknown loss: " + f.loss);
    }
  }
  if (cmd->count("--lambda")) config.lambda = f.lambda;
  if (cmd->count("--h")) config.huber_h = f.huber_h;
  if (cmd->count("--epsilon")) config.epsilons = f.epsilons;
  if (cmd->count("--delta")) config.delta = f.delta;
  if (cmd->count("--passes")) config.passes = f.passes;
  if (cmd->count("--batch")) config.batch = f.batch;
  if (cmd->count("--radius")) config.radius = f.radius;
  if (cmd->count("--eta")) config.eta = f.eta;
  if (cmd->count("--schedule")) {
    if (f.schedule == "constant") {
      config.schedule_kind = StepSchedule::Kind::kConstant;
    } else if (f.schedule == "decreasing") {
      config.schedule_kind = StepSchedule::Kind::kConvexDecreasing;
    } else if (f.schedule == "sqrt") {
      config.schedule_kind = StepSchedule::Kind::kConvexSqrt;
    } else if (f.schedule == "strongly-convex-decreasing") {
      config.schedule_kind = StepSchedule::Kind::kStronglyConvexDecreasing;
    } else {
      throw std::invalid_argument("unknown schedule: " + f.schedule);
    }
  }
  if (cmd->count("--c")) config.schedule_exponent = f.exponent;
  if (cmd->count("--bound")) {
    if (f.bound == "recursion") {
      config.rule = bolton::SensitivityRule::kRecursion;
    } else if (f.bound == "closed-form") {
      config.rule = bolton::SensitivityRule::kClosedForm;
    } else {
      throw std::invalid_argument("unknown bound rule: " + f.bound);
    }
  }
  if (cmd->count("--averaging")) {
    if (f.averaging == "last") {
      config.averaging = bolton::Averaging::kLastIterate;
    } else if (f.averaging == "average") {
      config.averaging = bolton::Averaging::kUniformAverage;
    } else {
      throw std::invalid_argument("unknown averaging: " + f.averaging);
    }
  }
  if (cmd->count("--seeds")) config.seeds = f.seeds;
  if (cmd->count("--seed")) config.seeds = {f.seed};
  if (cmd->count("--out")) config.out_path = f.out;
  if (cmd->count("--timings")) config.timings = f.timings;
  return config;
}

void EmitReport(const std::vector<bolton::ResultRow>& rows,
                const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << bolton::FormatReport(rows);
  } else {
    bolton::WriteReport(rows, out_path);
  }
}

int RunSweep(const CLI::App* cmd, const SharedFlags& flags,
             std::vector<Algorithm> algorithms) {
  ExperimentConfig config = BuildConfig(cmd, flags);
  config.algorithms = std::move(algorithms);
  EmitReport(bolton::RunExperiment(config), config.out_path);
  return 0;
}

int RunSynth(const CLI::App* cmd, const SharedFlags& flags) {
  const ExperimentConfig config = BuildConfig(cmd, flags);
  if (config.out_path.empty()) {
    throw std::invalid_argument("synth: --out is required");
  }
  const bolton::Dataset ds = bolton::GenerateSynthetic(
      config.synthetic.m, config.synthetic.d, config.synthetic.margin,
      config.synthetic.flip_prob, config.synthetic.seed);
  bolton::WriteDatasetCsv(ds, config.out_path);
  return 0;
}

int RunTune(const CLI::App* cmd, const SharedFlags& flags,
            const std::vector<int>& grid_k,
            const std::vector<double>& grid_lambda, double epsilon_tune,
            bool public_mode, const std::string& algo_name) {
  ExperimentConfig config = BuildConfig(cmd, flags);
  if (grid_k.empty() || grid_lambda.empty()) {
    throw std::invalid_argument("tune: --grid-k and --grid-lambda required");
  }
  std::vector<bolton::Candidate> grid;
  for (const int k : grid_k) {
    for (const double lambda : grid_lambda) {
      grid.push_back(bolton::Candidate{k, lambda, 0.0, 0});
    }
  }
  const double epsilon =
      config.epsilons.empty() ? 1.0 : config.epsilons.front();
  const Algorithm algorithm = bolton::AlgorithmFromString(algo_name);
  const bolton::ExperimentData data = bolton::PrepareData(config);

  // Candidate trainers reuse the sweep cell runner semantics: the candidate
  // overrides passes and lambda, everything else comes from the config.
  auto trainer = [&](const bolton::Dataset& train,
                     const bolton::Candidate& candidate,
                     uint64_t seed) -> bolton::PrivateRunReport {
    ExperimentConfig local = config;
    local.passes = candidate.passes;
    local.lambda = candidate.lambda;
    if (candidate.eta > 0.0) local.eta = candidate.eta;
    if (candidate.batch > 0) local.batch = candidate.batch;
    const bolton::ResolvedSettings s =
        bolton::ResolveSettings(local, train.size(), seed);
    bolton::PrivateRunReport report;
    if (algorithm == Algorithm::kNoiseless) {
      const bolton::SgdResult result =
          bolton::RunPsgd(train, s.model, s.schedule, s.sgd);
      report.algorithm = "noiseless";
      report.noiseless_model = result.Released(s.sgd.averaging);
      report.noise = Eigen::VectorXd::Zero(train.dim());
      report.private_model = report.noiseless_model;
      return report;
    }
    const bolton::PrivacyBudget budget{epsilon, s.delta};
    return local.lambda > 0.0
               ? bolton::PrivatePsgdStronglyConvex(train, s.model, s.sgd,
                                                   budget, local.rule)
               : bolton::PrivatePsgdConvex(train, s.model, s.schedule, s.sgd,
                                           budget, local.rule);
  };

  const uint64_t seed = config.seeds.front();
  std::vector<int64_t> errors;
  size_t chosen = 0;
  if (public_mode) {
    const bolton::PublicTuneResult result =
        bolton::PublicTune(data.train, grid, trainer, seed);
    errors = result.validation_errors;
    chosen = result.chosen_index;
  } else {
    const bolton::TuneResult result = bolton::PrivateTune(
        data.train, grid, trainer,
        bolton::PrivacyBudget{epsilon, config.delta > 0 ? config.delta : 0.0},
        epsilon_tune, seed);
    errors = result.validation_errors;
    chosen = result.chosen_index;
    std::cerr << "tune: total budget epsilon=" << epsilon + epsilon_tune
              << " (train " << epsilon << " + select " << epsilon_tune
              << "), dropped rows: " << result.dropped_rows << "\n";
  }

  std::ostringstream os;
  os << "candidate,k,lambda,validation_errors,chosen\n";
  for (size_t i = 0; i < grid.size(); ++i) {
    char lambda_str[32];
    std::snprintf(lambda_str, sizeof(lambda_str), "%.6g", grid[i].lambda);
    os << i << ',' << grid[i].passes << ',' << lambda_str << ',' << errors[i]
       << ',' << (i == chosen ? 1 : 0) << '\n';
  }
  if (config.out_path.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream out(config.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("tune: cannot write " + config.out_path);
    out << os.str();
  }
  return 0;
}

int RunSensitivity(const CLI::App* cmd, const SharedFlags& flags) {
  ExperimentConfig config = BuildConfig(cmd, flags);
  const int64_t m = config.synthetic.m;
  const bolton::ResolvedSettings s =
      bolton::ResolveSettings(config, m, config.seeds.front());
  const bolton::LossConstants constants = bolton::ComputeConstants(s.model);
  const bolton::SensitivityBound bound =
      config.rule == bolton::SensitivityRule::kRecursion
          ? bolton::RecursionBound(s.schedule, m, config.passes, config.batch,
                                   constants)
          : bolton::ClosedFormBound(s.schedule, m, config.passes,
                                    config.batch, constants);
  std::ostringstream os;
  os << "delta2,provenance,schedule,k,m,b,lipschitz,smoothness,"
        "strong_convexity\n";
  char value[64];
  std::snprintf(value, sizeof(value), "%.12g", bound.delta2);
  os << value << ',' << bound.provenance << ',' << bound.schedule << ','
     << config.passes << ',' << m << ',' << config.batch << ','
     << constants.lipschitz << ',' << constants.smoothness << ','
     << constants.strong_convexity << '\n';
  if (config.out_path.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream out(config.out_path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("sensitivity: cannot write " + config.out_path);
    }
    out << os.str();
  }
  return 0;
}

int RunOracle(const CLI::App* cmd, const SharedFlags& flags, int trials) {
  ExperimentConfig config = BuildConfig(cmd, flags);
  const bolton::SyntheticSpec& spec = config.synthetic;
  const bolton::Dataset ds = bolton::GenerateSynthetic(
      spec.m, spec.d, spec.margin, spec.flip_prob, spec.seed);
  const bolton::ResolvedSettings s =
      bolton::ResolveSettings(config, ds.size(), config.seeds.front());
  const bolton::LossConstants constants = bolton::ComputeConstants(s.model);
  bolton::SgdConfig sgd = s.sgd;
  sgd.averaging = bolton::Averaging::kLastIterate;
  bolton::Rng pool_rng(bolton::DeriveSeed(config.seeds.front(), 0x706f6f6c));
  const double empirical = bolton::EmpiricalSensitivity(
      ds, s.model, s.schedule, sgd, trials, pool_rng);
  const double recursion =
      bolton::RecursionBound(s.schedule, ds.size(), config.passes,
                             config.batch, constants)
          .delta2;
  const double closed =
      bolton::ClosedFormBound(s.schedule, ds.size(), config.passes,
                              config.batch, constants)
          .delta2;
  std::ostringstream os;
  os << "loss,lambda,schedule,k,m,b,d,empirical,recursion,closed_form,"
        "ratio\n";
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), "%s,%.6g,%s,%d,%lld,%lld,%d,%.12g,%.12g,%.12g,%.6f",
                bolton::ToString(config.loss).c_str(), config.lambda,
                s.schedule.Describe().c_str(), config.passes,
                static_cast<long long>(ds.size()),
                static_cast<long long>(config.batch), ds.dim(), empirical,
                recursion, closed, recursion > 0 ? empirical / recursion : 0.0);
  os << buffer << '\n';
  if (config.out_path.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream out(config.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("oracle: cannot write " + config.out_path);
    out << os.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "bolton: bolt-on differentially private permutation SGD via output "
      "perturbation"};
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);

  SharedFlags flags[8];
  CLI::App* synth = app.add_subcommand("synth", "generate synthetic data");
  AddSharedFlags(synth, flags[0]);
  CLI::App* train = app.add_subcommand("train", "noiseless PSGD");
  AddSharedFlags(train, flags[1]);
  CLI::App* private_train =
      app.add_subcommand("private-train", "output-perturbed private PSGD");
  AddSharedFlags(private_train, flags[2]);
  CLI::App* baseline =
      app.add_subcommand("baseline", "per-iteration-noise baselines");
  AddSharedFlags(baseline, flags[3]);
  std::string baseline_algo = "bst14";
  baseline->add_option("--algo", baseline_algo, "bst14|scs13");
  CLI::App* tune = app.add_subcommand("tune", "hyper-parameter search");
  AddSharedFlags(tune, flags[4]);
  std::vector<int> grid_k;
  std::vector<double> grid_lambda;
  double epsilon_tune = 0.5;
  bool public_mode = false;
  std::string tune_algo = "output_perturbation";
  tune->add_option("--grid-k", grid_k, "candidate pass counts");
  tune->add_option("--grid-lambda", grid_lambda, "candidate lambdas");
  tune->add_option("--epsilon-tune", epsilon_tune, "selection budget");
  tune->add_flag("--public", public_mode, "argmin on public data");
  tune->add_option("--algo", tune_algo, "trainer to tune");
  CLI::App* sensitivity =
      app.add_subcommand("sensitivity", "print one analytic bound");
  AddSharedFlags(sensitivity, flags[5]);
  CLI::App* oracle =
      app.add_subcommand("oracle", "empirical sensitivity comparison");
  AddSharedFlags(oracle, flags[6]);
  int oracle_trials = 1;
  oracle->add_option("--trials", oracle_trials,
                     "extra permutation seeds per probe");
  CLI::App* bench = app.add_subcommand("bench", "timing sweep");
  AddSharedFlags(bench, flags[7]);
  std::vector<std::string> bench_algos = {"noiseless", "output_perturbation"};
  bench->add_option("--algos", bench_algos, "algorithms to time");

  try {
    app.parse(argc, argv);
    if (synth->parsed()) return RunSynth(synth, flags[0]);
    if (train->parsed()) {
      ExperimentConfig config = BuildConfig(train, flags[1]);
      config.algorithms = {Algorithm::kNoiseless};
      // One row per seed; noiseless training has no budget axis to sweep.
      if (!train->count("--epsilon")) config.epsilons = {0.0};
      EmitReport(bolton::RunExperiment(config), config.out_path);
      return 0;
    }
    if (private_train->parsed()) {
      return RunSweep(private_train, flags[2],
                      {Algorithm::kOutputPerturbation});
    }
    if (baseline->parsed()) {
      return RunSweep(baseline, flags[3],
                      {bolton::AlgorithmFromString(baseline_algo)});
    }
    if (tune->parsed()) {
      return RunTune(tune, flags[4], grid_k, grid_lambda, epsilon_tune,
                     public_mode, tune_algo);
    }
    if (sensitivity->parsed()) return RunSensitivity(sensitivity, flags[5]);
    if (oracle->parsed()) return RunOracle(oracle, flags[6], oracle_trials);
    if (bench->parsed()) {
      std::vector<Algorithm> algorithms;
      for (const std::string& name : bench_algos) {
        algorithms.push_back(bolton::AlgorithmFromString(name));
      }
      return RunSweep(bench, flags[7], std::move(algorithms));
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 3;
  }
}
