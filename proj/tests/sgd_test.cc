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

#include "bolton/sgd.h"

#include <cmath>

#include "gtest/gtest.h"

#include "bolton/rng.h"

namespace bolton {
namespace {

LossConstants Constants(double lipschitz, double smoothness, double gamma) {
  LossConstants c;
  c.lipschitz = lipschitz;
  c.smoothness = smoothness;
  c.strong_convexity = gamma;
  return c;
}

TEST(StepSizeTest, ConstantIsConstant) {
  const StepSchedule s = StepSchedule::Constant(0.1);
  EXPECT_EQ(StepSize(s, 7, 100, Constants(1, 1, 0)), 0.1);
}

TEST(StepSizeTest, ConvexDecreasingFormula) {
  const StepSchedule s = StepSchedule::ConvexDecreasing(0.5);
  EXPECT_NEAR(StepSize(s, 1, 100, Constants(1, 1, 0)), 2.0 / 11.0, 1e-15);
}

TEST(StepSizeTest, ConvexSqrtFormula) {
  const StepSchedule s = StepSchedule::ConvexSqrt(0.0);
  EXPECT_NEAR(StepSize(s, 4, 100, Constants(1, 2, 0)), 2.0 / (2.0 * 3.0),
              1e-15);
}

TEST(StepSizeTest, StronglyConvexTakesTheMinimum) {
  const StepSchedule s = StepSchedule::StronglyConvexDecreasing();
  EXPECT_EQ(StepSize(s, 50, 100, Constants(1, 1, 0.01)), 1.0);
  EXPECT_NEAR(StepSize(s, 500, 100, Constants(1, 1, 0.01)), 0.2, 1e-15);
}

TEST(StepSizeTest, RejectsZeroIndex) {
  EXPECT_THROW(StepSize(StepSchedule::Constant(0.1), 0, 10,
                        Constants(1, 1, 0)),
               std::invalid_argument);
}

TEST(ValidateScheduleTest, EnforcesStepCaps) {
  EXPECT_NO_THROW(ValidateSchedule(StepSchedule::Constant(2.0),
                                   Constants(1, 1, 0)));
  EXPECT_THROW(ValidateSchedule(StepSchedule::Constant(2.1),
                                Constants(1, 1, 0)),
               std::invalid_argument);
  EXPECT_THROW(ValidateSchedule(StepSchedule::Constant(1.5),
                                Constants(1, 1, 0.1)),
               std::invalid_argument);
  EXPECT_THROW(ValidateSchedule(StepSchedule::ConvexDecreasing(1.0),
                                Constants(1, 1, 0)),
               std::invalid_argument);
  EXPECT_THROW(ValidateSchedule(StepSchedule::StronglyConvexDecreasing(),
                                Constants(1, 1, 0)),
               std::invalid_argument);
}

TEST(ProjectTest, InsideBallUntouched) {
  Eigen::VectorXd w(2);
  w << 0.3, 0.4;
  const Eigen::VectorXd projected = Project(w, 1.0);
  EXPECT_EQ(projected[0], 0.3);
  EXPECT_EQ(projected[1], 0.4);
}

TEST(ProjectTest, ScalesOntoTheSphere) {
  Eigen::VectorXd w(2);
  w << 3.0, 4.0;
  const Eigen::VectorXd projected = Project(w, 1.0);
  EXPECT_NEAR(projected[0], 0.6, 1e-14);
  EXPECT_NEAR(projected[1], 0.8, 1e-14);
}

TEST(ProjectTest, IdempotentExactly) {
  Rng rng(9);
  for (int probe = 0; probe < 100; ++probe) {
    Eigen::VectorXd w(5);
    for (int i = 0; i < 5; ++i) w[i] = 4.0 * rng.NextGaussian();
    const Eigen::VectorXd once = Project(w, 1.3);
    const Eigen::VectorXd twice = Project(once, 1.3);
    EXPECT_TRUE(once == twice);
  }
}

TEST(ProjectTest, UnboundedIsIdentity) {
  Eigen::VectorXd w(2);
  w << 30.0, 40.0;
  EXPECT_TRUE(Project(w, kUnbounded) == w);
}

TEST(ProjectTest, NeverIncreasesDistance) {
  Rng rng(10);
  for (int probe = 0; probe < 2000; ++probe) {
    Eigen::VectorXd u(4), v(4);
    for (int i = 0; i < 4; ++i) {
      u[i] = 3.0 * rng.NextGaussian();
      v[i] = 3.0 * rng.NextGaussian();
    }
    EXPECT_LE((Project(u, 1.0) - Project(v, 1.0)).norm(),
              (u - v).norm() + 1e-12);
  }
}

Dataset SyntheticRows(int64_t m, int d, uint64_t seed) {
  Rng rng(seed);
  RowMatrixXd x(m, d);
  Eigen::VectorXd y(m);
  for (int64_t i = 0; i < m; ++i) {
    const Eigen::VectorXd row = rng.NextUnitSphere(d);
    x.row(i) = row.transpose() * rng.NextUnit();
    y[i] = rng.NextBelow(2) == 0 ? -1.0 : 1.0;
  }
  return Dataset(std::move(x), std::move(y));
}

TEST(RunPsgdTest, ZeroGradientKeepsModelAtZero) {
  // All-zero features with lambda = 0 make every gradient vanish.
  RowMatrixXd x = RowMatrixXd::Zero(6, 3);
  Eigen::VectorXd y(6);
  for (int64_t i = 0; i < 6; ++i) y[i] = i % 2 == 0 ? 1.0 : -1.0;
  const Dataset ds(x, y);
  SgdConfig cfg;
  cfg.passes = 3;
  cfg.seed = 11;
  const SgdResult result = RunPsgd(ds, LossModel::Logistic(0.0),
                                   StepSchedule::Constant(0.5), cfg);
  EXPECT_EQ(result.final_iterate.norm(), 0.0);
  EXPECT_EQ(result.averaged_iterate.norm(), 0.0);
}

TEST(RunPsgdTest, MatchesHandUnrolledScalarRecurrence) {
  // m = 2, d = 1, one pass of logistic SGD re-derived with scalar arithmetic.
  RowMatrixXd x(2, 1);
  x(0, 0) = 0.8;
  x(1, 0) = -0.5;
  Eigen::VectorXd y(2);
  y[0] = 1.0;
  y[1] = -1.0;
  const Dataset ds(x, y);
  const double eta = 0.3;
  SgdConfig cfg;
  cfg.seed = 17;
  cfg.averaging = Averaging::kUniformAverage;
  const SgdResult result = RunPsgd(ds, LossModel::Logistic(0.0),
                                   StepSchedule::Constant(eta), cfg);

  const Permutation perm = SamplePermutation(2, cfg.seed);
  auto sigmoid = [](double t) { return 1.0 / (1.0 + std::exp(-t)); };
  double w = 0.0;
  double sum = 0.0;
  for (int step = 0; step < 2; ++step) {
    const double xi = x(perm.mapping[step], 0);
    const double yi = y[perm.mapping[step]];
    w -= eta * (-yi * xi * sigmoid(-yi * xi * w));
    sum += w;
  }
  EXPECT_NEAR(result.final_iterate[0], w, 1e-15);
  EXPECT_NEAR(result.averaged_iterate[0], sum / 2.0, 1e-15);
  EXPECT_EQ(result.update_count, 2);
}

TEST(RunPsgdTest, DeterministicGivenSeed) {
  const Dataset ds = SyntheticRows(30, 4, 21);
  SgdConfig cfg;
  cfg.passes = 3;
  cfg.batch_size = 4;
  cfg.seed = 5;
  const LossModel model = LossModel::Logistic(0.0);
  const StepSchedule schedule = StepSchedule::Constant(0.5);
  const SgdResult a = RunPsgd(ds, model, schedule, cfg);
  const SgdResult b = RunPsgd(ds, model, schedule, cfg);
  EXPECT_TRUE(a.final_iterate == b.final_iterate);
  EXPECT_TRUE(a.averaged_iterate == b.averaged_iterate);
  EXPECT_EQ(a.step_sizes, b.step_sizes);
}

TEST(RunPsgdTest, DropsBatchRemainder) {
  const Dataset ds = SyntheticRows(23, 3, 22);
  SgdConfig cfg;
  cfg.passes = 2;
  cfg.batch_size = 5;
  cfg.seed = 1;
  const SgdResult result = RunPsgd(ds, LossModel::Logistic(0.0),
                                   StepSchedule::Constant(0.5), cfg);
  EXPECT_EQ(result.update_count, 8);  // floor(23/5) = 4 updates per pass
  EXPECT_EQ(result.step_sizes.size(), 8u);
}

TEST(RunPsgdTest, AveragedIterateMatchesManualAccumulation) {
  const Dataset ds = SyntheticRows(8, 2, 23);
  const LossModel model = LossModel::Logistic(0.0);
  const double eta = 0.4;
  SgdConfig cfg;
  cfg.passes = 2;
  cfg.seed = 3;
  const SgdResult result =
      RunPsgd(ds, model, StepSchedule::Constant(eta), cfg);

  // Re-run the recurrence with explicit per-iterate bookkeeping.
  const Permutation perm = SamplePermutation(8, cfg.seed);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(2);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(2);
  for (int pass = 0; pass < 2; ++pass) {
    for (int64_t i = 0; i < 8; ++i) {
      const int64_t index = perm.mapping[i];
      w -= eta * LossGradient(model, w, ds.row(index), ds.label(index));
      sum += w;
    }
  }
  EXPECT_NEAR((result.final_iterate - w).norm(), 0.0, 1e-12);
  EXPECT_NEAR((result.averaged_iterate - sum / 16.0).norm(), 0.0, 1e-12);
}

TEST(RunPsgdTest, FreshPermutationChangesTrajectory) {
  const Dataset ds = SyntheticRows(16, 3, 29);
  SgdConfig cfg;
  cfg.passes = 3;
  cfg.seed = 2;
  const LossModel model = LossModel::Logistic(0.0);
  const StepSchedule schedule = StepSchedule::Constant(0.8);
  const SgdResult reused = RunPsgd(ds, model, schedule, cfg);
  cfg.fresh_permutation_per_pass = true;
  const SgdResult fresh_a = RunPsgd(ds, model, schedule, cfg);
  const SgdResult fresh_b = RunPsgd(ds, model, schedule, cfg);
  EXPECT_TRUE(fresh_a.final_iterate == fresh_b.final_iterate);
  EXPECT_GT((fresh_a.final_iterate - reused.final_iterate).norm(), 0.0);
}

TEST(RunPsgdTest, IteratesStayInsideProjectionBall) {
  const Dataset ds = SyntheticRows(40, 4, 31);
  SgdConfig cfg;
  cfg.passes = 4;
  cfg.radius = 0.05;
  cfg.seed = 6;
  const SgdResult result = RunPsgd(ds, LossModel::Logistic(0.0),
                                   StepSchedule::Constant(1.0), cfg);
  EXPECT_LE(result.final_iterate.norm(), 0.05 + 1e-12);
  EXPECT_LE(result.averaged_iterate.norm(), 0.05 + 1e-12);
}

TEST(RunPsgdTest, RejectsBadInputs) {
  const Dataset ds = SyntheticRows(5, 2, 37);
  SgdConfig cfg;
  cfg.batch_size = 6;
  EXPECT_THROW(RunPsgd(ds, LossModel::Logistic(0.0),
                       StepSchedule::Constant(0.1), cfg),
               std::invalid_argument);

  RowMatrixXd big(2, 2);
  big << 3.0, 4.0, 0.0, 0.0;
  Eigen::VectorXd y(2);
  y << 1.0, -1.0;
  const Dataset unnormalized(big, y);
  SgdConfig ok;
  EXPECT_THROW(RunPsgd(unnormalized, LossModel::Logistic(0.0),
                       StepSchedule::Constant(0.1), ok),
               std::invalid_argument);
}

// One gradient update G(w) = w - eta * grad(w, example) on a shared example.
Eigen::VectorXd GradientUpdate(const LossModel& model, double eta,
                               const Eigen::VectorXd& w,
                               const Eigen::RowVectorXd& x, double y) {
  return w - eta * LossGradient(model, w, x, y);
}

TEST(GradientUpdatePropertiesTest, ConvexUpdatesAreOneExpansive) {
  const LossModel model = LossModel::Logistic(0.0);
  const double eta = 2.0;  // exactly 2/beta
  Rng rng(41);
  for (int probe = 0; probe < 5000; ++probe) {
    Eigen::VectorXd u(3), v(3);
    for (int i = 0; i < 3; ++i) {
      u[i] = 3.0 * rng.NextGaussian();
      v[i] = 3.0 * rng.NextGaussian();
    }
    const Eigen::RowVectorXd x = rng.NextUnitSphere(3).transpose();
    const double y = rng.NextBelow(2) == 0 ? -1.0 : 1.0;
    const double after = (GradientUpdate(model, eta, u, x, y) -
                          GradientUpdate(model, eta, v, x, y))
                             .norm();
    EXPECT_LE(after, (u - v).norm() * (1.0 + 1e-9));
  }
}

TEST(GradientUpdatePropertiesTest, StronglyConvexUpdatesContract) {
  const LossModel model = LossModel::Logistic(0.05, 10.0);
  const LossConstants c = ComputeConstants(model);
  const double eta = 1.0 / c.smoothness;
  Rng rng(43);
  for (int probe = 0; probe < 5000; ++probe) {
    Eigen::VectorXd u(3), v(3);
    for (int i = 0; i < 3; ++i) {
      u[i] = 3.0 * rng.NextGaussian();
      v[i] = 3.0 * rng.NextGaussian();
    }
    const Eigen::RowVectorXd x = rng.NextUnitSphere(3).transpose();
    const double y = rng.NextBelow(2) == 0 ? -1.0 : 1.0;
    const double after = (GradientUpdate(model, eta, u, x, y) -
                          GradientUpdate(model, eta, v, x, y))
                             .norm();
    EXPECT_LE(after, (1.0 - eta * c.strong_convexity) * (u - v).norm() *
                         (1.0 + 1e-9));
  }
}

TEST(GradientUpdatePropertiesTest, UpdatesAreEtaLBounded) {
  for (const LossModel& model :
       {LossModel::Logistic(0.0), LossModel::Logistic(0.01, 100.0),
        LossModel::HuberSvm(0.1, 0.0)}) {
    const LossConstants c = ComputeConstants(model);
    const double radius = std::isfinite(model.radius) ? model.radius : 3.0;
    const double eta = 1.0 / c.smoothness;
    Rng rng(47);
    for (int probe = 0; probe < 3000; ++probe) {
      Eigen::VectorXd w = rng.NextUnitSphere(3) * (radius * rng.NextUnit());
      const Eigen::RowVectorXd x = rng.NextUnitSphere(3).transpose();
      const double y = rng.NextBelow(2) == 0 ? -1.0 : 1.0;
      EXPECT_LE((GradientUpdate(model, eta, w, x, y) - w).norm(),
                eta * c.lipschitz + 1e-9);
    }
  }
}

TEST(ModelAveragerTest, FirstIterateOnlyWhenRestZeroWeighted) {
  ModelAverager averager;
  Eigen::VectorXd w1(2), w2(2);
  w1 << 1.0, 2.0;
  w2 << -5.0, 7.0;
  averager.Add(w1, 1.0);
  averager.Add(w2, 0.0);
  EXPECT_TRUE(averager.WeightedSum() == w1);
}

TEST(ModelAveragerTest, UniformOverEqualIteratesIsThatIterate) {
  ModelAverager averager;
  Eigen::VectorXd w(2);
  w << 0.5, -0.25;
  for (int i = 0; i < 4; ++i) averager.Add(w, 0.25);
  EXPECT_NEAR((averager.WeightedSum() - w).norm(), 0.0, 1e-15);
}

TEST(ModelAveragerTest, UniformScalarAverage) {
  ModelAverager averager;
  for (const double value : {1.0, 2.0, 3.0}) {
    Eigen::VectorXd w(1);
    w << value;
    averager.Add(w, 1.0 / 3.0);
  }
  EXPECT_NEAR(averager.WeightedSum()[0], 2.0, 1e-15);
  EXPECT_NEAR(averager.TotalWeight(), 1.0, 1e-15);
}

TEST(ModelAveragerTest, RejectsNegativeWeights) {
  ModelAverager averager;
  Eigen::VectorXd w(1);
  w << 1.0;
  EXPECT_THROW(averager.Add(w, -0.1), std::invalid_argument);
}

}  // namespace
}  // namespace bolton
