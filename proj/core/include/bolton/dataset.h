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

#ifndef BOLTON_DATASET_H_
#define BOLTON_DATASET_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace bolton {

// Slack allowed on the unit-norm feature invariant.
inline constexpr double kNormSlack = 1e-12;

// Dense row-major feature storage; rows are examples.
using RowMatrixXd =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// One labeled example. Labels are exactly -1 or +1.
struct Example {
  Eigen::VectorXd x;
  double y = 1.0;
};

// An ordered labeled training set. Immutable after construction; safe to
// share read-only across threads.
class Dataset {
 public:
  Dataset(RowMatrixXd features, Eigen::VectorXd labels);

  int64_t size() const { return features_.rows(); }
  int dim() const { return static_cast<int>(features_.cols()); }

  const RowMatrixXd& features() const { return features_; }
  const Eigen::VectorXd& labels() const { return labels_; }

  auto row(int64_t i) const { return features_.row(i); }
  double label(int64_t i) const { return labels_[i]; }

  Example example(int64_t i) const {
    return Example{features_.row(i).transpose(), labels_[i]};
  }

  // Copy with row `i` replaced; used to build neighboring datasets.
  Dataset WithRow(int64_t i, const Example& replacement) const;

 private:
  RowMatrixXd features_;
  Eigen::VectorXd labels_;
};

enum class DatasetFormat { kCsv, kSvmLight };

// Loads a dataset from disk. CSV rows are "label,f1,...,fd" with no header.
// SVMLight rows are "label idx:val ..." with 1-based indices; `dim` gives
// the feature dimension explicitly, or 0 to infer it as the largest index
// seen. Raw labels are mapped onto {-1,+1} by sorted order (smaller -> -1);
// more than two distinct labels is an error.
Dataset LoadDataset(const std::string& path, DatasetFormat format,
                    int dim = 0);

// Scale-down-only normalization: x -> x / max(1, |x|). Idempotent; rows
// already inside the unit ball are returned bit-identical.
Dataset Normalize(const Dataset& ds);

// Returns true if every row satisfies |x| <= 1 + kNormSlack.
bool IsNormalized(const Dataset& ds);

// Gaussian projection matrix with i.i.d. N(0, 1/target_dim) entries,
// generated row-major from `seed`.
RowMatrixXd GaussianProjectionMatrix(int target_dim, int source_dim,
                                     uint64_t seed);

// Applies the seeded Gaussian projection to every row (the same matrix for
// all rows, so neighboring datasets stay neighboring) and re-normalizes.
Dataset RandomProjection(const Dataset& ds, int target_dim, uint64_t seed);

// A seeded bijection on {0..m-1}.
struct Permutation {
  std::vector<int64_t> mapping;
  uint64_t seed = 0;
};

// Uniform permutation of [m] via a Fisher-Yates shuffle of a seeded stream.
Permutation SamplePermutation(int64_t m, uint64_t seed);

// Seeded shuffle-then-split into (train, test) with sizes
// ceil(m*(1-f)) and m - ceil(m*(1-f)).
std::pair<Dataset, Dataset> TrainTestSplit(const Dataset& ds,
                                           double test_fraction,
                                           uint64_t seed);

}  // namespace bolton

#endif  // BOLTON_DATASET_H_
