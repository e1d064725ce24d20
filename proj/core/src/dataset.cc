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

#include "bolton/dataset.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bolton/rng.h"

namespace bolton {
namespace {

std::string RowColContext(int64_t row, int64_t col) {
  std::ostringstream os;
  os << " (row " << row + 1 << ", column " << col + 1 << ")";
  return os.str();
}

double ParseReal(const std::string& token, int64_t row, int64_t col) {
  size_t pos = 0;
  double value = 0;
  try {
    value = std::stod(token, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("parse failure: bad number '" + token + "'" +
                             RowColContext(row, col));
  }
  if (pos != token.size()) {
    throw std::runtime_error("parse failure: trailing characters in '" +
                             token + "'" + RowColContext(row, col));
  }
  return value;
}

// Maps raw labels onto {-1,+1}: accept labels already in {-1,+1}; otherwise
// map the two distinct raw values by sorted order.
void MapLabels(Eigen::VectorXd& labels) {
  std::map<double, int64_t> distinct;
  for (int64_t i = 0; i < labels.size(); ++i) distinct[labels[i]]++;
  if (distinct.size() > 2) {
    throw std::runtime_error(
        "labels not mappable to two classes: found " +
        std::to_string(distinct.size()) + " distinct values");
  }
  bool already_binary = true;
  for (const auto& [value, count] : distinct) {
    if (value != -1.0 && value != 1.0) already_binary = false;
  }
  if (already_binary) return;
  if (distinct.size() < 2) {
    throw std::runtime_error(
        "labels not mappable to two classes: a single non {-1,+1} value");
  }
  const double low = distinct.begin()->first;
  for (int64_t i = 0; i < labels.size(); ++i) {
    labels[i] = labels[i] == low ? -1.0 : 1.0;
  }
}

Dataset LoadCsv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::vector<double> labels;
  std::string line;
  int64_t line_no = 0;
  int64_t dim = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string token;
    std::vector<double> values;
    int64_t col = 0;
    while (std::getline(ss, token, ',')) {
      values.push_back(ParseReal(token, line_no - 1, col));
      ++col;
    }
    if (values.size() < 2) {
      throw std::runtime_error("parse failure: need a label and features" +
                               RowColContext(line_no - 1, 0));
    }
    const int64_t row_dim = static_cast<int64_t>(values.size()) - 1;
    if (dim < 0) {
      dim = row_dim;
    } else if (row_dim != dim) {
      throw std::runtime_error(
          "inconsistent dimension: expected " + std::to_string(dim) +
          " features, got " + std::to_string(row_dim) +
          RowColContext(line_no - 1, values.size() - 1));
    }
    labels.push_back(values[0]);
    values.erase(values.begin());
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw std::runtime_error("parse failure: empty dataset");
  RowMatrixXd features(rows.size(), dim);
  Eigen::VectorXd label_vec(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (int64_t j = 0; j < dim; ++j) features(i, j) = rows[i][j];
    label_vec[i] = labels[i];
  }
  MapLabels(label_vec);
  return Dataset(std::move(features), std::move(label_vec));
}

Dataset LoadSvmLight(std::istream& in, int dim) {
  struct SparseRow {
    double label;
    std::vector<std::pair<int64_t, double>> entries;
  };
  std::vector<SparseRow> rows;
  std::string line;
  int64_t line_no = 0;
  int64_t max_index = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string token;
    if (!(ss >> token)) continue;
    SparseRow row;
    row.label = ParseReal(token, line_no - 1, 0);
    int64_t col = 1;
    while (ss >> token) {
      const size_t colon = token.find(':');
      if (colon == std::string::npos) {
        throw std::runtime_error("parse failure: expected idx:val, got '" +
                                 token + "'" +
                                 RowColContext(line_no - 1, col));
      }
      const std::string idx_str = token.substr(0, colon);
      const std::string val_str = token.substr(colon + 1);
      int64_t index = 0;
      try {
        index = std::stoll(idx_str);
      } catch (const std::exception&) {
        throw std::runtime_error("parse failure: bad index '" + idx_str +
                                 "'" + RowColContext(line_no - 1, col));
      }
      if (index < 1) {
        throw std::runtime_error("parse failure: indices are 1-based" +
                                 RowColContext(line_no - 1, col));
      }
      row.entries.emplace_back(index,
                               ParseReal(val_str, line_no - 1, col));
      max_index = std::max(max_index, index);
      ++col;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("parse failure: empty dataset");
  int64_t d = dim > 0 ? dim : max_index;
  if (dim > 0 && max_index > dim) {
    throw std::runtime_error("inconsistent dimension: index " +
                             std::to_string(max_index) +
                             " exceeds declared dimension " +
                             std::to_string(dim));
  }
  if (d < 1) throw std::runtime_error("parse failure: no features seen");
  RowMatrixXd features = RowMatrixXd::Zero(rows.size(), d);
  Eigen::VectorXd labels(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    labels[i] = rows[i].label;
    for (const auto& [index, value] : rows[i].entries) {
      features(i, index - 1) = value;
    }
  }
  MapLabels(labels);
  return Dataset(std::move(features), std::move(labels));
}

}  // namespace

Dataset::Dataset(RowMatrixXd features, Eigen::VectorXd labels)
    : features_(std::move(features)), labels_(std::move(labels)) {
  if (features_.rows() == 0) {
    throw std::invalid_argument("Dataset: needs at least one example");
  }
  if (features_.rows() != labels_.size()) {
    throw std::invalid_argument("Dataset: feature/label count mismatch");
  }
  for (int64_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] != -1.0 && labels_[i] != 1.0) {
      throw std::invalid_argument("Dataset: labels must be exactly -1 or +1");
    }
  }
}

Dataset Dataset::WithRow(int64_t i, const Example& replacement) const {
  if (i < 0 || i >= size()) {
    throw std::invalid_argument("Dataset::WithRow: index out of range");
  }
  if (replacement.x.size() != dim()) {
    throw std::invalid_argument("Dataset::WithRow: dimension mismatch");
  }
  RowMatrixXd features = features_;
  Eigen::VectorXd labels = labels_;
  features.row(i) = replacement.x.transpose();
  labels[i] = replacement.y;
  return Dataset(std::move(features), std::move(labels));
}

Dataset LoadDataset(const std::string& path, DatasetFormat format, int dim) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  switch (format) {
    case DatasetFormat::kCsv:
      return LoadCsv(in);
    case DatasetFormat::kSvmLight:
      return LoadSvmLight(in, dim);
  }
  throw std::invalid_argument("unknown dataset format");
}

Dataset Normalize(const Dataset& ds) {
  RowMatrixXd features = ds.features();
  for (int64_t i = 0; i < features.rows(); ++i) {
    double norm = features.row(i).norm();
    if (norm <= 1.0) continue;
    features.row(i) /= norm;
    // Guard against a rounding overshoot so that normalization is exactly
    // idempotent: once a row measures inside the ball it is never touched.
    while (features.row(i).norm() > 1.0) {
      features.row(i) /= features.row(i).norm();
    }
  }
  return Dataset(std::move(features), ds.labels());
}

bool IsNormalized(const Dataset& ds) {
  for (int64_t i = 0; i < ds.size(); ++i) {
    if (ds.row(i).norm() > 1.0 + kNormSlack) return false;
  }
  return true;
}

RowMatrixXd GaussianProjectionMatrix(int target_dim, int source_dim,
                                     uint64_t seed) {
  if (target_dim < 1) {
    throw std::invalid_argument("projection: target dimension must be >= 1");
  }
  if (source_dim < 1) {
    throw std::invalid_argument("projection: source dimension must be >= 1");
  }
  Rng rng(DeriveSeed(seed, /*stream=*/0x70726f6a));
  const double stddev = 1.0 / std::sqrt(static_cast<double>(target_dim));
  RowMatrixXd t(target_dim, source_dim);
  for (int i = 0; i < target_dim; ++i) {
    for (int j = 0; j < source_dim; ++j) t(i, j) = stddev * rng.NextGaussian();
  }
  return t;
}

Dataset RandomProjection(const Dataset& ds, int target_dim, uint64_t seed) {
  const RowMatrixXd t = GaussianProjectionMatrix(target_dim, ds.dim(), seed);
  RowMatrixXd projected = ds.features() * t.transpose();
  return Normalize(Dataset(std::move(projected), ds.labels()));
}

Permutation SamplePermutation(int64_t m, uint64_t seed) {
  if (m < 1) throw std::invalid_argument("SamplePermutation: m must be >= 1");
  Permutation perm;
  perm.seed = seed;
  perm.mapping.resize(m);
  std::iota(perm.mapping.begin(), perm.mapping.end(), 0);
  Rng rng(DeriveSeed(seed, /*stream=*/0x7065726d));
  for (int64_t i = m - 1; i > 0; --i) {
    const int64_t j =
        static_cast<int64_t>(rng.NextBelow(static_cast<uint64_t>(i) + 1));
    std::swap(perm.mapping[i], perm.mapping[j]);
  }
  return perm;
}

std::pair<Dataset, Dataset> TrainTestSplit(const Dataset& ds,
                                           double test_fraction,
                                           uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw std::invalid_argument("TrainTestSplit: fraction must be in (0,1)");
  }
  const int64_t m = ds.size();
  const int64_t train_size =
      static_cast<int64_t>(std::ceil(static_cast<double>(m) *
                                     (1.0 - test_fraction)));
  const int64_t test_size = m - train_size;
  if (train_size < 1 || test_size < 1) {
    throw std::invalid_argument(
        "TrainTestSplit: both splits need at least one example");
  }
  const Permutation perm = SamplePermutation(m, DeriveSeed(seed, 0x73706c69));
  RowMatrixXd train_x(train_size, ds.dim());
  Eigen::VectorXd train_y(train_size);
  RowMatrixXd test_x(test_size, ds.dim());
  Eigen::VectorXd test_y(test_size);
  for (int64_t i = 0; i < train_size; ++i) {
    train_x.row(i) = ds.row(perm.mapping[i]);
    train_y[i] = ds.label(perm.mapping[i]);
  }
  for (int64_t i = 0; i < test_size; ++i) {
    test_x.row(i) = ds.row(perm.mapping[train_size + i]);
    test_y[i] = ds.label(perm.mapping[train_size + i]);
  }
  return {Dataset(std::move(train_x), std::move(train_y)),
          Dataset(std::move(test_x), std::move(test_y))};
}

}  // namespace bolton
