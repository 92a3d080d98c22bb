// Copyright 2026 The cdfx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace cdfx::dataset {

/// Tabular samples x features matrix with binary labels.
///
/// Feature values are stored row-major. Construction validates shapes, name
/// uniqueness, finiteness and label values; a Dataset is immutable afterwards.
class Dataset {
 public:
  Dataset(std::vector<std::string> names, std::vector<double> values,
          std::vector<int> labels);

  std::size_t n_samples() const noexcept { return labels_.size(); }
  std::size_t n_features() const noexcept { return names_.size(); }

  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<int>& labels() const noexcept { return labels_; }

  /// The two original label strings, in the order mapped to 0 and 1.
  const std::vector<std::string>& label_values() const noexcept { return label_values_; }
  void set_label_values(std::vector<std::string> v) { label_values_ = std::move(v); }

  double at(std::size_t row, std::size_t col) const { return values_[row * n_features() + col]; }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * n_features(), n_features()};
  }
  /// Copies one column restricted to `rows` (all rows when empty).
  std::vector<double> column(std::size_t col, std::span<const std::size_t> rows = {}) const;

  /// Column index for a name; throws when absent.
  std::size_t index_of(const std::string& name) const;

  /// New dataset holding only the listed columns, in the listed order.
  Dataset select_columns(std::span<const std::size_t> cols) const;

 private:
  std::vector<std::string> names_;
  std::vector<double> values_;
  std::vector<int> labels_;
  std::vector<std::string> label_values_;
};

struct CsvOptions {
  char delimiter = ',';
};

/// Reads a delimiter-separated file with a header row. Every column other
/// than `label_column` must be numeric and finite. The label column must hold
/// exactly two distinct strings; they map to {0, 1} by sorted order.
Dataset load_csv(const std::filesystem::path& path, const std::string& label_column,
                 const CsvOptions& options = {});

/// Writes `ds` back out with the label column last (labels as 0/1).
void write_csv(const Dataset& ds, const std::filesystem::path& path,
               const std::string& label_column = "label");

/// Per-column min/max observed on a training partition. Applying it maps
/// values to [-1, 1]; constant columns map to 0.
class ScalingSpec {
 public:
  ScalingSpec(std::vector<double> mins, std::vector<double> maxs);

  std::size_t size() const noexcept { return mins_.size(); }
  double min(std::size_t c) const { return mins_[c]; }
  double max(std::size_t c) const { return maxs_[c]; }
  bool is_constant(std::size_t c) const { return maxs_[c] == mins_[c]; }

  /// 2(v-min)/(max-min) - 1, clipped to [-1, 1].
  std::vector<double> apply(std::span<const double> x) const;
  /// Inverse of apply() on non-clipped values; constant columns return min.
  std::vector<double> invert(std::span<const double> scaled) const;

 private:
  std::vector<double> mins_;
  std::vector<double> maxs_;
};

/// Fits min/max using only `rows`. Throws on an empty row set.
ScalingSpec fit_scaler(const Dataset& ds, std::span<const std::size_t> rows);

inline std::vector<double> apply_scaler(const ScalingSpec& spec, std::span<const double> x) {
  return spec.apply(x);
}

/// Stratified, repeated k-fold assignment of sample indices.
struct FoldPlan {
  std::size_t n_splits = 0;
  std::size_t n_repeats = 0;
  std::uint64_t seed = 0;
  std::size_t n_samples = 0;
  /// test_sets[repeat][split] = sorted test indices.
  std::vector<std::vector<std::vector<std::size_t>>> test_sets;

  /// Flattened test set k (repeat-major).
  const std::vector<std::size_t>& test_set(std::size_t k) const {
    return test_sets.at(k / n_splits).at(k % n_splits);
  }
  /// Complement of test_set(k).
  std::vector<std::size_t> train_set(std::size_t k) const;
};

/// Deterministic for a fixed seed. Within every repeat the splits partition
/// the samples, and per-class counts in each split differ by at most one.
FoldPlan make_folds(const Dataset& ds, std::size_t n_splits, std::size_t n_repeats,
                    std::uint64_t seed);

nlohmann::json to_json(const FoldPlan& plan);
FoldPlan fold_plan_from_json(const nlohmann::json& j);

/// 0..n-1.
std::vector<std::size_t> all_rows(std::size_t n);

}  // namespace cdfx::dataset
