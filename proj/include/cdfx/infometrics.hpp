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
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "cdfx/dataset.hpp"

namespace cdfx::infometrics {

/// Default histogram resolution: min(16, floor(sqrt(n_samples))), at least 2.
std::size_t default_bins(std::size_t n_samples);

/// Equal-frequency discretization of one column into `bins` codes.
///
/// Edges are taken at the sample quantiles; equal values always share a bin,
/// so constant columns collapse to a single code.
std::vector<int> quantile_codes(std::span<const double> values, std::size_t bins);

/// Mutual information (nats) between two columns under equal-frequency
/// binning. Symmetric bit-for-bit and never negative.
double mutual_info(std::span<const double> a, std::span<const double> b, std::size_t bins);

/// Shannon entropy (nats) of the binned column.
double binned_entropy(std::span<const double> a, std::size_t bins);

/// I(a,b) / sqrt(H(a) H(b)); 0 when either marginal has zero entropy.
double normalized_mi(std::span<const double> a, std::span<const double> b, std::size_t bins);

/// Symmetric matrix of pairwise normalized MI with unit diagonal.
class MIMatrix {
 public:
  MIMatrix(std::size_t n, std::size_t bins, std::vector<double> values);

  std::size_t size() const noexcept { return n_; }
  std::size_t bins() const noexcept { return bins_; }
  double operator()(std::size_t a, std::size_t b) const { return values_[a * n_ + b]; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// Sets both (a,b) and (b,a).
  void set(std::size_t a, std::size_t b, double v);

 private:
  std::size_t n_;
  std::size_t bins_;
  std::vector<double> values_;
};

/// All pairwise NMI values over the given training rows, with one shared
/// binning per column. Pairs are evaluated on `threads` workers.
MIMatrix mi_matrix(const dataset::Dataset& ds, std::span<const std::size_t> rows,
                   std::size_t bins, unsigned threads = 1);

/// Row-major JSON export; `names` are optional column labels.
nlohmann::json to_json(const MIMatrix& m, const std::vector<std::string>& names = {});
MIMatrix mi_matrix_from_json(const nlohmann::json& j);

/// Mean of M over all unordered pairs inside `subset` (|subset| >= 2).
double hyper_coeff(std::span<const std::size_t> subset, const MIMatrix& m);

/// Coefficients c_S for feature subsets of one interaction order.
struct HyperCoeffs {
  std::size_t order = 0;
  /// Keys are sorted feature-index subsets.
  std::map<std::vector<std::size_t>, double> coeffs;

  /// Throws when the (sorted) subset is missing.
  double at(std::vector<std::size_t> subset) const;
};

/// Builds c_S for each listed subset; every subset must have size `order`.
HyperCoeffs build_hyper_coeffs(std::size_t order,
                               const std::vector<std::vector<std::size_t>>& subsets,
                               const MIMatrix& m);

/// Top `target_count` columns by MI with the label on `rows`; ties go to the
/// lower column index.
std::vector<std::size_t> select_features(const dataset::Dataset& ds,
                                         std::span<const std::size_t> rows,
                                         std::size_t target_count, std::size_t bins);

}  // namespace cdfx::infometrics
