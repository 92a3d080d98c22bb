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

#include "cdfx/infometrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cdfx/error.hpp"
#include "cdfx/parallel.hpp"

namespace cdfx::infometrics {

namespace {

void check_inputs(std::size_t na, std::size_t nb, std::size_t bins) {
  if (na != nb)
    throw Error("mutual_info: column lengths differ (" + std::to_string(na) + " vs " +
                std::to_string(nb) + ")");
  if (na < 2) throw Error("mutual_info: need at least 2 samples");
  if (bins < 2) throw Error("mutual_info: bins must be >= 2");
  if (bins > na)
    throw Error("mutual_info: " + std::to_string(bins) + " bins exceed sample count " +
                std::to_string(na));
}

// Sums in ascending order so the result does not depend on term order.
double ordered_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

double entropy_from_codes(std::span<const int> codes, std::size_t bins) {
  std::vector<std::size_t> counts(bins, 0);
  for (int c : codes) ++counts[static_cast<std::size_t>(c)];
  const double n = static_cast<double>(codes.size());
  std::vector<double> terms;
  for (std::size_t k : counts)
    if (k > 0) {
      const double p = static_cast<double>(k) / n;
      terms.push_back(-p * std::log(p));
    }
  return std::max(0.0, ordered_sum(terms));
}

double mi_from_codes(std::span<const int> a, std::span<const int> b, std::size_t bins) {
  const std::size_t n = a.size();
  std::vector<std::size_t> joint(bins * bins, 0), ma(bins, 0), mb(bins, 0);
  for (std::size_t i = 0; i < n; ++i) {
    ++joint[static_cast<std::size_t>(a[i]) * bins + static_cast<std::size_t>(b[i])];
    ++ma[static_cast<std::size_t>(a[i])];
    ++mb[static_cast<std::size_t>(b[i])];
  }
  const double nd = static_cast<double>(n);
  std::vector<double> terms;
  for (std::size_t i = 0; i < bins; ++i)
    for (std::size_t j = 0; j < bins; ++j) {
      const std::size_t k = joint[i * bins + j];
      if (k == 0) continue;
      // n * n_ij / (n_i n_j), with the integer product commutative in (i, j)
      const double ratio = nd * static_cast<double>(k) / static_cast<double>(ma[i] * mb[j]);
      terms.push_back(static_cast<double>(k) / nd * std::log(ratio));
    }
  return std::max(0.0, ordered_sum(terms));
}

double nmi_from_parts(double mi, double ha, double hb) {
  if (ha <= 0.0 || hb <= 0.0) return 0.0;
  return std::clamp(mi / std::sqrt(ha * hb), 0.0, 1.0);
}

}  // namespace

std::size_t default_bins(std::size_t n_samples) {
  const auto root = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n_samples))));
  return std::max<std::size_t>(2, std::min<std::size_t>(16, root));
}

std::vector<int> quantile_codes(std::span<const double> values, std::size_t bins) {
  if (bins < 2) throw Error("quantile_codes: bins must be >= 2");
  if (values.empty()) return {};
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  std::vector<double> edges;
  edges.reserve(bins - 1);
  for (std::size_t k = 1; k < bins; ++k) edges.push_back(sorted[std::min(n - 1, k * n / bins)]);
  std::vector<int> codes(n);
  for (std::size_t i = 0; i < n; ++i)
    codes[i] = static_cast<int>(std::upper_bound(edges.begin(), edges.end(), values[i]) -
                                edges.begin());
  return codes;
}

double mutual_info(std::span<const double> a, std::span<const double> b, std::size_t bins) {
  check_inputs(a.size(), b.size(), bins);
  const auto ca = quantile_codes(a, bins);
  const auto cb = quantile_codes(b, bins);
  return mi_from_codes(ca, cb, bins);
}

double binned_entropy(std::span<const double> a, std::size_t bins) {
  check_inputs(a.size(), a.size(), bins);
  return entropy_from_codes(quantile_codes(a, bins), bins);
}

double normalized_mi(std::span<const double> a, std::span<const double> b, std::size_t bins) {
  check_inputs(a.size(), b.size(), bins);
  const auto ca = quantile_codes(a, bins);
  const auto cb = quantile_codes(b, bins);
  return nmi_from_parts(mi_from_codes(ca, cb, bins), entropy_from_codes(ca, bins),
                        entropy_from_codes(cb, bins));
}

MIMatrix::MIMatrix(std::size_t n, std::size_t bins, std::vector<double> values)
    : n_(n), bins_(bins), values_(std::move(values)) {
  if (values_.size() != n_ * n_) throw Error("MIMatrix: expected n*n values");
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) {
      const double v = values_[a * n_ + b];
      if (!(v >= 0.0 && v <= 1.0)) throw Error("MIMatrix: entry outside [0, 1]");
      if (v != values_[b * n_ + a]) throw Error("MIMatrix: matrix is not symmetric");
    }
}

void MIMatrix::set(std::size_t a, std::size_t b, double v) {
  if (a >= n_ || b >= n_) throw Error("MIMatrix: index out of range");
  values_[a * n_ + b] = v;
  values_[b * n_ + a] = v;
}

MIMatrix mi_matrix(const dataset::Dataset& ds, std::span<const std::size_t> rows,
                   std::size_t bins, unsigned threads) {
  const std::size_t n = ds.n_features();
  const std::size_t n_rows = rows.empty() ? ds.n_samples() : rows.size();
  check_inputs(n_rows, n_rows, bins);

  std::vector<std::vector<int>> codes(n);
  std::vector<double> entropy(n);
  for (std::size_t c = 0; c < n; ++c) {
    codes[c] = quantile_codes(ds.column(c, rows), bins);
    entropy[c] = entropy_from_codes(codes[c], bins);
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);

  std::vector<double> pair_values(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t k) {
    const auto [a, b] = pairs[k];
    pair_values[k] = nmi_from_parts(mi_from_codes(codes[a], codes[b], bins), entropy[a], entropy[b]);
  });

  std::vector<double> values(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a) values[a * n + a] = 1.0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [a, b] = pairs[k];
    values[a * n + b] = values[b * n + a] = pair_values[k];
  }
  return MIMatrix(n, bins, std::move(values));
}

nlohmann::json to_json(const MIMatrix& m, const std::vector<std::string>& names) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t a = 0; a < m.size(); ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t b = 0; b < m.size(); ++b) row.push_back(m(a, b));
    rows.push_back(std::move(row));
  }
  nlohmann::json j{{"n", m.size()}, {"bins", m.bins()}, {"values", std::move(rows)}};
  if (!names.empty()) j["names"] = names;
  return j;
}

MIMatrix mi_matrix_from_json(const nlohmann::json& j) {
  const auto n = j.at("n").get<std::size_t>();
  const auto rows = j.at("values").get<std::vector<std::vector<double>>>();
  if (rows.size() != n) throw Error("mi.json: 'values' must have n rows");
  std::vector<double> values;
  values.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw Error("mi.json: every row must have n entries");
    values.insert(values.end(), r.begin(), r.end());
  }
  return MIMatrix(n, j.at("bins").get<std::size_t>(), std::move(values));
}

double hyper_coeff(std::span<const std::size_t> subset, const MIMatrix& m) {
  if (subset.size() < 2) throw Error("hyper_coeff: subset needs at least 2 indices");
  for (std::size_t i : subset)
    if (i >= m.size()) throw Error("hyper_coeff: index " + std::to_string(i) + " out of range");
  // visit pairs in sorted order so permutations of the subset agree exactly
  std::vector<std::size_t> s(subset.begin(), subset.end());
  std::sort(s.begin(), s.end());
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      sum += m(s[a], s[b]);
      ++pairs;
    }
  return sum / static_cast<double>(pairs);
}

double HyperCoeffs::at(std::vector<std::size_t> subset) const {
  std::sort(subset.begin(), subset.end());
  const auto it = coeffs.find(subset);
  if (it == coeffs.end()) {
    std::string key;
    for (std::size_t i : subset) key += (key.empty() ? "" : ",") + std::to_string(i);
    throw Error("missing order-" + std::to_string(order) + " coefficient for feature subset {" +
                key + "}");
  }
  return it->second;
}

HyperCoeffs build_hyper_coeffs(std::size_t order,
                               const std::vector<std::vector<std::size_t>>& subsets,
                               const MIMatrix& m) {
  HyperCoeffs out;
  out.order = order;
  for (auto s : subsets) {
    if (s.size() != order)
      throw Error("build_hyper_coeffs: subset size " + std::to_string(s.size()) +
                  " != order " + std::to_string(order));
    std::sort(s.begin(), s.end());
    out.coeffs[s] = hyper_coeff(s, m);
  }
  return out;
}

std::vector<std::size_t> select_features(const dataset::Dataset& ds,
                                         std::span<const std::size_t> rows,
                                         std::size_t target_count, std::size_t bins) {
  if (target_count == 0) throw Error("select_features: target_count must be positive");
  if (target_count > ds.n_features())
    throw Error("select_features: target_count " + std::to_string(target_count) +
                " exceeds feature count " + std::to_string(ds.n_features()));
  std::vector<double> label;
  if (rows.empty()) {
    for (int y : ds.labels()) label.push_back(y);
  } else {
    for (std::size_t r : rows) label.push_back(ds.labels().at(r));
  }
  std::vector<double> score(ds.n_features());
  for (std::size_t c = 0; c < ds.n_features(); ++c)
    score[c] = mutual_info(ds.column(c, rows), label, bins);

  std::vector<std::size_t> order(ds.n_features());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  order.resize(target_count);
  return order;
}

}  // namespace cdfx::infometrics
