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

#include <doctest.h>

#include <cmath>
#include <map>

#include "cdfx/error.hpp"
#include "cdfx/infometrics.hpp"
#include "cdfx/rng.hpp"
#include "fixtures.hpp"

using namespace cdfx;
using namespace cdfx::infometrics;

namespace {

std::vector<double> uniforms(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform();
  return v;
}

// Plug-in MI from explicit code vectors, summed in whatever order the map
// yields; independent of the library's accumulation.
double naive_mi(const std::vector<int>& a, const std::vector<int>& b) {
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> pa, pb;
  const double n = static_cast<double>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[{a[i], b[i]}] += 1.0 / n;
    pa[a[i]] += 1.0 / n;
    pb[b[i]] += 1.0 / n;
  }
  double mi = 0.0;
  for (const auto& [k, p] : joint) mi += p * std::log(p / (pa[k.first] * pb[k.second]));
  return std::max(0.0, mi);
}

}  // namespace

TEST_CASE("default_bins follows min(16, floor(sqrt(n))) with a floor of 2") {
  CHECK(default_bins(171) == 13);
  CHECK(default_bins(10000) == 16);
  CHECK(default_bins(3) == 2);
  CHECK(default_bins(500) == 16);
}

TEST_CASE("quantile codes are equal-frequency and keep ties together") {
  std::vector<double> v{5, 1, 4, 2, 3, 8, 7, 6};
  const auto codes = quantile_codes(v, 4);
  std::map<int, int> counts;
  for (int c : codes) ++counts[c];
  CHECK(counts.size() == 4);
  for (const auto& [code, k] : counts) CHECK(k == 2);
  CHECK(codes[1] < codes[0]);

  const std::vector<double> ties{1, 1, 1, 1, 2, 2};
  const auto tc = quantile_codes(ties, 3);
  CHECK(tc[0] == tc[3]);
  CHECK(tc[4] == tc[5]);
  CHECK(tc[0] != tc[4]);

  const std::vector<double> constant(10, 3.0);
  for (int c : quantile_codes(constant, 4)) CHECK(c == quantile_codes(constant, 4)[0]);
}

TEST_CASE("mutual_info of a column with itself equals its binned entropy, near log(bins)") {
  const auto a = uniforms(10000, 1);
  const double i = mutual_info(a, a, 8);
  CHECK(i == doctest::Approx(binned_entropy(a, 8)).epsilon(1e-12));
  CHECK(std::abs(i - std::log(8.0)) <= 0.05 * std::log(8.0));
  CHECK(normalized_mi(a, a, 8) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("mutual_info matches a plug-in oracle on the same codes") {
  const auto a = uniforms(600, 2);
  auto b = uniforms(600, 3);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = 0.6 * a[i] + 0.4 * b[i];
  const double oracle = naive_mi(quantile_codes(a, 10), quantile_codes(b, 10));
  CHECK(mutual_info(a, b, 10) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("independent uniforms carry almost no information") {
  const auto a = uniforms(10000, 4), b = uniforms(10000, 5);
  CHECK(mutual_info(a, b, 8) < 0.02);
  CHECK(normalized_mi(a, b, 16) < 0.01);
}

TEST_CASE("mutual_info is symmetric bit for bit and non-negative") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto a = uniforms(97, 100 + s), b = uniforms(97, 200 + s);
    const double ab = mutual_info(a, b, 7), ba = mutual_info(b, a, 7);
    CHECK(ab == ba);
    CHECK(ab >= 0.0);
  }
}

TEST_CASE("constant columns give zero information and zero NMI") {
  const std::vector<double> c(50, 2.0);
  const auto a = uniforms(50, 6);
  CHECK(mutual_info(c, a, 5) == 0.0);
  CHECK(normalized_mi(c, a, 5) == 0.0);
  CHECK(normalized_mi(a, c, 5) == 0.0);
}

TEST_CASE("mutual_info rejects bad shapes") {
  const auto a = uniforms(10, 7), b = uniforms(9, 8);
  CHECK_THROWS_AS(mutual_info(a, b, 3), Error);
  CHECK_THROWS_AS(mutual_info(a, a, 1), Error);
  CHECK_THROWS_AS(mutual_info(a, a, 11), Error);
  CHECK_THROWS_AS(mutual_info(std::vector<double>{1.0}, std::vector<double>{1.0}, 2), Error);
}

TEST_CASE("shuffling one side of a dependent pair does not increase NMI") {
  const auto a = uniforms(10000, 9);
  auto noise = uniforms(10000, 10);
  std::vector<double> b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) b[i] = a[i] + 0.3 * noise[i];
  auto c = b;
  Rng rng(11);
  for (std::size_t i = c.size(); i > 1; --i) std::swap(c[i - 1], c[rng.below(i)]);
  CHECK(normalized_mi(a, c, 16) <= normalized_mi(a, b, 16) + 0.05);
}

TEST_CASE("mi_matrix: duplicated column, consistency with pairwise calls, schedule independence") {
  const auto base = fixtures::synthetic(300, 3, 12, [](auto x) { return x[0] > 0 ? 1 : 0; });
  std::vector<double> values;
  for (std::size_t r = 0; r < base.n_samples(); ++r) {
    const auto row = base.row(r);
    values.insert(values.end(), row.begin(), row.end());
    values.push_back(row[1]);
  }
  const dataset::Dataset ds({"a", "b", "c", "b2"}, values, base.labels());
  const auto rows = dataset::all_rows(ds.n_samples());
  const auto m = mi_matrix(ds, rows, 12, 1);
  CHECK(m(1, 3) == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t a = 0; a < 4; ++a) {
    CHECK(m(a, a) == 1.0);
    for (std::size_t b = 0; b < 4; ++b) {
      CHECK(m(a, b) == m(b, a));
      if (a != b) CHECK(m(a, b) == normalized_mi(ds.column(a), ds.column(b), 12));
    }
  }
  CHECK(mi_matrix(ds, rows, 12, 4).values() == m.values());

  const auto back = mi_matrix_from_json(nlohmann::json::parse(to_json(m, ds.names()).dump()));
  CHECK(back.values() == m.values());
  CHECK(back.bins() == 12);
}

TEST_CASE("mi_matrix over 156 features fills all 12090 unique pairs") {
  const auto ds = fixtures::synthetic(171, 156, 13, [](auto x) { return x[0] > 0 ? 1 : 0; });
  const auto m = mi_matrix(ds, dataset::all_rows(171), 13, 0);
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < 156; ++a)
    for (std::size_t b = a + 1; b < 156; ++b) {
      ++pairs;
      CHECK(m(a, b) == normalized_mi(ds.column(a), ds.column(b), 13));
    }
  CHECK(pairs == 12090);
}

TEST_CASE("MIMatrix rejects asymmetric or out-of-range values") {
  CHECK_THROWS_AS(MIMatrix(2, 2, {1.0, 0.3, 0.4, 1.0}), Error);
  CHECK_THROWS_AS(MIMatrix(2, 2, {1.0, 1.5, 1.5, 1.0}), Error);
  CHECK_THROWS_AS(MIMatrix(2, 2, {1.0, 0.5}), Error);
}

TEST_CASE("hyper_coeff reduces to the pair entry and averages triples") {
  MIMatrix m(4, 2, {1, 0.2, 0.4, 0.1, 0.2, 1, 0.6, 0.3, 0.4, 0.6, 1, 0.5, 0.1, 0.3, 0.5, 1});
  CHECK(hyper_coeff(std::vector<std::size_t>{0, 2}, m) == 0.4);
  CHECK(hyper_coeff(std::vector<std::size_t>{0, 1, 2}, m) == doctest::Approx(0.4).epsilon(1e-15));
  const double ref = hyper_coeff(std::vector<std::size_t>{0, 1, 2}, m);
  for (auto s : {std::vector<std::size_t>{2, 1, 0}, {1, 0, 2}, {2, 0, 1}, {0, 2, 1}, {1, 2, 0}})
    CHECK(hyper_coeff(s, m) == ref);
  CHECK_THROWS_AS(hyper_coeff(std::vector<std::size_t>{1}, m), Error);

  auto raised = m;
  raised.set(0, 1, 0.25);
  CHECK(hyper_coeff(std::vector<std::size_t>{0, 1, 2}, raised) > ref);

  const auto h3 = build_hyper_coeffs(3, {{2, 0, 1}, {1, 2, 3}}, m);
  CHECK(h3.at({0, 1, 2}) == ref);
  CHECK(h3.at({3, 2, 1}) == hyper_coeff(std::vector<std::size_t>{1, 2, 3}, m));
  CHECK_THROWS_WITH_AS(h3.at({0, 1, 3}), doctest::Contains("missing order-3"), Error);
  CHECK_THROWS_AS(build_hyper_coeffs(3, {{0, 1}}, m), Error);
}

TEST_CASE("select_features ranks the label-equal column first and ignores test rows") {
  auto ds = fixtures::synthetic(200, 6, 14, [](auto x) { return x[3] > 0.1 ? 1 : 0; });
  const auto rows = dataset::all_rows(200);
  const auto top = select_features(ds, rows, 3, 14);
  CHECK(top.size() == 3);
  CHECK(top.front() == 3);
  CHECK(select_features(ds, rows, 3, 14) == top);
  CHECK_THROWS_AS(select_features(ds, rows, 0, 14), Error);
  CHECK_THROWS_AS(select_features(ds, rows, 7, 14), Error);

  std::vector<std::size_t> train(rows.begin(), rows.begin() + 150);
  std::vector<double> edited;
  for (std::size_t r = 0; r < 200; ++r)
    for (std::size_t c = 0; c < 6; ++c) edited.push_back(r >= 150 ? -ds.at(r, c) * 7.0 : ds.at(r, c));
  std::vector<int> labels = ds.labels();
  for (std::size_t r = 150; r < 200; ++r) labels[r] = 1 - labels[r];
  const dataset::Dataset other(ds.names(), edited, labels);
  CHECK(select_features(ds, train, 4, 12) == select_features(other, train, 4, 12));
}

TEST_CASE("select_features breaks ties by ascending column index") {
  const auto base = fixtures::synthetic(100, 1, 15, [](auto x) { return x[0] > 0 ? 1 : 0; });
  std::vector<double> values;
  for (std::size_t r = 0; r < 100; ++r)
    for (int c = 0; c < 4; ++c) values.push_back(base.at(r, 0));
  const dataset::Dataset ds({"a", "b", "c", "d"}, values, base.labels());
  CHECK(select_features(ds, dataset::all_rows(100), 2, 10) == std::vector<std::size_t>{0, 1});
}
