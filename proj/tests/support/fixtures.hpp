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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cdfx/dataset.hpp"
#include "cdfx/encode.hpp"
#include "cdfx/rng.hpp"

namespace fixtures {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("cdfx-test-" + tag + "-" + std::to_string(cdfx::mix_seed(++counter ^ reinterpret_cast<std::uintptr_t>(this))));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// Random diagonal Hamiltonian: fields on every qubit, couplings on random
/// supports of size 2..k_max.
inline cdfx::encode::ZPolynomial random_zpoly(std::size_t n, int k_max, cdfx::Rng& rng) {
  cdfx::encode::ZPolynomial hz(n);
  for (std::uint32_t q = 0; q < n; ++q) hz.add({q}, 2.0 * rng.uniform() - 1.0);
  if (n < 2) return hz;
  const std::size_t n_terms = 1 + rng.below(2 * n);
  for (std::size_t t = 0; t < n_terms; ++t) {
    const std::size_t size = 2 + rng.below(static_cast<std::uint64_t>(std::min<std::size_t>(k_max, n) - 1));
    std::vector<std::uint32_t> all(n);
    for (std::uint32_t q = 0; q < n; ++q) all[q] = q;
    for (std::size_t i = 0; i < size; ++i) std::swap(all[i], all[i + rng.below(n - i)]);
    hz.add({all.begin(), all.begin() + static_cast<std::ptrdiff_t>(size)}, rng.uniform());
  }
  return hz;
}

/// iid uniform features; the label is a deterministic function of the row.
template <typename LabelFn>
cdfx::dataset::Dataset synthetic(std::size_t n_samples, std::size_t n_features, std::uint64_t seed,
                                 LabelFn label) {
  cdfx::Rng rng(seed);
  std::vector<std::string> names;
  for (std::size_t f = 0; f < n_features; ++f) names.push_back("f" + std::to_string(f));
  std::vector<double> values(n_samples * n_features);
  std::vector<int> labels(n_samples);
  for (std::size_t r = 0; r < n_samples; ++r) {
    for (std::size_t f = 0; f < n_features; ++f) values[r * n_features + f] = 2.0 * rng.uniform() - 1.0;
    labels[r] = label(std::span<const double>(values.data() + r * n_features, n_features));
  }
  return {names, values, labels};
}

}  // namespace fixtures
