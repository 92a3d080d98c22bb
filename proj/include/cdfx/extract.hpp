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
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cdfx/simulate.hpp"

namespace cdfx::extract {

/// <prod_{i in support} Z_i> on an exact state: (P_even - P_odd) / (P_even + P_odd)
/// over basis-state probabilities, so the result lies in [-1, 1].
double expect_z(const simulate::Statevector& state, std::span<const std::uint32_t> support);
/// Same estimator over measured counts.
double expect_z(const simulate::ShotTable& shots, std::span<const std::uint32_t> support);

/// Closed-chain observables over qubits 0..n-1: singles i, pairs (i, i+1),
/// triples (i, i+1, i+2), indices mod n.
struct ObservableSet {
  std::size_t n = 0;
  bool singles = true;
  bool pairs = true;
  bool triples = true;

  /// Supports of one order (1, 2 or 3) in chain order.
  std::vector<std::vector<std::uint32_t>> supports(int order) const;
  bool active(int order) const;
  void validate() const;
};

/// Which dynamics (interaction order K of its Hamiltonian) feeds each
/// observable order.
struct DynamicsPlan {
  std::map<int, int> source_of_order;

  /// One dynamics K feeds every order.
  static DynamicsPlan single(int k);
  /// Singles and pairs from K=2, triples from K=3.
  static DynamicsPlan dual();
  /// single(K) for one entry, dual() for {2, 3}.
  static DynamicsPlan for_dynamics(std::span<const int> ks);

  std::vector<int> dynamics() const;
};

struct Block {
  std::string provenance;  // "classical" or "q<order>@k<K>"
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// One sample's named feature values, grouped into provenance blocks.
struct FeatureRecord {
  std::size_t sample_id = 0;
  std::vector<std::string> names;
  std::vector<double> values;
  std::vector<Block> blocks;

  std::size_t size() const noexcept { return values.size(); }
  /// Unique names, one value per name, quantum values in [-1, 1].
  void validate() const;
};

/// Descriptor for a Z-string measured on dynamics K, e.g. "q2_3_4@k2".
std::string descriptor(std::span<const std::uint32_t> support, int k);

using StateSource = std::variant<const simulate::Statevector*, const simulate::ShotTable*>;

/// Feature map: for each active order (ascending) take expectation values
/// from the dynamics the plan assigns to it. `sources` maps K to its final
/// state or shot table.
FeatureRecord feature_map(std::size_t sample_id, const std::map<int, StateSource>& sources,
                          const ObservableSet& obs, const DynamicsPlan& plan);

/// Classical block first (names prefixed "c_"), then the quantum blocks.
FeatureRecord concat_features(std::span<const std::string> classical_names,
                              std::span<const double> classical_values,
                              const FeatureRecord& quantum);

/// CSV table: header "sample,<names...>[,label]" then one row per record.
std::string to_csv(std::span<const FeatureRecord> records, std::span<const int> labels = {});

}  // namespace cdfx::extract
