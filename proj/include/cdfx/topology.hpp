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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cdfx/infometrics.hpp"

namespace cdfx::topology {

using Edge = std::pair<std::size_t, std::size_t>;
using Triplet = std::array<std::size_t, 3>;

/// Qubit connectivity: undirected edges plus the derived triplet set.
///
/// Edges are stored normalized (first < second) and sorted; triplets are the
/// connected induced 3-vertex subgraphs, also sorted.
class HardwareGraph {
 public:
  HardwareGraph(std::size_t n_qubits, std::vector<Edge> edges);

  std::size_t n_qubits() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Triplet>& triplets() const noexcept { return triplets_; }
  const std::vector<std::vector<std::size_t>>& adjacency() const noexcept { return adj_; }
  std::size_t degree(std::size_t q) const { return adj_.at(q).size(); }
  bool has_edge(std::size_t a, std::size_t b) const;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Triplet> triplets_;
};

/// Cycle 0-1-...-(n-1)-0; n >= 3.
HardwareGraph ring(std::size_t n);

/// Heavy-hex patch: `rows` chains of 4*cols qubits joined by bridge qubits.
/// Between chain r and r+1 the bridges sit at columns 4m+3 (r even) or 4m+1
/// (r odd), m = 0..cols-1. Qubits are numbered chain by chain with each gap's
/// bridges following the chain above it, so rows=8, cols=4 gives the
/// 156-qubit Heron-style layout.
HardwareGraph heavy_hex_patch(std::size_t rows, std::size_t cols);

/// All unordered triples whose induced subgraph is connected.
std::vector<Triplet> enumerate_triplets(const HardwareGraph& g);

/// Connected n-qubit subgraph: breadth-first from qubit 0 (lowest-index
/// neighbours first), relabelled 0..n-1 in visit order.
HardwareGraph connected_subgraph(const HardwareGraph& g, std::size_t n);

nlohmann::json to_json(const HardwareGraph& g);
HardwareGraph graph_from_json(const nlohmann::json& j);
HardwareGraph load_graph(const std::filesystem::path& path);

/// Permutation qubit -> feature index.
class Assignment {
 public:
  explicit Assignment(std::vector<std::size_t> qubit_to_feature);
  static Assignment identity(std::size_t n);

  std::size_t size() const noexcept { return map_.size(); }
  std::size_t operator[](std::size_t qubit) const { return map_[qubit]; }
  const std::vector<std::size_t>& map() const noexcept { return map_; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::size_t> map_;
};

bool is_permutation(std::span<const std::size_t> p);

struct FitnessWeights {
  double lambda2 = 1.0;
  double lambda3 = 1.0;
};

/// lambda2 * sum over edges of M[pi(i), pi(j)] + lambda3 * sum over triplets
/// of the pairwise-mean coefficient of the mapped feature triple.
double fitness(const Assignment& pi, const HardwareGraph& g, const infometrics::MIMatrix& m,
               const FitnessWeights& w);

struct GAConfig {
  std::size_t population_size = 200;
  std::size_t n_generations = 500;
  std::size_t tournament_size = 3;
  double crossover_rate = 0.9;
  double mutation_rate = 0.2;
  std::size_t elitism_count = 1;
  std::uint64_t seed = 7;
  FitnessWeights weights{};
  unsigned threads = 1;

  void validate() const;
};

struct GAResult {
  Assignment best;
  double best_fitness = 0.0;
  /// Best-so-far fitness after each generation (index 0 = initial population).
  std::vector<double> history;
};

/// Order crossover: copies parent `a` on the cyclic slice [start, end] and
/// fills the rest with `b`'s remaining genes in order, starting after `end`.
std::vector<std::size_t> order_crossover(std::span<const std::size_t> a,
                                         std::span<const std::size_t> b, std::size_t start,
                                         std::size_t end);

/// Genetic search for the assignment maximizing fitness(). Tournament
/// selection, order crossover, swap mutation, elitism. An optional initial
/// population replaces the random one (its size must equal
/// population_size).
GAResult ga_optimize(const HardwareGraph& g, const infometrics::MIMatrix& m, const GAConfig& cfg,
                     const std::vector<std::vector<std::size_t>>& initial_population = {});

nlohmann::json to_json(const GAResult& r);
GAResult ga_result_from_json(const nlohmann::json& j);

}  // namespace cdfx::topology
