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

#include "cdfx/topology.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "cdfx/error.hpp"
#include "cdfx/io.hpp"
#include "cdfx/parallel.hpp"
#include "cdfx/rng.hpp"

namespace cdfx::topology {

HardwareGraph::HardwareGraph(std::size_t n_qubits, std::vector<Edge> edges)
    : n_(n_qubits), adj_(n_qubits) {
  if (n_ == 0) throw Error("graph: zero qubits");
  std::set<Edge> seen;
  for (auto [a, b] : edges) {
    if (a >= n_ || b >= n_)
      throw Error("graph: edge (" + std::to_string(a) + "," + std::to_string(b) +
                  ") references a qubit >= " + std::to_string(n_));
    if (a == b) throw Error("graph: self-loop on qubit " + std::to_string(a));
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second)
      throw Error("graph: duplicate edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
  }
  edges_.assign(seen.begin(), seen.end());
  for (const auto& [a, b] : edges_) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
  triplets_ = enumerate_triplets(*this);
}

bool HardwareGraph::has_edge(std::size_t a, std::size_t b) const {
  if (a >= n_ || b >= n_) return false;
  const auto& nb = adj_[a];
  return std::binary_search(nb.begin(), nb.end(), b);
}

HardwareGraph ring(std::size_t n) {
  if (n < 3) throw Error("ring: need at least 3 qubits, got " + std::to_string(n));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return HardwareGraph(n, std::move(edges));
}

HardwareGraph heavy_hex_patch(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0)
    throw Error("heavy_hex_patch: rows and cols must be >= 1 (got " + std::to_string(rows) +
                "x" + std::to_string(cols) + ", which yields 0 qubits)");
  const std::size_t chain = 4 * cols;
  std::vector<std::size_t> chain_start(rows);
  std::vector<Edge> edges;
  std::size_t next = 0;
  std::vector<std::vector<std::size_t>> bridges(rows > 0 ? rows - 1 : 0);
  for (std::size_t r = 0; r < rows; ++r) {
    chain_start[r] = next;
    for (std::size_t c = 0; c + 1 < chain; ++c) edges.emplace_back(next + c, next + c + 1);
    next += chain;
    if (r + 1 < rows) {
      for (std::size_t m = 0; m < cols; ++m) bridges[r].push_back(next++);
    }
  }
  for (std::size_t r = 0; r + 1 < rows; ++r) {
    const std::size_t offset = (r % 2 == 0) ? 3 : 1;
    for (std::size_t m = 0; m < cols; ++m) {
      const std::size_t col = 4 * m + offset;
      const std::size_t b = bridges[r][m];
      edges.emplace_back(chain_start[r] + col, b);
      edges.emplace_back(b, chain_start[r + 1] + col);
    }
  }
  return HardwareGraph(next, std::move(edges));
}

std::vector<Triplet> enumerate_triplets(const HardwareGraph& g) {
  // a connected 3-vertex subgraph always has a vertex adjacent to the other two
  std::set<Triplet> out;
  for (std::size_t v = 0; v < g.n_qubits(); ++v) {
    const auto& nb = g.adjacency()[v];
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        Triplet t{v, nb[i], nb[j]};
        std::sort(t.begin(), t.end());
        out.insert(t);
      }
  }
  return {out.begin(), out.end()};
}

HardwareGraph connected_subgraph(const HardwareGraph& g, std::size_t n) {
  if (n == 0 || n > g.n_qubits())
    throw Error("connected_subgraph: requested " + std::to_string(n) + " qubits from a " +
                std::to_string(g.n_qubits()) + "-qubit graph");
  if (n == g.n_qubits()) return g;
  constexpr auto unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(g.n_qubits(), unvisited);
  std::vector<std::size_t> order;
  std::queue<std::size_t> q;
  q.push(0);
  label[0] = 0;
  order.push_back(0);
  while (!q.empty() && order.size() < n) {
    const std::size_t v = q.front();
    q.pop();
    for (std::size_t w : g.adjacency()[v]) {
      if (label[w] != unvisited || order.size() >= n) continue;
      label[w] = order.size();
      order.push_back(w);
      q.push(w);
    }
  }
  if (order.size() < n)
    throw Error("connected_subgraph: component of qubit 0 has only " +
                std::to_string(order.size()) + " qubits, need " + std::to_string(n));
  std::vector<Edge> edges;
  for (const auto& [a, b] : g.edges())
    if (label[a] != unvisited && label[b] != unvisited) edges.emplace_back(label[a], label[b]);
  return HardwareGraph(n, std::move(edges));
}

nlohmann::json to_json(const HardwareGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
  return nlohmann::json{{"n_qubits", g.n_qubits()}, {"edges", std::move(edges)}};
}

HardwareGraph graph_from_json(const nlohmann::json& j) {
  if (!j.contains("n_qubits") || !j.contains("edges"))
    throw Error("graph file: expected keys 'n_qubits' and 'edges'");
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw Error("graph file: each edge must be [i, j]");
    edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
  }
  return HardwareGraph(j.at("n_qubits").get<std::size_t>(), std::move(edges));
}

HardwareGraph load_graph(const std::filesystem::path& path) {
  return graph_from_json(io::read_json(path));
}

bool is_permutation(std::span<const std::size_t> p) {
  std::vector<bool> seen(p.size(), false);
  for (std::size_t v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Assignment::Assignment(std::vector<std::size_t> qubit_to_feature)
    : map_(std::move(qubit_to_feature)) {
  if (!is_permutation(map_)) throw Error("assignment: not a permutation of 0..n-1");
}

Assignment Assignment::identity(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  return Assignment(std::move(p));
}

namespace {

double fitness_unchecked(std::span<const std::size_t> p, const HardwareGraph& g,
                         const infometrics::MIMatrix& m, const FitnessWeights& w) {
  double pair_sum = 0.0;
  for (const auto& [a, b] : g.edges()) pair_sum += m(p[a], p[b]);
  double triple_sum = 0.0;
  if (w.lambda3 != 0.0) {
    for (const auto& t : g.triplets()) {
      // same pair order and arithmetic as hyper_coeff, without allocating
      std::array<std::size_t, 3> f{p[t[0]], p[t[1]], p[t[2]]};
      std::sort(f.begin(), f.end());
      double s = 0.0;
      s += m(f[0], f[1]);
      s += m(f[0], f[2]);
      s += m(f[1], f[2]);
      triple_sum += s / 3.0;
    }
  }
  return w.lambda2 * pair_sum + w.lambda3 * triple_sum;
}

void check_dims(std::size_t perm, const HardwareGraph& g, const infometrics::MIMatrix& m) {
  if (perm != g.n_qubits() || m.size() != g.n_qubits())
    throw Error("fitness: dimension mismatch (assignment " + std::to_string(perm) + ", graph " +
                std::to_string(g.n_qubits()) + ", MI matrix " + std::to_string(m.size()) + ")");
}

std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
  return p;
}

}  // namespace

double fitness(const Assignment& pi, const HardwareGraph& g, const infometrics::MIMatrix& m,
               const FitnessWeights& w) {
  check_dims(pi.size(), g, m);
  return fitness_unchecked(pi.map(), g, m, w);
}

void GAConfig::validate() const {
  if (population_size < 2) throw Error("ga: population_size must be >= 2");
  if (tournament_size < 1) throw Error("ga: tournament_size must be >= 1");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
    throw Error("ga: crossover_rate must lie in [0, 1]");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0))
    throw Error("ga: mutation_rate must lie in [0, 1]");
  if (elitism_count >= population_size)
    throw Error("ga: elitism_count must be smaller than population_size");
}

std::vector<std::size_t> order_crossover(std::span<const std::size_t> a,
                                         std::span<const std::size_t> b, std::size_t start,
                                         std::size_t end) {
  const std::size_t n = a.size();
  if (b.size() != n) throw Error("order_crossover: parent lengths differ");
  if (n == 0) return {};
  if (start >= n || end >= n) throw Error("order_crossover: slice out of range");
  std::vector<std::size_t> child(n);
  std::vector<bool> taken(n, false);
  std::size_t j = start;
  for (;; j = (j + 1) % n) {
    child[j] = a[j];
    taken[a[j]] = true;
    if (j == end) break;
  }
  std::size_t write = (end + 1) % n;
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t gene = b[(end + k) % n];
    if (taken[gene]) continue;
    child[write] = gene;
    write = (write + 1) % n;
  }
  return child;
}

GAResult ga_optimize(const HardwareGraph& g, const infometrics::MIMatrix& m, const GAConfig& cfg,
                     const std::vector<std::vector<std::size_t>>& initial_population) {
  cfg.validate();
  const std::size_t n = g.n_qubits();
  check_dims(n, g, m);
  Rng rng(cfg.seed);

  std::vector<std::vector<std::size_t>> pop;
  if (!initial_population.empty()) {
    if (initial_population.size() != cfg.population_size)
      throw Error("ga: initial population size differs from population_size");
    for (const auto& p : initial_population)
      if (p.size() != n || !is_permutation(p))
        throw Error("ga: initial population holds a non-permutation");
    pop = initial_population;
  } else {
    pop.reserve(cfg.population_size);
    for (std::size_t i = 0; i < cfg.population_size; ++i) pop.push_back(random_permutation(n, rng));
  }

  std::vector<double> fit(pop.size());
  auto evaluate = [&] {
    parallel_for(pop.size(), cfg.threads,
                 [&](std::size_t i) { fit[i] = fitness_unchecked(pop[i], g, m, cfg.weights); });
  };

  GAResult result{Assignment::identity(n), 0.0, {}};
  std::vector<std::size_t> best;
  auto record = [&] {
    const auto it = std::max_element(fit.begin(), fit.end());
    if (best.empty() || *it > result.best_fitness) {
      result.best_fitness = *it;
      best = pop[static_cast<std::size_t>(it - fit.begin())];
    }
    result.history.push_back(result.best_fitness);
  };

  auto tournament = [&]() -> const std::vector<std::size_t>& {
    std::size_t winner = rng.below(pop.size());
    for (std::size_t k = 1; k < cfg.tournament_size; ++k) {
      const std::size_t c = rng.below(pop.size());
      if (fit[c] > fit[winner] || (fit[c] == fit[winner] && c < winner)) winner = c;
    }
    return pop[winner];
  };

  evaluate();
  record();
  for (std::size_t gen = 0; gen < cfg.n_generations; ++gen) {
    std::vector<std::size_t> rank(pop.size());
    std::iota(rank.begin(), rank.end(), 0);
    std::stable_sort(rank.begin(), rank.end(),
                     [&](std::size_t a, std::size_t b) { return fit[a] > fit[b]; });

    std::vector<std::vector<std::size_t>> next;
    next.reserve(pop.size());
    for (std::size_t e = 0; e < cfg.elitism_count; ++e) next.push_back(pop[rank[e]]);
    while (next.size() < pop.size()) {
      const auto& p1 = tournament();
      const auto& p2 = tournament();
      std::vector<std::size_t> child;
      if (rng.bernoulli(cfg.crossover_rate)) {
        const std::size_t s = rng.below(n);
        const std::size_t e = rng.below(n);
        child = order_crossover(p1, p2, s, e);
      } else {
        child = p1;
      }
      if (rng.bernoulli(cfg.mutation_rate) && n > 1) {
        const std::size_t i = rng.below(n);
        std::size_t j = rng.below(n - 1);
        if (j >= i) ++j;
        std::swap(child[i], child[j]);
      }
      next.push_back(std::move(child));
    }
    pop = std::move(next);
    evaluate();
    record();
  }
  result.best = Assignment(std::move(best));
  return result;
}

nlohmann::json to_json(const GAResult& r) {
  return nlohmann::json{{"permutation", r.best.map()},
                        {"fitness", r.best_fitness},
                        {"history", r.history}};
}

GAResult ga_result_from_json(const nlohmann::json& j) {
  GAResult r{Assignment(j.at("permutation").get<std::vector<std::size_t>>()),
             j.at("fitness").get<double>(), {}};
  if (j.contains("history")) r.history = j.at("history").get<std::vector<double>>();
  return r;
}

}  // namespace cdfx::topology
