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

#include "cdfx/config.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "cdfx/error.hpp"
#include "cdfx/io.hpp"

namespace cdfx::pipeline {

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"dataset", {"path", "label", "delimiter"}},
      {"encoding", {"qubits", "dynamics"}},
      {"graph", {"kind", "rows", "cols", "file"}},
      {"mi", {"bins"}},
      {"ga",
       {"population", "generations", "tournament", "crossover_rate", "mutation_rate", "elitism",
        "lambda2", "lambda3"}},
      {"schedule", {"total_time", "profile", "steps", "impulse"}},
      {"extraction", {"mode", "shots"}},
      {"folds", {"splits", "repeats", "holdout"}},
      {"cache", {"mi", "assignment"}},
      {"run", {"seed", "output", "threads", "memory_mb"}},
  };
  return s;
}

void reject_unknown(const toml::table& root) {
  for (const auto& [key, node] : root) {
    const std::string name(key.str());
    const auto it = schema().find(name);
    if (it == schema().end()) throw Error("config: unknown table '" + name + "'");
    const auto* table = node.as_table();
    if (table == nullptr) throw Error("config: '" + name + "' must be a table");
    for (const auto& [sub, _] : *table) {
      const std::string sub_name(sub.str());
      if (!it->second.contains(sub_name))
        throw Error("config: unknown key '" + name + "." + sub_name + "'");
    }
  }
}

class Reader {
 public:
  explicit Reader(const toml::table& root) : root_(root) {}

  const toml::node* node(const char* table, const char* key) const {
    const auto* t = root_[table].as_table();
    return t == nullptr ? nullptr : t->get(key);
  }

  template <typename T>
  std::optional<T> get(const char* table, const char* key) const {
    const auto* n = node(table, key);
    if (n == nullptr) return std::nullopt;
    if constexpr (std::is_same_v<T, double>) {
      if (auto v = n->value<double>()) return *v;
    } else if constexpr (std::is_same_v<T, bool>) {
      if (n->is_boolean()) return n->value<bool>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (n->is_string()) return n->value<std::string>();
    } else {
      if (n->is_integer()) return static_cast<T>(*n->value<std::int64_t>());
    }
    throw Error(std::string("config: '") + table + "." + key + "' has the wrong type");
  }

  std::int64_t non_negative(const char* table, const char* key, std::int64_t fallback) const {
    const auto v = get<std::int64_t>(table, key).value_or(fallback);
    if (v < 0) throw Error(std::string("config: '") + table + "." + key + "' must be >= 0");
    return v;
  }

 private:
  const toml::table& root_;
};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

}  // namespace

void RunConfig::set_seed(std::uint64_t s) {
  seed = s;
  ga.seed = s;
}

void RunConfig::check() const {
  if (dataset.empty()) throw Error("config: 'dataset.path' is required");
  if (label_column.empty()) throw Error("config: 'dataset.label' is required");
  if (dynamics.empty() || dynamics.size() > 2)
    throw Error("config: 'encoding.dynamics' must list one or two K values");
  for (int k : dynamics)
    if (k != 2 && k != 3)
      throw Error("config: 'encoding.dynamics' value " + std::to_string(k) +
                  " violates K in {2, 3}");
  if (dynamics.size() == 2 && dynamics[0] == dynamics[1])
    throw Error("config: 'encoding.dynamics' repeats K=" + std::to_string(dynamics[0]));
  if (graph == GraphKind::HeavyHex && (hex_rows == 0 || hex_cols == 0))
    throw Error("config: heavy_hex graph needs 'graph.rows' and 'graph.cols' >= 1");
  if (graph == GraphKind::File && graph_file.empty())
    throw Error("config: graph kind 'file' needs 'graph.file'");
  if (mi_bins == 1) throw Error("config: 'mi.bins' must be 0 (automatic) or >= 2");
  ga.validate();
  schedule.validate();
  if (mode == ExtractionMode::Shots && shots == 0)
    throw Error("config: 'extraction.shots' must be >= 1");
  if (n_splits < 2) throw Error("config: 'folds.splits' must be >= 2");
  if (n_repeats < 1) throw Error("config: 'folds.repeats' must be >= 1");
  if (holdout >= static_cast<long>(n_splits * n_repeats))
    throw Error("config: 'folds.holdout' must be < splits * repeats");
  if (memory_mb == 0) throw Error("config: 'run.memory_mb' must be positive");
  if (qubits != 0 && graph == GraphKind::HeavyHex) {
    const std::size_t available = 4 * hex_cols * hex_rows + hex_cols * (hex_rows - 1);
    if (qubits > available)
      throw Error("config: qubit budget " + std::to_string(qubits) + " exceeds the " +
                  std::to_string(available) + "-qubit heavy-hex graph");
  }
  if (qubits != 0 && qubits < 3)
    throw Error("config: 'encoding.qubits' must be >= 3 for a closed chain");
}

nlohmann::json RunConfig::to_json() const {
  auto graph_kind = [&] {
    switch (graph) {
      case GraphKind::Ring: return "ring";
      case GraphKind::HeavyHex: return "heavy_hex";
      case GraphKind::File: return "file";
    }
    return "ring";
  };
  return nlohmann::json{
      {"dataset",
       {{"path", dataset.string()}, {"label", label_column}, {"delimiter", std::string(1, delimiter)}}},
      {"encoding", {{"qubits", qubits}, {"dynamics", dynamics}}},
      {"graph",
       {{"kind", graph_kind()}, {"rows", hex_rows}, {"cols", hex_cols}, {"file", graph_file.string()}}},
      {"mi", {{"bins", mi_bins}}},
      {"ga",
       {{"population", ga.population_size},
        {"generations", ga.n_generations},
        {"tournament", ga.tournament_size},
        {"crossover_rate", ga.crossover_rate},
        {"mutation_rate", ga.mutation_rate},
        {"elitism", ga.elitism_count},
        {"lambda2", ga.weights.lambda2},
        {"lambda3", ga.weights.lambda3}}},
      {"schedule",
       {{"total_time", schedule.total_time},
        {"profile", encode::to_string(schedule.profile)},
        {"steps", schedule.n_steps},
        {"impulse", impulse}}},
      {"extraction", {{"mode", mode == ExtractionMode::Exact ? "exact" : "shots"}, {"shots", shots}}},
      {"folds", {{"splits", n_splits}, {"repeats", n_repeats}, {"holdout", holdout}}},
      {"cache", {{"mi", cached_mi.string()}, {"assignment", cached_assignment.string()}}},
      {"run", {{"seed", seed}, {"output", output_dir.string()}, {"memory_mb", memory_mb}}},
  };
}

RunConfig parse_config(std::string_view toml_text, const std::filesystem::path& base_dir) {
  toml::table root;
  try {
    root = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "config: TOML parse error: " << e.description() << " at line "
        << e.source().begin.line;
    throw Error(msg.str());
  }
  reject_unknown(root);
  const Reader r(root);
  RunConfig cfg;

  if (auto p = r.get<std::string>("dataset", "path")) cfg.dataset = resolve(base_dir, *p);
  cfg.label_column = r.get<std::string>("dataset", "label").value_or("");
  if (auto d = r.get<std::string>("dataset", "delimiter")) {
    if (d->size() != 1) throw Error("config: 'dataset.delimiter' must be a single character");
    cfg.delimiter = (*d)[0];
  }

  cfg.qubits = static_cast<std::size_t>(r.non_negative("encoding", "qubits", 0));
  if (const auto* n = r.node("encoding", "dynamics")) {
    const auto* arr = n->as_array();
    if (arr == nullptr) throw Error("config: 'encoding.dynamics' must be an array");
    cfg.dynamics.clear();
    for (const auto& v : *arr) {
      if (!v.is_integer()) throw Error("config: 'encoding.dynamics' must hold integers");
      cfg.dynamics.push_back(static_cast<int>(*v.value<std::int64_t>()));
    }
  }

  const auto kind = r.get<std::string>("graph", "kind").value_or("ring");
  if (kind == "ring") {
    cfg.graph = GraphKind::Ring;
  } else if (kind == "heavy_hex") {
    cfg.graph = GraphKind::HeavyHex;
  } else if (kind == "file") {
    cfg.graph = GraphKind::File;
  } else {
    throw Error("config: 'graph.kind' must be ring, heavy_hex or file (got '" + kind + "')");
  }
  const bool hex_default = cfg.graph == GraphKind::HeavyHex;
  cfg.hex_rows = static_cast<std::size_t>(r.non_negative("graph", "rows", hex_default ? 8 : 0));
  cfg.hex_cols = static_cast<std::size_t>(r.non_negative("graph", "cols", hex_default ? 4 : 0));
  if (auto f = r.get<std::string>("graph", "file")) cfg.graph_file = resolve(base_dir, *f);

  cfg.mi_bins = static_cast<std::size_t>(r.non_negative("mi", "bins", 0));

  auto& ga = cfg.ga;
  ga.population_size = static_cast<std::size_t>(r.non_negative("ga", "population", 200));
  ga.n_generations = static_cast<std::size_t>(r.non_negative("ga", "generations", 500));
  ga.tournament_size = static_cast<std::size_t>(r.non_negative("ga", "tournament", 3));
  ga.crossover_rate = r.get<double>("ga", "crossover_rate").value_or(0.9);
  ga.mutation_rate = r.get<double>("ga", "mutation_rate").value_or(0.2);
  ga.elitism_count = static_cast<std::size_t>(r.non_negative("ga", "elitism", 1));
  ga.weights.lambda2 = r.get<double>("ga", "lambda2").value_or(1.0);
  ga.weights.lambda3 = r.get<double>("ga", "lambda3").value_or(1.0);

  cfg.schedule.total_time = r.get<double>("schedule", "total_time").value_or(1.0);
  cfg.schedule.profile =
      encode::profile_from_string(r.get<std::string>("schedule", "profile").value_or("sin2"));
  cfg.schedule.n_steps = static_cast<std::size_t>(r.non_negative("schedule", "steps", 1));
  cfg.impulse = r.get<bool>("schedule", "impulse").value_or(true);

  const auto mode = r.get<std::string>("extraction", "mode").value_or("exact");
  if (mode == "exact") {
    cfg.mode = ExtractionMode::Exact;
  } else if (mode == "shots") {
    cfg.mode = ExtractionMode::Shots;
  } else {
    throw Error("config: 'extraction.mode' must be exact or shots (got '" + mode + "')");
  }
  cfg.shots = static_cast<std::uint64_t>(r.non_negative("extraction", "shots", 8192));

  cfg.n_splits = static_cast<std::size_t>(r.non_negative("folds", "splits", 5));
  cfg.n_repeats = static_cast<std::size_t>(r.non_negative("folds", "repeats", 5));
  cfg.holdout = static_cast<long>(r.get<std::int64_t>("folds", "holdout").value_or(-1));
  if (cfg.holdout < -1) throw Error("config: 'folds.holdout' must be -1 or a fold index");

  if (auto p = r.get<std::string>("cache", "mi")) cfg.cached_mi = resolve(base_dir, *p);
  if (auto p = r.get<std::string>("cache", "assignment"))
    cfg.cached_assignment = resolve(base_dir, *p);

  cfg.set_seed(static_cast<std::uint64_t>(r.non_negative("run", "seed", 7)));
  cfg.output_dir = resolve(base_dir, r.get<std::string>("run", "output").value_or("cdfx-out"));
  cfg.threads = static_cast<unsigned>(r.non_negative("run", "threads", 0));
  cfg.ga.threads = cfg.threads;
  cfg.memory_mb = static_cast<std::size_t>(r.non_negative("run", "memory_mb", 1024));

  cfg.check();
  return cfg;
}

RunConfig validate(const std::filesystem::path& config_file) {
  const auto text = io::read_text(config_file);
  auto base = config_file.parent_path();
  if (base.empty()) base = std::filesystem::current_path();
  RunConfig cfg = parse_config(text, base);
  auto require = [](const std::filesystem::path& p, const char* what) {
    if (!p.empty() && !std::filesystem::exists(p))
      throw Error(std::string("config: ") + what + " '" + p.string() + "' does not exist");
  };
  require(cfg.dataset, "dataset.path");
  if (cfg.graph == GraphKind::File) {
    require(cfg.graph_file, "graph.file");
    if (cfg.qubits != 0) {
      const auto n = topology::load_graph(cfg.graph_file).n_qubits();
      if (cfg.qubits > n)
        throw Error("config: qubit budget " + std::to_string(cfg.qubits) + " exceeds the " +
                    std::to_string(n) + "-qubit graph in '" + cfg.graph_file.string() + "'");
    }
  }
  require(cfg.cached_mi, "cache.mi");
  require(cfg.cached_assignment, "cache.assignment");
  return cfg;
}

}  // namespace cdfx::pipeline
