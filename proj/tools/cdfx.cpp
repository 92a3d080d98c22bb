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

// Command-line front end: full runs plus one subcommand per stage.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cdfx/config.hpp"
#include "cdfx/dataset.hpp"
#include "cdfx/encode.hpp"
#include "cdfx/infometrics.hpp"
#include "cdfx/io.hpp"
#include "cdfx/pipeline.hpp"
#include "cdfx/topology.hpp"

namespace {

using namespace cdfx;

pipeline::RunConfig load_config(const std::string& path, const std::optional<std::uint64_t>& seed,
                                const std::optional<unsigned>& threads) {
  auto cfg = pipeline::validate(path);
  if (seed) cfg.set_seed(*seed);
  if (threads) {
    cfg.threads = *threads;
    cfg.ga.threads = *threads;
  }
  return cfg;
}

int cmd_run(const pipeline::RunConfig& cfg) {
  const auto s = pipeline::run(cfg);
  std::cout << "wrote " << s.output_dir.string() << ": " << s.n_samples << " samples, "
            << s.n_quantum_features << " quantum features, " << s.n_combined_features
            << " combined columns, digest " << s.digest << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cdfx: multi-dynamics quantum feature extraction"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "TOML run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Override the configured seed everywhere");
    sub->add_option("--threads", threads, "Worker threads (0 = all cores)");
  };

  auto* run = app.add_subcommand("run", "Run the full flow and write all artifacts");
  add_config(run);

  auto* check = app.add_subcommand("validate", "Check a config and print it fully resolved");
  add_config(check);

  auto* extract = app.add_subcommand(
      "extract", "Encode, simulate and extract using mi.json and assign.json from the output dir");
  add_config(extract);

  auto* encode = app.add_subcommand("encode", "Print one sample's Hamiltonian");
  add_config(encode);
  std::size_t sample = 0;
  int dynamics = 0;
  bool dump_terms = false;
  std::string encode_out;
  encode->add_option("--sample", sample, "Sample row index")->required();
  encode->add_option("--dynamics", dynamics, "Interaction order K (default: first configured)");
  encode->add_flag("--dump-terms", dump_terms, "Include the ordered Trotter factors");
  encode->add_option("--out", encode_out, "Write JSON here instead of stdout");

  auto* mi = app.add_subcommand("mi", "Pairwise normalized MI matrix of a CSV dataset");
  std::string data_path, label, mi_out;
  std::string delimiter = ",";
  std::size_t bins = 0, select = 0;
  mi->add_option("--data", data_path, "Dataset CSV")->required()->check(CLI::ExistingFile);
  mi->add_option("--label", label, "Label column")->required();
  mi->add_option("--delimiter", delimiter, "Field delimiter");
  mi->add_option("--bins", bins, "Histogram bins (0 = automatic)");
  mi->add_option("--select", select, "Keep the top-k features by MI with the label");
  mi->add_option("--out", mi_out, "Output mi.json")->required();

  auto* embed = app.add_subcommand("embed", "Genetic search for the feature-to-qubit assignment");
  std::string graph_path, mi_path, embed_out;
  topology::GAConfig ga;
  embed->add_option("--mi", mi_path, "mi.json")->required()->check(CLI::ExistingFile);
  embed->add_option("--graph", graph_path, "Graph JSON (default: ring over the MI size)")
      ->check(CLI::ExistingFile);
  embed->add_option("--out", embed_out, "Output assign.json")->required();
  embed->add_option("--seed", ga.seed, "GA seed");
  embed->add_option("--population", ga.population_size, "Population size");
  embed->add_option("--generations", ga.n_generations, "Generations");
  embed->add_option("--crossover-rate", ga.crossover_rate, "Crossover probability");
  embed->add_option("--mutation-rate", ga.mutation_rate, "Mutation probability");
  embed->add_option("--elitism", ga.elitism_count, "Elite individuals kept per generation");
  embed->add_option("--lambda2", ga.weights.lambda2, "Edge term weight");
  embed->add_option("--lambda3", ga.weights.lambda3, "Triplet term weight");
  embed->add_option("--threads", ga.threads, "Fitness workers (0 = all cores)");

  auto* graph = app.add_subcommand("graph", "Write a builtin hardware graph as JSON");
  std::string kind = "ring", graph_out;
  std::size_t n = 0, rows = 8, cols = 4;
  graph->add_option("--kind", kind, "ring or heavy-hex")
      ->check(CLI::IsMember({"ring", "heavy-hex"}));
  graph->add_option("--n", n, "Ring size, or subgraph size for heavy-hex");
  graph->add_option("--rows", rows, "Heavy-hex chain count");
  graph->add_option("--cols", cols, "Heavy-hex cells per chain");
  graph->add_option("--out", graph_out, "Output graph JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(load_config(config_path, seed, threads));

    if (check->parsed()) {
      std::cout << load_config(config_path, seed, threads).to_json().dump(2) << "\n";
      return 0;
    }

    if (extract->parsed()) {
      auto cfg = load_config(config_path, seed, threads);
      if (cfg.cached_mi.empty()) cfg.cached_mi = cfg.output_dir / "mi.json";
      if (cfg.cached_assignment.empty()) cfg.cached_assignment = cfg.output_dir / "assign.json";
      return cmd_run(cfg);
    }

    if (encode->parsed()) {
      const auto cfg = load_config(config_path, seed, threads);
      const int k = dynamics != 0 ? dynamics : cfg.dynamics.front();
      const auto p = pipeline::prepare(cfg);
      const auto hz = pipeline::sample_hamiltonian(p, sample, k);
      nlohmann::json j{{"sample", sample}, {"dynamics", k}, {"hamiltonian", encode::to_json(hz)}};
      if (dump_terms)
        j["trotter"] = encode::to_json(encode::trotter_sequence(hz, cfg.schedule, cfg.impulse));
      if (encode_out.empty())
        std::cout << j.dump(2) << "\n";
      else
        io::write_json(encode_out, j);
      return 0;
    }

    if (mi->parsed()) {
      if (delimiter.size() != 1) throw Error("--delimiter must be a single character");
      auto ds = dataset::load_csv(data_path, label, {delimiter[0]});
      const auto rows_all = dataset::all_rows(ds.n_samples());
      const std::size_t b = bins != 0 ? bins : infometrics::default_bins(ds.n_samples());
      std::vector<std::size_t> cols_kept = dataset::all_rows(ds.n_features());
      if (select != 0) {
        cols_kept = infometrics::select_features(ds, rows_all, select, b);
        std::sort(cols_kept.begin(), cols_kept.end());
      }
      const auto subset = ds.select_columns(cols_kept);
      auto j = infometrics::to_json(infometrics::mi_matrix(subset, rows_all, b, 0), subset.names());
      j["columns"] = cols_kept;
      io::write_json(mi_out, j);
      std::cout << "wrote " << mi_out << " (" << subset.n_features() << " features, " << b
                << " bins)\n";
      return 0;
    }

    if (embed->parsed()) {
      const auto m = infometrics::mi_matrix_from_json(io::read_json(mi_path));
      auto g = graph_path.empty() ? topology::ring(m.size()) : topology::load_graph(graph_path);
      if (g.n_qubits() != m.size()) g = topology::connected_subgraph(g, m.size());
      const auto r = topology::ga_optimize(g, m, ga);
      io::write_json(embed_out, topology::to_json(r));
      std::cout << "wrote " << embed_out << " (fitness " << io::format_double(r.best_fitness)
                << ")\n";
      return 0;
    }

    if (graph->parsed()) {
      auto g = kind == "ring" ? topology::ring(n) : topology::heavy_hex_patch(rows, cols);
      if (kind != "ring" && n != 0 && n != g.n_qubits()) g = topology::connected_subgraph(g, n);
      io::write_json(graph_out, topology::to_json(g));
      std::cout << "wrote " << graph_out << " (" << g.n_qubits() << " qubits, "
                << g.edges().size() << " edges, " << g.triplets().size() << " triplets)\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "cdfx: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
