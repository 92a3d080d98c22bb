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

#include "cdfx/pipeline.hpp"

#include <algorithm>
#include <map>

#include "cdfx/io.hpp"
#include "cdfx/parallel.hpp"
#include "cdfx/rng.hpp"
#include "cdfx/simulate.hpp"

namespace cdfx::pipeline {

namespace {

template <typename Fn>
auto in_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

topology::HardwareGraph build_graph(const RunConfig& cfg, std::size_t n) {
  switch (cfg.graph) {
    case GraphKind::Ring:
      return topology::ring(n);
    case GraphKind::HeavyHex: {
      auto g = topology::heavy_hex_patch(cfg.hex_rows, cfg.hex_cols);
      return g.n_qubits() == n ? g : topology::connected_subgraph(g, n);
    }
    case GraphKind::File: {
      auto g = topology::load_graph(cfg.graph_file);
      return g.n_qubits() == n ? g : topology::connected_subgraph(g, n);
    }
  }
  throw Error("unknown graph kind");
}

infometrics::MIMatrix load_cached_mi(const std::filesystem::path& path,
                                     const std::vector<std::string>& names) {
  const auto j = io::read_json(path);
  auto m = infometrics::mi_matrix_from_json(j);
  if (m.size() != names.size())
    throw Error("cached MI matrix '" + path.string() + "' covers " + std::to_string(m.size()) +
                " features, the run selects " + std::to_string(names.size()));
  if (j.contains("names") && j["names"].get<std::vector<std::string>>() != names)
    throw Error("cached MI matrix '" + path.string() + "' names different features");
  return m;
}

topology::GAResult load_cached_assignment(const std::filesystem::path& path, std::size_t n) {
  auto r = topology::ga_result_from_json(io::read_json(path));
  if (r.best.size() != n)
    throw Error("cached assignment '" + path.string() + "' has " + std::to_string(r.best.size()) +
                " entries, the run uses " + std::to_string(n) + " qubits");
  return r;
}

std::uint64_t shot_seed(std::uint64_t seed, std::size_t sample, int k) {
  return mix_seed(seed ^ mix_seed((static_cast<std::uint64_t>(sample) << 8) |
                                  static_cast<std::uint64_t>(k)));
}

std::string plan_text(const extract::DynamicsPlan& plan) {
  std::string s;
  for (const auto& [order, k] : plan.source_of_order) {
    if (!s.empty()) s += ",";
    s += "q" + std::to_string(order) + "@k" + std::to_string(k);
  }
  return s;
}

}  // namespace

std::vector<std::string> Prepared::selected_names() const {
  std::vector<std::string> out;
  for (auto c : selected) out.push_back(data.names()[c]);
  return out;
}

std::vector<double> Prepared::encoded_input(std::size_t sample) const {
  if (sample >= data.n_samples())
    throw Error("sample " + std::to_string(sample) + " out of range (" +
                std::to_string(data.n_samples()) + " samples)");
  std::vector<double> raw;
  raw.reserve(selected.size());
  for (auto c : selected) raw.push_back(data.at(sample, c));
  return scaler.apply(raw);
}

Prepared prepare(const RunConfig& cfg) {
  in_stage("config", [&] { cfg.check(); });
  auto data = in_stage("ingest", [&] {
    return dataset::load_csv(cfg.dataset, cfg.label_column, {cfg.delimiter});
  });

  auto folds = in_stage("folds", [&] {
    return dataset::make_folds(data, cfg.n_splits, cfg.n_repeats, cfg.seed);
  });
  const auto train = cfg.holdout < 0 ? dataset::all_rows(data.n_samples())
                                     : folds.train_set(static_cast<std::size_t>(cfg.holdout));

  const std::size_t bins =
      cfg.mi_bins != 0 ? cfg.mi_bins : infometrics::default_bins(train.size());

  auto selected = in_stage("select", [&] {
    const std::size_t n = cfg.qubits == 0 ? data.n_features() : cfg.qubits;
    if (n > data.n_features())
      throw Error("qubit budget " + std::to_string(n) + " exceeds the " +
                  std::to_string(data.n_features()) + " available features");
    std::vector<std::size_t> cols;
    if (n == data.n_features()) {
      cols = dataset::all_rows(n);
    } else {
      cols = infometrics::select_features(data, train, n, bins);
      std::sort(cols.begin(), cols.end());
    }
    return cols;
  });
  const auto subset = data.select_columns(selected);

  auto scaler = in_stage("scale", [&] { return dataset::fit_scaler(subset, train); });

  auto mi = in_stage("mi", [&] {
    if (!cfg.cached_mi.empty()) return load_cached_mi(cfg.cached_mi, subset.names());
    return infometrics::mi_matrix(subset, train, bins, cfg.threads);
  });

  auto graph = in_stage("graph", [&] { return build_graph(cfg, selected.size()); });

  auto embedding = in_stage("embed", [&] {
    if (!cfg.cached_assignment.empty())
      return load_cached_assignment(cfg.cached_assignment, selected.size());
    return topology::ga_optimize(graph, mi, cfg.ga);
  });

  auto plan = extract::DynamicsPlan::for_dynamics(cfg.dynamics);
  extract::ObservableSet obs{selected.size()};
  in_stage("extract", [&] { obs.validate(); });

  return Prepared{std::move(data),  std::move(folds),     train,
                  std::move(selected), std::move(scaler), std::move(mi),
                  std::move(graph), std::move(embedding), std::move(plan),
                  obs};
}

encode::ZPolynomial sample_hamiltonian(const Prepared& p, std::size_t sample, int k) {
  const auto coeffs = encode::hyper_coeffs_for(p.graph, p.embedding.best, p.mi, k);
  return encode::encode_hamiltonian(p.encoded_input(sample), p.graph, coeffs, p.embedding.best, k);
}

std::vector<extract::FeatureRecord> quantum_features(const RunConfig& cfg, const Prepared& p) {
  const auto ks = p.plan.dynamics();
  std::map<int, std::vector<infometrics::HyperCoeffs>> coeffs;
  for (int k : ks) coeffs[k] = encode::hyper_coeffs_for(p.graph, p.embedding.best, p.mi, k);

  const std::size_t budget = cfg.memory_mb << 20;
  const std::size_t n_samples = p.data.n_samples();
  std::vector<extract::FeatureRecord> records(n_samples);
  parallel_for(n_samples, cfg.threads, [&](std::size_t i) {
    const auto x = p.encoded_input(i);
    std::map<int, simulate::Statevector> states;
    std::map<int, simulate::ShotTable> tables;
    for (int k : ks) {
      const auto hz = in_stage("encode", [&] {
        return encode::encode_hamiltonian(x, p.graph, coeffs.at(k), p.embedding.best, k);
      });
      const auto seq =
          in_stage("encode", [&] { return encode::trotter_sequence(hz, cfg.schedule, cfg.impulse); });
      auto state = in_stage("simulate", [&] {
        auto s = simulate::plus_state(p.n_qubits(), budget);
        simulate::run_sequence(s, seq);
        return s;
      });
      if (cfg.mode == ExtractionMode::Shots)
        tables.emplace(k, in_stage("simulate", [&] {
                         return simulate::sample(state, cfg.shots, shot_seed(cfg.seed, i, k));
                       }));
      states.emplace(k, std::move(state));
    }
    std::map<int, extract::StateSource> sources;
    for (int k : ks) {
      if (cfg.mode == ExtractionMode::Shots)
        sources.emplace(k, &tables.at(k));
      else
        sources.emplace(k, &states.at(k));
    }
    records[i] =
        in_stage("extract", [&] { return extract::feature_map(i, sources, p.observables, p.plan); });
  });
  return records;
}

extract::FeatureRecord combined_record(const Prepared& p, const extract::FeatureRecord& quantum) {
  std::vector<double> raw;
  for (auto c : p.selected) raw.push_back(p.data.at(quantum.sample_id, c));
  const auto names = p.selected_names();
  return extract::concat_features(names, raw, quantum);
}

RunSummary run(const RunConfig& cfg) {
  const auto out = cfg.output_dir;
  nlohmann::json manifest{{"config", cfg.to_json()},
                          {"config_hash", io::digest(cfg.to_json().dump())},
                          {"seed", cfg.seed}};
  std::vector<std::string> written;
  std::vector<std::string> stages_done;
  auto put_json = [&](const char* name, const nlohmann::json& j) {
    io::write_json(out / name, j);
    written.emplace_back(name);
  };
  auto put_text = [&](const char* name, const std::string& text) {
    io::write_text(out / name, text);
    written.emplace_back(name);
  };
  auto artifact_digests = [&] {
    nlohmann::json files = nlohmann::json::object();
    std::string all;
    for (const auto& name : written) {
      const auto d = io::file_digest(out / name);
      files[name] = d;
      all += name + ":" + d + "\n";
    }
    return std::pair{files, io::digest(all)};
  };

  try {
    std::filesystem::create_directories(out);
    const auto p = prepare(cfg);
    stages_done = {"ingest", "folds", "select", "scale", "mi", "graph", "embed"};
    const auto names = p.selected_names();

    in_stage("export", [&] {
      put_json("foldplan.json", dataset::to_json(p.folds));
      auto mi_json = infometrics::to_json(p.mi, names);
      mi_json["columns"] = p.selected;
      put_json("mi.json", mi_json);
      put_json("graph.json", topology::to_json(p.graph));
      put_json("assign.json", topology::to_json(p.embedding));
    });

    const auto quantum = quantum_features(cfg, p);
    stages_done.insert(stages_done.end(), {"encode", "simulate", "extract"});

    RunSummary summary{out, quantum.size(), quantum.empty() ? 0 : quantum.front().size(), 0, {}};
    in_stage("export", [&] {
      std::vector<extract::FeatureRecord> combined;
      combined.reserve(quantum.size());
      for (const auto& q : quantum) combined.push_back(combined_record(p, q));
      summary.n_combined_features = combined.empty() ? 0 : combined.front().size();
      put_text("features.csv", extract::to_csv(quantum, p.data.labels()));
      put_text("combined.csv", extract::to_csv(combined, p.data.labels()));

      nlohmann::json observables = nlohmann::json::array();
      if (!quantum.empty())
        for (const auto& b : quantum.front().blocks)
          observables.push_back(
              {{"block", b.provenance},
               {"names", std::vector<std::string>(quantum.front().names.begin() + b.begin,
                                                  quantum.front().names.begin() + b.end)}});
      nlohmann::json plan = nlohmann::json::object();
      for (const auto& [order, k] : p.plan.source_of_order) plan[std::to_string(order)] = k;

      manifest["n_samples"] = p.data.n_samples();
      manifest["n_qubits"] = p.n_qubits();
      manifest["selected_features"] = names;
      manifest["selected_columns"] = p.selected;
      manifest["label_values"] = p.data.label_values();
      manifest["train_rows"] = p.train_rows.size();
      manifest["holdout"] = cfg.holdout;
      manifest["dynamics"] = p.plan.dynamics();
      manifest["dynamics_plan"] = plan;
      manifest["dynamics_plan_text"] = plan_text(p.plan);
      manifest["observables"] = observables;
      manifest["n_quantum_features"] = summary.n_quantum_features;
      manifest["n_combined_features"] = summary.n_combined_features;
      manifest["assignment_fitness"] = p.embedding.best_fitness;
    });
    stages_done.emplace_back("export");

    auto [files, digest] = artifact_digests();
    manifest["stages"] = stages_done;
    manifest["files"] = files;
    manifest["digest"] = digest;
    manifest["status"] = "complete";
    io::write_json(out / "manifest.json", manifest);
    summary.digest = digest;
    return summary;
  } catch (const std::exception& raw) {
    const auto* tagged = dynamic_cast<const StageError*>(&raw);
    const StageError e = tagged ? *tagged : StageError("setup", raw.what());
    try {
      auto [files, digest] = artifact_digests();
      manifest["stages"] = stages_done;
      manifest["files"] = files;
      manifest["partial"] = !written.empty();
      manifest["status"] = "failed";
      manifest["failed_stage"] = e.stage();
      manifest["error"] = e.cause();
      io::write_json(out / "manifest.json", manifest);
    } catch (const std::exception&) {
      // the original failure is the one worth reporting
    }
    throw e;
  }
}

}  // namespace cdfx::pipeline
