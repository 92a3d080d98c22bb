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

#include <fstream>

#include "cdfx/config.hpp"
#include "cdfx/error.hpp"
#include "cdfx/io.hpp"
#include "fixtures.hpp"

using namespace cdfx;
using namespace cdfx::pipeline;

TEST_CASE("a minimal config takes the documented defaults") {
  const auto cfg = parse_config("[dataset]\npath = \"d.csv\"\nlabel = \"y\"\n", "/base");
  CHECK(cfg.dataset == std::filesystem::path("/base/d.csv"));
  CHECK(cfg.label_column == "y");
  CHECK(cfg.dynamics == std::vector<int>{2});
  CHECK(cfg.graph == GraphKind::Ring);
  CHECK(cfg.impulse);
  CHECK(cfg.mode == ExtractionMode::Exact);
  CHECK(cfg.shots == 8192);
  CHECK(cfg.n_splits == 5);
  CHECK(cfg.n_repeats == 5);
  CHECK(cfg.holdout == -1);
  CHECK(cfg.seed == 7);
  CHECK(cfg.ga.population_size == 200);
  CHECK(cfg.ga.n_generations == 500);
  CHECK(cfg.ga.crossover_rate == 0.9);
  CHECK(cfg.ga.mutation_rate == 0.2);
  CHECK(cfg.schedule.total_time == 1.0);
  CHECK(cfg.schedule.profile == encode::Profile::Sin2);
  CHECK(cfg.output_dir == std::filesystem::path("/base/cdfx-out"));
}

TEST_CASE("every table is read") {
  const auto cfg = parse_config(R"(
[dataset]
path = "/abs/d.tsv"
label = "toxic"
delimiter = "\t"
[encoding]
qubits = 156
dynamics = [2, 3]
[graph]
kind = "ring"
[mi]
bins = 10
[ga]
population = 50
generations = 20
tournament = 4
crossover_rate = 0.8
mutation_rate = 0.1
elitism = 2
lambda2 = 0.5
lambda3 = 2.0
[schedule]
total_time = 2.0
profile = "linear"
steps = 4
impulse = false
[extraction]
mode = "shots"
shots = 1000
[folds]
splits = 3
repeats = 2
holdout = 5
[run]
seed = 99
output = "out"
threads = 3
memory_mb = 64
)",
                                "/b");
  CHECK(cfg.dataset == std::filesystem::path("/abs/d.tsv"));
  CHECK(cfg.delimiter == '\t');
  CHECK(cfg.qubits == 156);
  CHECK(cfg.dynamics == std::vector<int>{2, 3});
  CHECK(cfg.mi_bins == 10);
  CHECK(cfg.ga.tournament_size == 4);
  CHECK(cfg.ga.weights.lambda3 == 2.0);
  CHECK(cfg.ga.seed == 99);
  CHECK(cfg.ga.threads == 3);
  CHECK(cfg.schedule.n_steps == 4);
  CHECK(!cfg.impulse);
  CHECK(cfg.mode == ExtractionMode::Shots);
  CHECK(cfg.shots == 1000);
  CHECK(cfg.holdout == 5);
  CHECK(cfg.memory_mb == 64);
  CHECK(cfg.output_dir == std::filesystem::path("/b/out"));

  const auto j = cfg.to_json();
  CHECK(j["encoding"]["dynamics"] == nlohmann::json::array({2, 3}));
  CHECK(j["schedule"]["profile"] == "linear");
}

TEST_CASE("unknown tables and keys are rejected by name") {
  const std::string base = "[dataset]\npath = \"d.csv\"\nlabel = \"y\"\n";
  CHECK_THROWS_WITH_AS(parse_config(base + "[extra]\nx = 1\n"), doctest::Contains("'extra'"),
                       Error);
  CHECK_THROWS_WITH_AS(parse_config(base + "[ga]\npopsize = 3\n"),
                       doctest::Contains("'ga.popsize'"), Error);
  CHECK_THROWS_WITH_AS(parse_config(base + "stray = 1\n"), doctest::Contains("stray"), Error);
}

TEST_CASE("constraint violations are named") {
  const std::string base = "[dataset]\npath = \"d.csv\"\nlabel = \"y\"\n";
  CHECK_THROWS_WITH_AS(parse_config(base + "[encoding]\ndynamics = [4]\n"),
                       doctest::Contains("K in {2, 3}"), Error);
  CHECK_THROWS_WITH_AS(parse_config(base + "[encoding]\ndynamics = []\n"),
                       doctest::Contains("dynamics"), Error);
  CHECK_THROWS_WITH_AS(parse_config(base + "[encoding]\ndynamics = [2, 2]\n"),
                       doctest::Contains("repeats"), Error);
  CHECK_THROWS_WITH_AS(parse_config(base + "[encoding]\nqubits = \"many\"\n"),
                       doctest::Contains("wrong type"), Error);
  CHECK_THROWS_WITH_AS(parse_config(base + "[graph]\nkind = \"torus\"\n"),
                       doctest::Contains("graph.kind"), Error);
  CHECK_THROWS_WITH_AS(parse_config(base + "[ga]\nmutation_rate = 2.0\n"),
                       doctest::Contains("mutation_rate"), Error);
  CHECK_THROWS_WITH_AS(parse_config(base + "[folds]\nsplits = 2\nrepeats = 1\nholdout = 2\n"),
                       doctest::Contains("holdout"), Error);
  CHECK_THROWS_WITH_AS(
      parse_config(base + "[encoding]\nqubits = 200\n[graph]\nkind = \"heavy_hex\"\n"),
      doctest::Contains("exceeds the 156-qubit"), Error);
  CHECK_THROWS_WITH_AS(parse_config("[dataset]\nlabel = \"y\"\n"), doctest::Contains("dataset.path"),
                       Error);
  CHECK_THROWS_WITH_AS(parse_config(base + "[mi\n"), doctest::Contains("parse error"), Error);
}

TEST_CASE("156 qubits on a ring of 156 is valid") {
  const auto cfg = parse_config(
      "[dataset]\npath = \"d.csv\"\nlabel = \"y\"\n[encoding]\nqubits = 156\n[graph]\nkind = "
      "\"ring\"\n");
  CHECK(cfg.qubits == 156);
  const auto hex = parse_config(
      "[dataset]\npath = \"d.csv\"\nlabel = \"y\"\n[encoding]\nqubits = 156\n[graph]\nkind = "
      "\"heavy_hex\"\n");
  CHECK(hex.hex_rows == 8);
  CHECK(hex.hex_cols == 4);
}

TEST_CASE("validate checks that referenced files exist") {
  fixtures::TempDir dir("cfg");
  io::write_text(dir / "run.toml", "[dataset]\npath = \"data.csv\"\nlabel = \"y\"\n");
  CHECK_THROWS_WITH_AS(validate(dir / "run.toml"), doctest::Contains("does not exist"), Error);
  io::write_text(dir / "data.csv", "a,y\n1,0\n2,1\n");
  const auto cfg = validate(dir / "run.toml");
  CHECK(cfg.dataset == dir / "data.csv");

  io::write_text(dir / "g.toml",
                 "[dataset]\npath = \"data.csv\"\nlabel = \"y\"\n[encoding]\nqubits = 5\n"
                 "[graph]\nkind = \"file\"\nfile = \"g.json\"\n");
  CHECK_THROWS_WITH_AS(validate(dir / "g.toml"), doctest::Contains("graph.file"), Error);
  io::write_json(dir / "g.json", nlohmann::json{{"n_qubits", 4}, {"edges", {{0, 1}, {1, 2}, {2, 3}}}});
  CHECK_THROWS_WITH_AS(validate(dir / "g.toml"), doctest::Contains("exceeds the 4-qubit graph"),
                       Error);
}

TEST_CASE("set_seed overrides the GA seed too") {
  auto cfg = parse_config("[dataset]\npath = \"d.csv\"\nlabel = \"y\"\n");
  cfg.set_seed(123);
  CHECK(cfg.seed == 123);
  CHECK(cfg.ga.seed == 123);
}
