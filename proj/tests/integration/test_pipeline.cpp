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

#include <sstream>

#include "cdfx/dataset.hpp"
#include "cdfx/error.hpp"
#include "cdfx/io.hpp"
#include "cdfx/pipeline.hpp"
#include "fixtures.hpp"

using namespace cdfx;
using namespace cdfx::pipeline;

namespace {

dataset::Dataset eight_features(std::size_t n = 120) {
  return fixtures::synthetic(n, 8, 31, [](auto x) { return x[2] * x[5] > 0 ? 1 : 0; });
}

std::string config_text(const std::string& extra) {
  return "[dataset]\npath = \"data.csv\"\nlabel = \"label\"\n"
         "[ga]\npopulation = 30\ngenerations = 25\n" +
         extra;
}

RunConfig write_and_validate(const fixtures::TempDir& dir, const std::string& name,
                             const std::string& extra) {
  io::write_text(dir / name, config_text(extra));
  return validate(dir / name);
}

std::size_t header_columns(const std::string& csv) {
  const auto line = csv.substr(0, csv.find('\n'));
  return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

}  // namespace

TEST_CASE("run writes every artifact with the expected shapes") {
  fixtures::TempDir dir("pipe");
  dataset::write_csv(eight_features(), dir / "data.csv");
  const auto cfg = write_and_validate(dir, "run.toml",
                                      "[encoding]\ndynamics = [2, 3]\n[run]\noutput = \"out\"\n");
  const auto s = run(cfg);
  CHECK(s.n_samples == 120);
  CHECK(s.n_quantum_features == 24);
  CHECK(s.n_combined_features == 32);
  for (const char* f : {"mi.json", "assign.json", "graph.json", "foldplan.json", "features.csv",
                        "combined.csv", "manifest.json"})
    CHECK(std::filesystem::exists(dir / "out" / f));

  const auto features = io::read_text(dir / "out/features.csv");
  CHECK(header_columns(features) == 1 + 24 + 1);
  CHECK(features.rfind("sample,q1_0@k2", 0) == 0);
  CHECK(features.find("q3_7_0_1@k3,label\n") != std::string::npos);
  const auto combined = io::read_text(dir / "out/combined.csv");
  CHECK(combined.rfind("sample,c_f0,c_f1", 0) == 0);
  CHECK(header_columns(combined) == 1 + 8 + 24 + 1);

  const auto m = io::read_json(dir / "out/manifest.json");
  CHECK(m["status"] == "complete");
  CHECK(m["digest"] == s.digest);
  CHECK(m["dynamics_plan"]["3"] == 3);
  CHECK(m["n_quantum_features"] == 24);
  CHECK(m["files"].contains("combined.csv"));
  CHECK(m["config_hash"].get<std::string>().size() == 16);

  const auto plan = dataset::fold_plan_from_json(io::read_json(dir / "out/foldplan.json"));
  CHECK(plan.n_samples == 120);
  CHECK(plan.test_sets.size() == 5);
}

TEST_CASE("identical configs give identical outputs; a new seed changes them") {
  fixtures::TempDir dir("pipe");
  dataset::write_csv(eight_features(), dir / "data.csv");
  auto a = write_and_validate(dir, "a.toml", "[run]\noutput = \"a\"\nthreads = 1\n");
  auto b = write_and_validate(dir, "b.toml", "[run]\noutput = \"b\"\nthreads = 4\n");
  const auto sa = run(a), sb = run(b);
  CHECK(sa.digest == sb.digest);
  CHECK(io::read_text(dir / "a/combined.csv") == io::read_text(dir / "b/combined.csv"));
  b.set_seed(8);
  b.output_dir = dir / "c";
  CHECK(run(b).digest != sa.digest);
}

TEST_CASE("cached MI and assignment reproduce features.csv exactly") {
  fixtures::TempDir dir("pipe");
  dataset::write_csv(eight_features(), dir / "data.csv");
  const auto first = write_and_validate(dir, "a.toml", "[run]\noutput = \"a\"\n");
  run(first);
  auto cached = write_and_validate(
      dir, "b.toml", "[cache]\nmi = \"a/mi.json\"\nassignment = \"a/assign.json\"\n[run]\noutput = \"b\"\n");
  run(cached);
  CHECK(io::read_text(dir / "a/features.csv") == io::read_text(dir / "b/features.csv"));
  CHECK(io::read_text(dir / "a/assign.json") == io::read_text(dir / "b/assign.json"));

  io::write_json(dir / "small.json", nlohmann::json{{"n", 2}, {"bins", 2}, {"values", {{1, 0}, {0, 1}}}});
  cached.cached_mi = dir / "small.json";
  cached.output_dir = dir / "c";
  CHECK_THROWS_WITH_AS(run(cached), doctest::Contains("stage 'mi'"), StageError);
  const auto m = io::read_json(dir / "c/manifest.json");
  CHECK(m["status"] == "failed");
  CHECK(m["failed_stage"] == "mi");
}

TEST_CASE("fitted artifacts depend only on training rows") {
  fixtures::TempDir dir("pipe");
  const auto ds = eight_features();
  dataset::write_csv(ds, dir / "a.csv");
  const std::size_t holdout = 3;
  const auto plan = dataset::make_folds(ds, 5, 5, 7);
  const auto& test = plan.test_set(holdout);

  std::vector<double> values;
  std::vector<int> labels = ds.labels();
  for (std::size_t r = 0; r < ds.n_samples(); ++r) {
    const bool is_test = std::binary_search(test.begin(), test.end(), r);
    for (std::size_t c = 0; c < ds.n_features(); ++c)
      values.push_back(is_test ? 100.0 + ds.at(r, c) * 50.0 : ds.at(r, c));
  }
  dataset::write_csv(dataset::Dataset(ds.names(), values, labels), dir / "b.csv");

  const std::string common = "[encoding]\nqubits = 6\n[folds]\nholdout = 3\n";
  io::write_text(dir / "a.toml", "[dataset]\npath = \"a.csv\"\nlabel = \"label\"\n"
                                 "[ga]\npopulation = 20\ngenerations = 10\n" + common +
                                     "[run]\noutput = \"a\"\n");
  io::write_text(dir / "b.toml", "[dataset]\npath = \"b.csv\"\nlabel = \"label\"\n"
                                 "[ga]\npopulation = 20\ngenerations = 10\n" + common +
                                     "[run]\noutput = \"b\"\n");
  const auto pa = prepare(validate(dir / "a.toml"));
  const auto pb = prepare(validate(dir / "b.toml"));
  CHECK(pa.train_rows.size() == ds.n_samples() - test.size());
  CHECK(pa.selected == pb.selected);
  CHECK(pa.mi.values() == pb.mi.values());
  CHECK(pa.embedding.best == pb.embedding.best);
  for (std::size_t c = 0; c < pa.scaler.size(); ++c) {
    CHECK(pa.scaler.min(c) == pb.scaler.min(c));
    CHECK(pa.scaler.max(c) == pb.scaler.max(c));
  }
  // held-out rows are still encoded, clipped into the fitted range
  for (double v : pb.encoded_input(test.front())) CHECK(std::abs(v) <= 1.0);
}

TEST_CASE("feature selection, heavy-hex subgraphs and shot mode") {
  fixtures::TempDir dir("pipe");
  dataset::write_csv(fixtures::synthetic(80, 12, 32, [](auto x) { return x[7] > 0 ? 1 : 0; }),
                     dir / "data.csv");
  const auto cfg = write_and_validate(
      dir, "run.toml",
      "[encoding]\nqubits = 6\ndynamics = [3]\n[graph]\nkind = \"heavy_hex\"\n"
      "[extraction]\nmode = \"shots\"\nshots = 2000\n[run]\noutput = \"out\"\n");
  const auto s = run(cfg);
  CHECK(s.n_quantum_features == 18);
  const auto m = io::read_json(dir / "out/manifest.json");
  const auto selected = m["selected_features"].get<std::vector<std::string>>();
  CHECK(selected.size() == 6);
  CHECK(std::find(selected.begin(), selected.end(), "f7") != selected.end());
  CHECK(io::read_json(dir / "out/graph.json")["n_qubits"] == 6);
  const auto again = run(cfg);
  CHECK(again.digest == s.digest);
}

TEST_CASE("stage failures are reported and flagged in the manifest") {
  fixtures::TempDir dir("pipe");
  io::write_text(dir / "data.csv", "f0,label\n1,a\nx,b\n");
  const auto cfg = write_and_validate(dir, "run.toml", "[run]\noutput = \"out\"\n");
  CHECK_THROWS_WITH_AS(run(cfg), doctest::Contains("stage 'ingest'"), StageError);
  const auto m = io::read_json(dir / "out/manifest.json");
  CHECK(m["status"] == "failed");
  CHECK(m["failed_stage"] == "ingest");
  CHECK(m["error"].get<std::string>().find("non-numeric") != std::string::npos);

  dataset::write_csv(eight_features(), dir / "data.csv");
  auto big = cfg;
  big.qubits = 9;
  CHECK_THROWS_WITH_AS(run(big), doctest::Contains("stage 'select'"), StageError);

  auto tight = cfg;
  tight.memory_mb = 0;
  CHECK_THROWS_AS(run(tight), StageError);
}

TEST_CASE("sample_hamiltonian matches what the run encodes") {
  fixtures::TempDir dir("pipe");
  dataset::write_csv(eight_features(40), dir / "data.csv");
  const auto cfg = write_and_validate(dir, "run.toml", "[encoding]\ndynamics = [2, 3]\n");
  const auto p = prepare(cfg);
  const auto h2 = sample_hamiltonian(p, 3, 2);
  const auto h3 = sample_hamiltonian(p, 3, 3);
  CHECK(h2.size() <= 16);
  CHECK(h3.size() > h2.size());
  const auto x = p.encoded_input(3);
  for (std::uint32_t q = 0; q < 8; ++q)
    if (x[p.embedding.best[q]] != 0.0) CHECK(h2.terms().at({q}) == x[p.embedding.best[q]]);
  CHECK_THROWS_AS(p.encoded_input(40), Error);
}
