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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cdfx/encode.hpp"
#include "cdfx/topology.hpp"

namespace cdfx::pipeline {

enum class GraphKind { Ring, HeavyHex, File };
enum class ExtractionMode { Exact, Shots };

/// Fully resolved run configuration. Relative paths in the TOML file are
/// resolved against the file's directory.
///
/// Layout (every table and key optional except dataset.path/label):
///
///   [dataset]    path, label, delimiter = ","
///   [encoding]   qubits = 0 (all selected features), dynamics = [2]
///   [graph]      kind = "ring" | "heavy_hex" | "file", rows, cols, file
///                (heavy_hex defaults to rows = 8, cols = 4)
///   [mi]         bins = 0 (automatic)
///   [ga]         population, generations, tournament, crossover_rate,
///                mutation_rate, elitism, lambda2, lambda3
///   [schedule]   total_time = 1.0, profile = "sin2", steps = 1, impulse = true
///   [extraction] mode = "exact" | "shots", shots = 8192
///   [folds]      splits = 5, repeats = 5, holdout = -1 (fit on all rows)
///   [cache]      mi, assignment (reuse earlier artifacts)
///   [run]        seed = 7, output = "cdfx-out", threads = 0, memory_mb = 1024
struct RunConfig {
  std::filesystem::path dataset;
  std::string label_column;
  char delimiter = ',';

  std::size_t qubits = 0;
  std::vector<int> dynamics{2};

  GraphKind graph = GraphKind::Ring;
  std::size_t hex_rows = 0;
  std::size_t hex_cols = 0;
  std::filesystem::path graph_file;

  std::size_t mi_bins = 0;
  topology::GAConfig ga{};

  encode::Schedule schedule{};
  bool impulse = true;

  ExtractionMode mode = ExtractionMode::Exact;
  std::uint64_t shots = 8192;

  std::size_t n_splits = 5;
  std::size_t n_repeats = 5;
  /// Flattened fold index whose test set is excluded from fitting; -1 fits
  /// scaler, MI and assignment on every row.
  long holdout = -1;

  std::filesystem::path cached_mi;
  std::filesystem::path cached_assignment;

  std::uint64_t seed = 7;
  std::filesystem::path output_dir = "cdfx-out";
  unsigned threads = 0;
  std::size_t memory_mb = 1024;

  /// Sets the global seed (also the GA seed).
  void set_seed(std::uint64_t s);
  /// Cross-field checks; throws naming the violated constraint.
  void check() const;
  nlohmann::json to_json() const;
};

/// Parses TOML text; unknown tables or keys are rejected by name.
RunConfig parse_config(std::string_view toml_text,
                       const std::filesystem::path& base_dir = std::filesystem::current_path());

/// Reads, parses and checks a config file, including that every referenced
/// file exists.
RunConfig validate(const std::filesystem::path& config_file);

}  // namespace cdfx::pipeline
