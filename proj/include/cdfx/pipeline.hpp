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
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cdfx/config.hpp"
#include "cdfx/dataset.hpp"
#include "cdfx/encode.hpp"
#include "cdfx/error.hpp"
#include "cdfx/extract.hpp"
#include "cdfx/infometrics.hpp"
#include "cdfx/topology.hpp"

namespace cdfx::pipeline {

/// A failure tagged with the stage that raised it.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& cause)
      : Error("stage '" + stage + "' failed: " + cause), stage_(std::move(stage)), cause_(cause) {}
  const std::string& stage() const noexcept { return stage_; }
  const std::string& cause() const noexcept { return cause_; }

 private:
  std::string stage_;
  std::string cause_;
};

/// Everything fitted before per-sample work starts.
struct Prepared {
  dataset::Dataset data;
  dataset::FoldPlan folds;
  /// Rows used for fitting the scaler, the feature ranking, MI and the GA.
  std::vector<std::size_t> train_rows;
  /// Original column indices of the encoded features, ascending.
  std::vector<std::size_t> selected;
  dataset::ScalingSpec scaler;
  infometrics::MIMatrix mi;
  topology::HardwareGraph graph;
  topology::GAResult embedding;
  extract::DynamicsPlan plan;
  extract::ObservableSet observables;

  std::size_t n_qubits() const noexcept { return selected.size(); }
  std::vector<std::string> selected_names() const;
  /// Scaled, selected feature vector of one sample.
  std::vector<double> encoded_input(std::size_t sample) const;
};

/// Ingest, folds, scale, select, MI and embed. Cached MI and assignment
/// files are used when the config names them.
Prepared prepare(const RunConfig& cfg);

/// Diagonal Hamiltonian of one sample for dynamics K.
encode::ZPolynomial sample_hamiltonian(const Prepared& p, std::size_t sample, int k);

/// Quantum feature records for every sample, in sample order.
std::vector<extract::FeatureRecord> quantum_features(const RunConfig& cfg, const Prepared& p);

/// Classical block (raw values of the selected columns) followed by the
/// quantum record.
extract::FeatureRecord combined_record(const Prepared& p, const extract::FeatureRecord& quantum);

struct RunSummary {
  std::filesystem::path output_dir;
  std::size_t n_samples = 0;
  std::size_t n_quantum_features = 0;
  std::size_t n_combined_features = 0;
  /// Digest over every artifact except the manifest.
  std::string digest;
};

/// Full flow. Writes foldplan.json, mi.json, graph.json, assign.json,
/// features.csv, combined.csv and manifest.json to cfg.output_dir. On
/// failure the manifest records the failed stage and which artifacts were
/// written, and a StageError propagates.
RunSummary run(const RunConfig& cfg);

}  // namespace cdfx::pipeline
