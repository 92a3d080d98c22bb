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

#include "cdfx/extract.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_set>

#include "cdfx/error.hpp"
#include "cdfx/io.hpp"

namespace cdfx::extract {

namespace {

std::uint64_t support_mask(std::span<const std::uint32_t> support, std::size_t n) {
  if (support.empty()) throw Error("expect_z: empty support");
  std::uint64_t mask = 0;
  for (auto q : support) {
    if (q >= n)
      throw Error("expect_z: qubit " + std::to_string(q) + " outside a " + std::to_string(n) +
                  "-qubit register");
    mask |= std::uint64_t{1} << q;
  }
  return mask;
}

std::size_t qubits_of(const simulate::Statevector& s) { return s.n_qubits(); }
std::size_t qubits_of(const simulate::ShotTable& s) { return s.n_qubits; }

}  // namespace

double expect_z(const simulate::Statevector& state, std::span<const std::uint32_t> support) {
  const auto mask = support_mask(support, state.n_qubits());
  double even = 0.0, odd = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t b = 0; b < amps.size(); ++b) {
    const double p = std::norm(amps[b]);
    if (std::popcount(b & mask) & 1)
      odd += p;
    else
      even += p;
  }
  // even - odd <= even + odd survives rounding, so |result| <= 1
  return (even - odd) / (even + odd);
}

double expect_z(const simulate::ShotTable& shots, std::span<const std::uint32_t> support) {
  const auto mask = support_mask(support, shots.n_qubits);
  if (shots.shots == 0) throw Error("expect_z: empty shot table");
  std::int64_t acc = 0;
  for (const auto& [b, k] : shots.counts)
    acc += (std::popcount(b & mask) & 1) ? -static_cast<std::int64_t>(k)
                                         : static_cast<std::int64_t>(k);
  return static_cast<double>(acc) / static_cast<double>(shots.shots);
}

bool ObservableSet::active(int order) const {
  switch (order) {
    case 1: return singles;
    case 2: return pairs;
    case 3: return triples;
    default: return false;
  }
}

void ObservableSet::validate() const {
  if (n == 0) throw Error("observables: zero qubits");
  if ((pairs || triples) && n < 3)
    throw Error("observables: a closed chain needs at least 3 qubits, got " + std::to_string(n));
}

std::vector<std::vector<std::uint32_t>> ObservableSet::supports(int order) const {
  validate();
  if (order < 1 || order > 3) throw Error("observables: order must be 1, 2 or 3");
  std::vector<std::vector<std::uint32_t>> out;
  if (!active(order)) return out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint32_t> s;
    for (int k = 0; k < order; ++k) s.push_back(static_cast<std::uint32_t>((i + k) % n));
    out.push_back(std::move(s));
  }
  return out;
}

DynamicsPlan DynamicsPlan::single(int k) {
  if (k != 2 && k != 3) throw Error("dynamics plan: K must be 2 or 3");
  return {{{1, k}, {2, k}, {3, k}}};
}

DynamicsPlan DynamicsPlan::dual() { return {{{1, 2}, {2, 2}, {3, 3}}}; }

DynamicsPlan DynamicsPlan::for_dynamics(std::span<const int> ks) {
  if (ks.size() == 1) return single(ks[0]);
  if (ks.size() == 2 && ((ks[0] == 2 && ks[1] == 3) || (ks[0] == 3 && ks[1] == 2))) return dual();
  throw Error("dynamics plan: expected [2], [3] or [2, 3]");
}

std::vector<int> DynamicsPlan::dynamics() const {
  std::vector<int> out;
  for (const auto& [order, k] : source_of_order)
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  std::sort(out.begin(), out.end());
  return out;
}

void FeatureRecord::validate() const {
  if (names.size() != values.size()) throw Error("feature record: names/values length mismatch");
  std::unordered_set<std::string> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second) throw Error("feature record: duplicate descriptor '" + n + "'");
  for (const auto& b : blocks) {
    if (b.provenance == "classical") continue;
    for (std::size_t i = b.begin; i < b.end; ++i)
      if (!(values[i] >= -1.0 && values[i] <= 1.0))
        throw Error("feature record: value " + std::to_string(values[i]) + " of '" + names[i] +
                    "' outside [-1, 1]");
  }
}

std::string descriptor(std::span<const std::uint32_t> support, int k) {
  std::string s = "q" + std::to_string(support.size());
  for (auto q : support) s += "_" + std::to_string(q);
  return s + "@k" + std::to_string(k);
}

FeatureRecord feature_map(std::size_t sample_id, const std::map<int, StateSource>& sources,
                          const ObservableSet& obs, const DynamicsPlan& plan) {
  obs.validate();
  FeatureRecord rec;
  rec.sample_id = sample_id;
  for (int order = 1; order <= 3; ++order) {
    if (!obs.active(order)) continue;
    const auto src = plan.source_of_order.find(order);
    if (src == plan.source_of_order.end())
      throw Error("feature_map: plan assigns no dynamics to order " + std::to_string(order));
    const int k = src->second;
    const auto it = sources.find(k);
    if (it == sources.end())
      throw Error("feature_map: missing state for dynamics K=" + std::to_string(k) +
                  " required by order " + std::to_string(order));
    Block block{"q" + std::to_string(order) + "@k" + std::to_string(k), rec.values.size(), 0};
    for (const auto& s : obs.supports(order)) {
      const double v = std::visit(
          [&](const auto* source) {
            if (source == nullptr) throw Error("feature_map: null state source");
            if (qubits_of(*source) != obs.n)
              throw Error("feature_map: state qubit count differs from observable set");
            return expect_z(*source, s);
          },
          it->second);
      rec.names.push_back(descriptor(s, k));
      rec.values.push_back(v);
    }
    block.end = rec.values.size();
    rec.blocks.push_back(block);
  }
  rec.validate();
  return rec;
}

FeatureRecord concat_features(std::span<const std::string> classical_names,
                              std::span<const double> classical_values,
                              const FeatureRecord& quantum) {
  if (classical_names.size() != classical_values.size())
    throw Error("concat_features: classical names/values length mismatch");
  FeatureRecord out;
  out.sample_id = quantum.sample_id;
  for (std::size_t i = 0; i < classical_names.size(); ++i) {
    out.names.push_back("c_" + classical_names[i]);
    out.values.push_back(classical_values[i]);
  }
  if (!classical_names.empty()) out.blocks.push_back({"classical", 0, classical_names.size()});
  const std::size_t offset = out.values.size();
  out.names.insert(out.names.end(), quantum.names.begin(), quantum.names.end());
  out.values.insert(out.values.end(), quantum.values.begin(), quantum.values.end());
  for (auto b : quantum.blocks) {
    b.begin += offset;
    b.end += offset;
    out.blocks.push_back(b);
  }
  std::unordered_set<std::string> seen;
  for (const auto& n : out.names)
    if (!seen.insert(n).second) throw Error("concat_features: column name collision on '" + n + "'");
  out.validate();
  return out;
}

std::string to_csv(std::span<const FeatureRecord> records, std::span<const int> labels) {
  if (!labels.empty() && labels.size() != records.size())
    throw Error("to_csv: label count differs from record count");
  std::ostringstream out;
  out << "sample";
  if (!records.empty())
    for (const auto& n : records.front().names) out << ',' << n;
  if (!labels.empty()) out << ",label";
  out << '\n';
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.names != records.front().names) throw Error("to_csv: records have different columns");
    out << rec.sample_id;
    for (double v : rec.values) out << ',' << io::format_double(v);
    if (!labels.empty()) out << ',' << labels[r];
    out << '\n';
  }
  return out.str();
}

}  // namespace cdfx::extract
