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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <vector>

#include <json.hpp>

#include "cdfx/encode.hpp"
#include "cdfx/pauli.hpp"

namespace cdfx::simulate {

using Amplitude = std::complex<double>;

/// Largest amplitude vector we are willing to allocate, in bytes.
inline constexpr std::size_t kDefaultAmplitudeBudget = std::size_t{1} << 30;

/// Dense n-qubit state. Little-endian: qubit q is bit q of the basis index,
/// so qubit 0 is the least significant bit.
class Statevector {
 public:
  /// |0...0>. Throws when 2^n amplitudes exceed `budget_bytes`.
  explicit Statevector(std::size_t n_qubits, std::size_t budget_bytes = kDefaultAmplitudeBudget);
  Statevector(std::size_t n_qubits, std::vector<Amplitude> amplitudes);

  std::size_t n_qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  std::span<Amplitude> amplitudes() noexcept { return amps_; }
  Amplitude operator[](std::size_t basis) const { return amps_[basis]; }

  double norm_squared() const;

 private:
  std::size_t n_;
  std::vector<Amplitude> amps_;
};

/// Largest qubit count whose state fits in `budget_bytes`.
std::size_t max_qubits(std::size_t budget_bytes = kDefaultAmplitudeBudget);

/// Uniform superposition |+>^n.
Statevector plus_state(std::size_t n_qubits, std::size_t budget_bytes = kDefaultAmplitudeBudget);

/// Computational basis state with the given index.
Statevector basis_state(std::size_t n_qubits, std::uint64_t index);

/// state <- exp(-i theta P) state = cos(theta) state - i sin(theta) P state,
/// in one pass over the amplitudes. The identity word gives a global phase.
void apply_pauli_rotation(Statevector& state, const PauliWord& word, double theta);

/// Applies the factors in order.
void run_sequence(Statevector& state, std::span<const encode::TrotterFactor> seq);

/// Measurement counts keyed by basis index.
struct ShotTable {
  std::size_t n_qubits = 0;
  std::uint64_t shots = 0;
  std::map<std::uint64_t, std::uint64_t> counts;
};

/// Bitstring with qubit 0 as the leftmost character.
std::string bitstring(std::uint64_t index, std::size_t n_qubits);

/// Multinomial draw of `shots` outcomes from |amp|^2, deterministic per seed.
ShotTable sample(const Statevector& state, std::uint64_t shots, std::uint64_t seed);

nlohmann::json to_json(const ShotTable& t);

/// Binary dump: uint32 n (little-endian), then 2^n (re, im) float64 pairs.
void write_statevector(const Statevector& state, const std::filesystem::path& path);
Statevector read_statevector(const std::filesystem::path& path);

}  // namespace cdfx::simulate
