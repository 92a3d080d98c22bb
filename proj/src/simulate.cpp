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

#include "cdfx/simulate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "cdfx/error.hpp"
#include "cdfx/rng.hpp"

namespace cdfx::simulate {

namespace {

constexpr std::size_t kMaxIndexBits = 62;

void check_budget(std::size_t n, std::size_t budget_bytes) {
  const std::size_t limit = max_qubits(budget_bytes);
  if (n > limit)
    throw Error("statevector: " + std::to_string(n) + " qubits exceed the amplitude budget of " +
                std::to_string(budget_bytes) + " bytes (at most " + std::to_string(limit) +
                " qubits)");
}

struct WordMasks {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  std::size_t n_y = 0;
};

WordMasks masks_of(const PauliWord& word) {
  WordMasks m;
  for (const auto& o : word.ops()) {
    const std::uint64_t bit = std::uint64_t{1} << o.qubit;
    if (o.op == Pauli::X || o.op == Pauli::Y) m.x |= bit;
    if (o.op == Pauli::Z || o.op == Pauli::Y) m.z |= bit;
    if (o.op == Pauli::Y) ++m.n_y;
  }
  return m;
}

Amplitude i_power(std::size_t k) {
  switch (k % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double parity_sign(std::uint64_t v) { return (std::popcount(v) & 1) ? -1.0 : 1.0; }

}  // namespace

std::size_t max_qubits(std::size_t budget_bytes) {
  std::size_t n = 0;
  while (n < kMaxIndexBits && (sizeof(Amplitude) << (n + 1)) <= budget_bytes) ++n;
  return n;
}

Statevector::Statevector(std::size_t n_qubits, std::size_t budget_bytes) : n_(n_qubits) {
  if (n_qubits == 0) throw Error("statevector: need at least one qubit");
  check_budget(n_qubits, budget_bytes);
  amps_.assign(std::size_t{1} << n_qubits, Amplitude(0.0, 0.0));
  amps_[0] = 1.0;
}

Statevector::Statevector(std::size_t n_qubits, std::vector<Amplitude> amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_qubits == 0 || n_qubits > kMaxIndexBits || amps_.size() != (std::size_t{1} << n_qubits))
    throw Error("statevector: amplitude count must be 2^n");
}

double Statevector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

Statevector plus_state(std::size_t n_qubits, std::size_t budget_bytes) {
  Statevector s(n_qubits, budget_bytes);
  const double a = std::pow(2.0, -0.5 * static_cast<double>(n_qubits));
  std::fill(s.amplitudes().begin(), s.amplitudes().end(), Amplitude(a, 0.0));
  return s;
}

Statevector basis_state(std::size_t n_qubits, std::uint64_t index) {
  Statevector s(n_qubits);
  if (index >= s.dimension()) throw Error("basis_state: index out of range");
  s.amplitudes()[0] = 0.0;
  s.amplitudes()[index] = 1.0;
  return s;
}

void apply_pauli_rotation(Statevector& state, const PauliWord& word, double theta) {
  if (word.n_qubits() != state.n_qubits())
    throw Error("apply_pauli_rotation: word has " + std::to_string(word.n_qubits()) +
                " qubits, state has " + std::to_string(state.n_qubits()));
  if (theta == 0.0) return;
  const auto m = masks_of(word);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  auto amps = state.amplitudes();
  const std::size_t dim = amps.size();

  if (m.x == 0) {
    // diagonal: exp(-i theta (+-1)) per basis state
    const Amplitude plus(c, -s), minus(c, s);
    for (std::size_t b = 0; b < dim; ++b) amps[b] *= (parity_sign(b & m.z) > 0) ? plus : minus;
    return;
  }

  // (P psi)[b] = i^{nY} (-1)^{|(b^x)&z|} psi[b^x]
  const Amplitude f = Amplitude(0.0, -s) * i_power(m.n_y);
  const std::uint64_t high = std::bit_floor(m.x);
  for (std::size_t b = 0; b < dim; ++b) {
    if (b & high) continue;
    const std::size_t d = b ^ m.x;
    const Amplitude pb = amps[b], pd = amps[d];
    amps[b] = c * pb + f * parity_sign(d & m.z) * pd;
    amps[d] = c * pd + f * parity_sign(b & m.z) * pb;
  }
}

void run_sequence(Statevector& state, std::span<const encode::TrotterFactor> seq) {
  for (const auto& f : seq) apply_pauli_rotation(state, f.term.word, f.angle);
}

std::string bitstring(std::uint64_t index, std::size_t n_qubits) {
  std::string s(n_qubits, '0');
  for (std::size_t q = 0; q < n_qubits; ++q)
    if ((index >> q) & 1) s[q] = '1';
  return s;
}

ShotTable sample(const Statevector& state, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw Error("sample: shots must be >= 1");
  const auto amps = state.amplitudes();
  std::vector<double> cdf(amps.size());
  double acc = 0.0;
  for (std::size_t b = 0; b < amps.size(); ++b) {
    acc += std::norm(amps[b]);
    cdf[b] = acc;
  }
  ShotTable table{state.n_qubits(), shots, {}};
  Rng rng(seed);
  for (std::uint64_t k = 0; k < shots; ++k) {
    const double u = rng.uniform() * acc;
    // first index whose cumulative mass exceeds u; zero-probability entries
    // never satisfy this strictly
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) it = std::lower_bound(cdf.begin(), cdf.end(), acc);
    ++table.counts[static_cast<std::uint64_t>(it - cdf.begin())];
  }
  return table;
}

nlohmann::json to_json(const ShotTable& t) {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [b, k] : t.counts) counts[bitstring(b, t.n_qubits)] = k;
  return nlohmann::json{{"n_qubits", t.n_qubits}, {"shots", t.shots}, {"counts", counts}};
}

void write_statevector(const Statevector& state, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  const auto n = static_cast<std::uint32_t>(state.n_qubits());
  const unsigned char header[4] = {static_cast<unsigned char>(n & 0xff),
                                   static_cast<unsigned char>((n >> 8) & 0xff),
                                   static_cast<unsigned char>((n >> 16) & 0xff),
                                   static_cast<unsigned char>((n >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(header), 4);
  static_assert(std::endian::native == std::endian::little, "dump format assumes little-endian");
  for (const auto& a : state.amplitudes()) {
    const double parts[2] = {a.real(), a.imag()};
    out.write(reinterpret_cast<const char*>(parts), sizeof parts);
  }
}

Statevector read_statevector(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  unsigned char header[4];
  if (!in.read(reinterpret_cast<char*>(header), 4)) throw Error("statevector dump: short header");
  const std::uint32_t n = header[0] | (header[1] << 8) | (header[2] << 16) |
                          (static_cast<std::uint32_t>(header[3]) << 24);
  if (n == 0 || n > kMaxIndexBits) throw Error("statevector dump: bad qubit count");
  std::vector<Amplitude> amps(std::size_t{1} << n);
  for (auto& a : amps) {
    double parts[2];
    if (!in.read(reinterpret_cast<char*>(parts), sizeof parts))
      throw Error("statevector dump: truncated amplitudes");
    a = Amplitude(parts[0], parts[1]);
  }
  return Statevector(n, std::move(amps));
}

}  // namespace cdfx::simulate
