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
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cdfx {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);

/// Tensor product of single-qubit Paulis on a fixed register.
///
/// Stored sparsely as (qubit, op) pairs sorted by qubit, identities omitted,
/// so words stay cheap on large registers. The text form has one letter per
/// qubit with qubit 0 leftmost.
class PauliWord {
 public:
  struct Op {
    std::uint32_t qubit;
    Pauli op;
    friend auto operator<=>(const Op&, const Op&) = default;
  };

  PauliWord() = default;
  /// Ops may be given in any order; identities are dropped. Duplicate qubits
  /// or qubits >= n_qubits throw.
  PauliWord(std::size_t n_qubits, std::vector<Op> ops);

  static PauliWord from_string(std::string_view text);
  /// Z on every qubit in `support`, identity elsewhere.
  static PauliWord z_string(std::size_t n_qubits, const std::vector<std::uint32_t>& support);

  std::size_t n_qubits() const noexcept { return n_; }
  const std::vector<Op>& ops() const noexcept { return ops_; }
  bool is_identity() const noexcept { return ops_.empty(); }
  Pauli at(std::uint32_t qubit) const;
  std::size_t count(Pauli p) const;

  std::string to_string() const;

  /// True when the two words commute.
  bool commutes_with(const PauliWord& other) const;

  friend bool operator==(const PauliWord&, const PauliWord&) = default;
  friend auto operator<=>(const PauliWord& a, const PauliWord& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.ops_ <=> b.ops_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Op> ops_;
};

/// a * b = phase * word.
std::pair<std::complex<double>, PauliWord> multiply(const PauliWord& a, const PauliWord& b);

/// Linear combination of Pauli words with complex coefficients.
class PauliSum {
 public:
  explicit PauliSum(std::size_t n_qubits) : n_(n_qubits) {}

  std::size_t n_qubits() const noexcept { return n_; }
  const std::map<PauliWord, std::complex<double>>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  void add(const PauliWord& w, std::complex<double> c);
  PauliSum& operator+=(const PauliSum& other);
  PauliSum scaled(std::complex<double> s) const;

  /// Drops terms with |c| <= tol.
  void prune(double tol);

  /// Tr(A B) / 2^n = sum over shared words of a_P b_P.
  friend std::complex<double> normalized_trace_product(const PauliSum& a, const PauliSum& b);

 private:
  std::size_t n_;
  std::map<PauliWord, std::complex<double>> terms_;
};

PauliSum operator*(const PauliSum& a, const PauliSum& b);

/// [A, B] = AB - BA, evaluated term by term (commuting pairs skipped).
PauliSum commutator(const PauliSum& a, const PauliSum& b);

}  // namespace cdfx
