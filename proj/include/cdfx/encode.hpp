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
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "cdfx/infometrics.hpp"
#include "cdfx/pauli.hpp"
#include "cdfx/topology.hpp"

namespace cdfx::encode {

using Support = std::vector<std::uint32_t>;

/// Diagonal k-local Hamiltonian: sum of coeff * prod_{i in S} Z_i.
///
/// Supports are kept sorted and unique; adding a support that already exists
/// accumulates into it. Terms iterate in lexicographic support order.
class ZPolynomial {
 public:
  explicit ZPolynomial(std::size_t n_qubits) : n_(n_qubits) {}

  std::size_t n_qubits() const noexcept { return n_; }
  const std::map<Support, double>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Support indices may come unsorted; empty or repeated supports throw.
  void add(Support support, double coeff);
  /// Removes terms with |coeff| < tol.
  void prune(double tol);

  ZPolynomial& operator+=(const ZPolynomial& other);
  friend ZPolynomial operator+(ZPolynomial a, const ZPolynomial& b) { return a += b; }

  PauliSum to_pauli_sum() const;

 private:
  std::size_t n_;
  std::map<Support, double> terms_;
};

/// Sample Hamiltonian: field x[pi(q)] on each qubit q, plus one coupling
/// per edge (order 2) and, for k_max = 3, per triplet (order 3), with
/// coefficient c_S of the mapped feature subset. `coeffs` holds one entry
/// per order 2..k_max. |coeff| < 1e-12 terms are dropped.
ZPolynomial encode_hamiltonian(std::span<const double> x, const topology::HardwareGraph& g,
                               std::span<const infometrics::HyperCoeffs> coeffs,
                               const topology::Assignment& pi, int k_max);

/// Coefficient tables for the edge (and triplet) feature subsets selected by
/// `pi` on `g`, up to order k_max.
std::vector<infometrics::HyperCoeffs> hyper_coeffs_for(const topology::HardwareGraph& g,
                                                       const topology::Assignment& pi,
                                                       const infometrics::MIMatrix& m, int k_max);

enum class Profile { Sin2, Linear };

Profile profile_from_string(const std::string& s);
std::string to_string(Profile p);

/// Interpolation H_ad(t) = A(t) H_mixer + B(t) H_problem with A = 1 - l(t),
/// B = l(t). Sin2: l = sin^2(pi t / 2T); Linear: l = t / T.
struct Schedule {
  double total_time = 1.0;
  Profile profile = Profile::Sin2;
  std::size_t n_steps = 1;

  double dt() const { return total_time / static_cast<double>(n_steps); }
  double lambda(double t) const;
  double dlambda(double t) const;
  double a(double t) const { return 1.0 - lambda(t); }
  double b(double t) const { return lambda(t); }
  double da(double t) const { return -dlambda(t); }
  double db(double t) const { return dlambda(t); }
  /// A B' - A' B, the prefactor of [H_ad, dH_ad/dt].
  double commutator_prefactor(double t) const { return a(t) * db(t) - da(t) * b(t); }

  void validate() const;
};

/// Mixer H_i = -sum_i X_i.
PauliSum mixer(std::size_t n_qubits);

/// H_ad(t) and its time derivative as Pauli sums.
PauliSum adiabatic_hamiltonian(const ZPolynomial& hz, const Schedule& s, double t);
PauliSum adiabatic_derivative(const ZPolynomial& hz, const Schedule& s, double t);

struct PauliTerm {
  double coeff = 0.0;
  PauliWord word;
};

/// Variational coefficient of the first-order gauge potential,
/// alpha = Tr(K^2) / Tr(L^2) with K = [H_ad, dH_ad], L = [H_ad, K].
///
/// K = 2i(AB' - A'B) Q with Q = sum_S c_S sum_{j in S} Y_j Z_{S\j}, so the
/// prefactor cancels and alpha = Tr(Q^2) / Tr([H_ad, Q]^2), which stays
/// defined where AB' - A'B vanishes. Traces use Pauli orthogonality.
double alpha(const ZPolynomial& hz, const Schedule& s, double t);

/// Expansion of i alpha [H_ad, dH_ad]:
/// -2 alpha (AB' - A'B) sum_S c_S sum_{j in S} Y_j Z_{S\j},
/// ordered by (support, j). An empty hz yields no terms; where AB' - A'B
/// vanishes the terms are returned with zero coefficients.
std::vector<PauliTerm> cd_terms(const ZPolynomial& hz, const Schedule& s, double t);
/// Same with alpha supplied by the caller.
std::vector<PauliTerm> cd_terms(const ZPolynomial& hz, const Schedule& s, double t,
                                double alpha_value);

struct TrotterFactor {
  PauliTerm term;
  /// Rotation angle: the factor is exp(-i angle P).
  double angle = 0.0;
  /// 0-based Trotter step.
  std::size_t step = 0;
};

/// Ordered factors of prod_j exp(-i dt (H_ad + A)) at t_j = j dt.
///
/// impulse: a single step holding only the gauge-potential terms evaluated
/// at T/2 with dt = T. Otherwise each step emits the mixer X fields, then the
/// Z terms (support order), then the gauge terms; zero-angle factors are kept
/// so every step has the same length.
std::vector<TrotterFactor> trotter_sequence(const ZPolynomial& hz, const Schedule& s, bool impulse);

nlohmann::json to_json(const ZPolynomial& hz);
nlohmann::json to_json(const std::vector<TrotterFactor>& seq);

}  // namespace cdfx::encode
