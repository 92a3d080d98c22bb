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

#include "cdfx/encode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cdfx/error.hpp"

namespace cdfx::encode {

namespace {

constexpr double kDropTol = 1e-12;

// Q = sum_S c_S sum_{j in S} Y_j Z_{S\j}, in (support, j) order.
std::vector<PauliTerm> one_y_words(const ZPolynomial& hz) {
  std::vector<PauliTerm> out;
  for (const auto& [support, c] : hz.terms()) {
    for (std::uint32_t j : support) {
      std::vector<PauliWord::Op> ops;
      ops.reserve(support.size());
      for (std::uint32_t q : support) ops.push_back({q, q == j ? Pauli::Y : Pauli::Z});
      out.push_back({c, PauliWord(hz.n_qubits(), std::move(ops))});
    }
  }
  return out;
}

void check_time(const Schedule& s, double t) {
  if (!(t >= 0.0 && t <= s.total_time))
    throw Error("time " + std::to_string(t) + " outside [0, " + std::to_string(s.total_time) + "]");
}

}  // namespace

void ZPolynomial::add(Support support, double coeff) {
  if (support.empty()) throw Error("ZPolynomial: empty support");
  std::sort(support.begin(), support.end());
  if (std::adjacent_find(support.begin(), support.end()) != support.end())
    throw Error("ZPolynomial: repeated qubit in support");
  if (support.back() >= n_)
    throw Error("ZPolynomial: qubit " + std::to_string(support.back()) + " outside a " +
                std::to_string(n_) + "-qubit register");
  if (!std::isfinite(coeff)) throw Error("ZPolynomial: non-finite coefficient");
  terms_[std::move(support)] += coeff;
}

void ZPolynomial::prune(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) < tol; });
}

ZPolynomial& ZPolynomial::operator+=(const ZPolynomial& other) {
  if (other.n_ != n_) throw Error("ZPolynomial: register size mismatch");
  for (const auto& [s, c] : other.terms_) terms_[s] += c;
  return *this;
}

PauliSum ZPolynomial::to_pauli_sum() const {
  PauliSum out(n_);
  for (const auto& [s, c] : terms_) out.add(PauliWord::z_string(n_, s), c);
  return out;
}

std::vector<infometrics::HyperCoeffs> hyper_coeffs_for(const topology::HardwareGraph& g,
                                                       const topology::Assignment& pi,
                                                       const infometrics::MIMatrix& m, int k_max) {
  if (k_max != 2 && k_max != 3) throw Error("interaction order K must be 2 or 3");
  if (pi.size() != g.n_qubits()) throw Error("assignment size differs from graph size");
  std::vector<infometrics::HyperCoeffs> out;
  std::vector<std::vector<std::size_t>> pairs;
  for (const auto& [a, b] : g.edges()) pairs.push_back({pi[a], pi[b]});
  out.push_back(infometrics::build_hyper_coeffs(2, pairs, m));
  if (k_max == 3) {
    std::vector<std::vector<std::size_t>> triples;
    for (const auto& t : g.triplets()) triples.push_back({pi[t[0]], pi[t[1]], pi[t[2]]});
    out.push_back(infometrics::build_hyper_coeffs(3, triples, m));
  }
  return out;
}

ZPolynomial encode_hamiltonian(std::span<const double> x, const topology::HardwareGraph& g,
                               std::span<const infometrics::HyperCoeffs> coeffs,
                               const topology::Assignment& pi, int k_max) {
  if (k_max != 2 && k_max != 3) throw Error("encode_hamiltonian: K must be 2 or 3");
  const std::size_t n = g.n_qubits();
  if (pi.size() != n || x.size() != n)
    throw Error("encode_hamiltonian: " + std::to_string(x.size()) + " features and a " +
                std::to_string(pi.size()) + "-entry assignment for a " + std::to_string(n) +
                "-qubit graph");
  auto table = [&](std::size_t order) -> const infometrics::HyperCoeffs& {
    for (const auto& h : coeffs)
      if (h.order == order) return h;
    throw Error("encode_hamiltonian: no coefficients supplied for order " + std::to_string(order));
  };

  ZPolynomial hz(n);
  for (std::size_t q = 0; q < n; ++q) hz.add({static_cast<std::uint32_t>(q)}, x[pi[q]]);
  const auto& pairs = table(2);
  for (const auto& [a, b] : g.edges())
    hz.add({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)}, pairs.at({pi[a], pi[b]}));
  if (k_max == 3) {
    const auto& triples = table(3);
    for (const auto& t : g.triplets())
      hz.add({static_cast<std::uint32_t>(t[0]), static_cast<std::uint32_t>(t[1]),
              static_cast<std::uint32_t>(t[2])},
             triples.at({pi[t[0]], pi[t[1]], pi[t[2]]}));
  }
  hz.prune(kDropTol);
  return hz;
}

Profile profile_from_string(const std::string& s) {
  if (s == "sin2") return Profile::Sin2;
  if (s == "linear") return Profile::Linear;
  throw Error("unknown schedule profile '" + s + "' (expected sin2 or linear)");
}

std::string to_string(Profile p) { return p == Profile::Sin2 ? "sin2" : "linear"; }

double Schedule::lambda(double t) const {
  if (profile == Profile::Linear) return t / total_time;
  const double s = std::sin(std::numbers::pi * t / (2.0 * total_time));
  return s * s;
}

double Schedule::dlambda(double t) const {
  if (profile == Profile::Linear) return 1.0 / total_time;
  // sin(pi u) = sin(pi (1 - u)); folding keeps the value exactly zero at t = T
  const double u = t / total_time;
  return std::numbers::pi / (2.0 * total_time) * std::sin(std::numbers::pi * std::min(u, 1.0 - u));
}

void Schedule::validate() const {
  if (!(total_time > 0.0) || !std::isfinite(total_time))
    throw Error("schedule: total time T must be positive");
  if (n_steps < 1) throw Error("schedule: N_steps must be >= 1");
}

PauliSum mixer(std::size_t n_qubits) {
  PauliSum out(n_qubits);
  for (std::uint32_t q = 0; q < n_qubits; ++q)
    out.add(PauliWord(n_qubits, {{q, Pauli::X}}), -1.0);
  return out;
}

PauliSum adiabatic_hamiltonian(const ZPolynomial& hz, const Schedule& s, double t) {
  PauliSum h = mixer(hz.n_qubits()).scaled(s.a(t));
  h += hz.to_pauli_sum().scaled(s.b(t));
  return h;
}

PauliSum adiabatic_derivative(const ZPolynomial& hz, const Schedule& s, double t) {
  PauliSum h = mixer(hz.n_qubits()).scaled(s.da(t));
  h += hz.to_pauli_sum().scaled(s.db(t));
  return h;
}

double alpha(const ZPolynomial& hz, const Schedule& s, double t) {
  s.validate();
  check_time(s, t);
  if (hz.empty()) throw Error("alpha: empty Hamiltonian gives a degenerate denominator");
  PauliSum q(hz.n_qubits());
  for (const auto& term : one_y_words(hz)) q.add(term.word, term.coeff);
  const PauliSum m = commutator(adiabatic_hamiltonian(hz, s, t), q);
  const double num = normalized_trace_product(q, q).real();
  const double den = normalized_trace_product(m, m).real();
  if (!(std::abs(den) > 0.0) || !std::isfinite(den))
    throw Error("alpha: degenerate denominator Tr([H_ad, Q]^2) = 0");
  return num / den;
}

std::vector<PauliTerm> cd_terms(const ZPolynomial& hz, const Schedule& s, double t) {
  s.validate();
  check_time(s, t);
  if (hz.empty()) return {};
  // a vanishing prefactor zeroes every coefficient whatever alpha is
  if (s.commutator_prefactor(t) == 0.0) return cd_terms(hz, s, t, 0.0);
  return cd_terms(hz, s, t, alpha(hz, s, t));
}

std::vector<PauliTerm> cd_terms(const ZPolynomial& hz, const Schedule& s, double t,
                                double alpha_value) {
  s.validate();
  check_time(s, t);
  const double prefactor = -2.0 * alpha_value * s.commutator_prefactor(t);
  auto terms = one_y_words(hz);
  for (auto& term : terms) term.coeff *= prefactor;
  return terms;
}

std::vector<TrotterFactor> trotter_sequence(const ZPolynomial& hz, const Schedule& s, bool impulse) {
  s.validate();
  std::vector<TrotterFactor> seq;
  if (impulse) {
    const double t_star = 0.5 * s.total_time;
    const double dt = s.total_time;
    for (auto& term : cd_terms(hz, s, t_star)) {
      const double angle = dt * term.coeff;
      seq.push_back({std::move(term), angle, 0});
    }
    return seq;
  }
  const double dt = s.dt();
  const std::size_t n = hz.n_qubits();
  for (std::size_t step = 0; step < s.n_steps; ++step) {
    const double t = std::min(s.total_time, static_cast<double>(step + 1) * dt);
    for (std::uint32_t q = 0; q < n; ++q) {
      PauliTerm term{-s.a(t), PauliWord(n, {{q, Pauli::X}})};
      const double angle = dt * term.coeff;
      seq.push_back({std::move(term), angle, step});
    }
    for (const auto& [support, c] : hz.terms()) {
      PauliTerm term{s.b(t) * c, PauliWord::z_string(n, support)};
      const double angle = dt * term.coeff;
      seq.push_back({std::move(term), angle, step});
    }
    for (auto& term : cd_terms(hz, s, t)) {
      const double angle = dt * term.coeff;
      seq.push_back({std::move(term), angle, step});
    }
  }
  return seq;
}

nlohmann::json to_json(const ZPolynomial& hz) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [s, c] : hz.terms()) terms.push_back({{"support", s}, {"coeff", c}});
  return nlohmann::json{{"n_qubits", hz.n_qubits()}, {"terms", std::move(terms)}};
}

nlohmann::json to_json(const std::vector<TrotterFactor>& seq) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& f : seq)
    out.push_back({{"step", f.step},
                   {"word", f.term.word.to_string()},
                   {"coeff", f.term.coeff},
                   {"angle", f.angle}});
  return out;
}

}  // namespace cdfx::encode
