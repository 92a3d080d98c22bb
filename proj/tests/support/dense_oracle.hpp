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

// Dense-matrix reference implementations for tests, built from explicit
// Kronecker products.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "cdfx/encode.hpp"
#include "cdfx/pauli.hpp"
#include "cdfx/simulate.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat single(char p) {
  Mat m(2, 2);
  const cplx i(0.0, 1.0);
  switch (p) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

/// Letters indexed by qubit (qubit 0 first). Qubit n-1 ends up as the most
/// significant factor, so qubit q is bit q of the basis index.
inline Mat word(const std::string& letters) {
  Mat out = Mat::Identity(1, 1);
  for (char c : letters) {
    Mat next = Eigen::kroneckerProduct(single(c), out).eval();
    out = next;
  }
  return out;
}

inline Mat word(const cdfx::PauliWord& w) { return word(w.to_string()); }

inline Mat identity(std::size_t n) {
  return Mat::Identity(std::size_t{1} << n, std::size_t{1} << n);
}

inline Mat zpoly(const cdfx::encode::ZPolynomial& hz) {
  const std::size_t n = hz.n_qubits();
  Mat out = Mat::Zero(std::size_t{1} << n, std::size_t{1} << n);
  for (const auto& [support, c] : hz.terms()) {
    std::string letters(n, 'I');
    for (auto q : support) letters[q] = 'Z';
    out += c * word(letters);
  }
  return out;
}

inline Mat mixer(std::size_t n) {
  Mat out = Mat::Zero(std::size_t{1} << n, std::size_t{1} << n);
  for (std::size_t q = 0; q < n; ++q) {
    std::string letters(n, 'I');
    letters[q] = 'X';
    out -= word(letters);
  }
  return out;
}

inline Mat h_ad(const cdfx::encode::ZPolynomial& hz, const cdfx::encode::Schedule& s, double t) {
  return s.a(t) * mixer(hz.n_qubits()) + s.b(t) * zpoly(hz);
}

inline Mat dh_ad(const cdfx::encode::ZPolynomial& hz, const cdfx::encode::Schedule& s, double t) {
  return s.da(t) * mixer(hz.n_qubits()) + s.db(t) * zpoly(hz);
}

inline Mat comm(const Mat& a, const Mat& b) { return a * b - b * a; }

/// alpha = Tr(K^2) / Tr(L^2) with K = [H, dH], L = [H, K].
inline double alpha(const cdfx::encode::ZPolynomial& hz, const cdfx::encode::Schedule& s,
                    double t) {
  const Mat h = h_ad(hz, s, t);
  const Mat k = comm(h, dh_ad(hz, s, t));
  const Mat l = comm(h, k);
  return ((k * k).trace() / (l * l).trace()).real();
}

/// Same ratio with the schedule prefactor stripped: K -> [H_mixer, Hz].
inline double alpha_unscaled(const cdfx::encode::ZPolynomial& hz, const cdfx::encode::Schedule& s,
                             double t) {
  const Mat h = h_ad(hz, s, t);
  const Mat k = comm(mixer(hz.n_qubits()), zpoly(hz));
  const Mat l = comm(h, k);
  return ((k * k).trace() / (l * l).trace()).real();
}

/// i alpha [H_ad, dH_ad].
inline Mat cd_generator(const cdfx::encode::ZPolynomial& hz, const cdfx::encode::Schedule& s,
                        double t, double alpha_value) {
  return cplx(0.0, alpha_value) * comm(h_ad(hz, s, t), dh_ad(hz, s, t));
}

inline Mat terms(std::span<const cdfx::encode::PauliTerm> ts, std::size_t n) {
  Mat out = Mat::Zero(std::size_t{1} << n, std::size_t{1} << n);
  for (const auto& term : ts) out += term.coeff * word(term.word);
  return out;
}

/// Product of exp(-i angle P) factors, first factor applied first.
inline Mat propagator(std::span<const cdfx::encode::TrotterFactor> seq, std::size_t n) {
  Mat u = identity(n);
  for (const auto& f : seq) {
    const Mat g = (cplx(0.0, -f.angle) * word(f.term.word)).exp();
    u = (g * u).eval();
  }
  return u;
}

inline Vec to_vec(const cdfx::simulate::Statevector& s) {
  Vec v(static_cast<Eigen::Index>(s.dimension()));
  for (std::size_t b = 0; b < s.dimension(); ++b) v(static_cast<Eigen::Index>(b)) = s[b];
  return v;
}

inline Vec plus(std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  return Vec::Constant(dim, cplx(std::pow(2.0, -0.5 * static_cast<double>(n)), 0.0));
}

/// |<a|b>|^2 for normalized vectors.
inline double fidelity(const Vec& a, const Vec& b) { return std::norm(a.dot(b)); }

/// <psi| Z_S |psi>.
inline double expect_z(const Vec& psi, std::size_t n, std::span<const std::uint32_t> support) {
  std::string letters(n, 'I');
  for (auto q : support) letters[q] = 'Z';
  return psi.dot(word(letters) * psi).real();
}

inline double frobenius_rel(const Mat& a, const Mat& b) {
  const double denom = b.norm();
  return denom == 0.0 ? a.norm() : (a - b).norm() / denom;
}

}  // namespace oracle
