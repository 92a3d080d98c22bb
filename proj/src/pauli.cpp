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

#include "cdfx/pauli.hpp"

#include <algorithm>

#include "cdfx/error.hpp"

namespace cdfx {

namespace {

// Single-qubit product table: p * q = phase * r, phase a power of i.
struct OneQubitProduct {
  std::complex<double> phase;
  Pauli result;
};

OneQubitProduct multiply_one(Pauli p, Pauli q) {
  using C = std::complex<double>;
  if (p == Pauli::I) return {C(1, 0), q};
  if (q == Pauli::I) return {C(1, 0), p};
  if (p == q) return {C(1, 0), Pauli::I};
  // XY = iZ, YZ = iX, ZX = iY; reversed order flips the sign
  const int a = static_cast<int>(p), b = static_cast<int>(q);
  const int r = 6 - a - b;  // the remaining letter among {1,2,3}
  const bool cyclic = (b - a + 3) % 3 == 1;
  return {cyclic ? C(0, 1) : C(0, -1), static_cast<Pauli>(r)};
}

}  // namespace

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

PauliWord::PauliWord(std::size_t n_qubits, std::vector<Op> ops) : n_(n_qubits) {
  std::erase_if(ops, [](const Op& o) { return o.op == Pauli::I; });
  std::sort(ops.begin(), ops.end());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].qubit >= n_)
      throw Error("PauliWord: qubit " + std::to_string(ops[i].qubit) + " outside a " +
                  std::to_string(n_) + "-qubit register");
    if (i > 0 && ops[i].qubit == ops[i - 1].qubit)
      throw Error("PauliWord: qubit " + std::to_string(ops[i].qubit) + " appears twice");
  }
  ops_ = std::move(ops);
}

PauliWord PauliWord::from_string(std::string_view text) {
  std::vector<Op> ops;
  for (std::size_t q = 0; q < text.size(); ++q) {
    Pauli p;
    switch (text[q]) {
      case 'I': p = Pauli::I; break;
      case 'X': p = Pauli::X; break;
      case 'Y': p = Pauli::Y; break;
      case 'Z': p = Pauli::Z; break;
      default: throw Error(std::string("PauliWord: invalid letter '") + text[q] + "'");
    }
    ops.push_back({static_cast<std::uint32_t>(q), p});
  }
  return PauliWord(text.size(), std::move(ops));
}

PauliWord PauliWord::z_string(std::size_t n_qubits, const std::vector<std::uint32_t>& support) {
  std::vector<Op> ops;
  ops.reserve(support.size());
  for (auto q : support) ops.push_back({q, Pauli::Z});
  return PauliWord(n_qubits, std::move(ops));
}

Pauli PauliWord::at(std::uint32_t qubit) const {
  const auto it = std::lower_bound(ops_.begin(), ops_.end(), Op{qubit, Pauli::I});
  return (it != ops_.end() && it->qubit == qubit) ? it->op : Pauli::I;
}

std::size_t PauliWord::count(Pauli p) const {
  if (p == Pauli::I) return n_ - ops_.size();
  return static_cast<std::size_t>(
      std::count_if(ops_.begin(), ops_.end(), [p](const Op& o) { return o.op == p; }));
}

std::string PauliWord::to_string() const {
  std::string s(n_, 'I');
  for (const auto& o : ops_) s[o.qubit] = to_char(o.op);
  return s;
}

bool PauliWord::commutes_with(const PauliWord& other) const {
  std::size_t clashes = 0;
  auto i = ops_.begin();
  auto j = other.ops_.begin();
  while (i != ops_.end() && j != other.ops_.end()) {
    if (i->qubit < j->qubit) {
      ++i;
    } else if (j->qubit < i->qubit) {
      ++j;
    } else {
      if (i->op != j->op) ++clashes;
      ++i;
      ++j;
    }
  }
  return clashes % 2 == 0;
}

std::pair<std::complex<double>, PauliWord> multiply(const PauliWord& a, const PauliWord& b) {
  if (a.n_qubits() != b.n_qubits()) throw Error("PauliWord: register size mismatch");
  std::complex<double> phase(1.0, 0.0);
  std::vector<PauliWord::Op> ops;
  ops.reserve(a.ops().size() + b.ops().size());
  auto i = a.ops().begin();
  auto j = b.ops().begin();
  while (i != a.ops().end() || j != b.ops().end()) {
    if (j == b.ops().end() || (i != a.ops().end() && i->qubit < j->qubit)) {
      ops.push_back(*i++);
    } else if (i == a.ops().end() || j->qubit < i->qubit) {
      ops.push_back(*j++);
    } else {
      const auto r = multiply_one(i->op, j->op);
      phase *= r.phase;
      if (r.result != Pauli::I) ops.push_back({i->qubit, r.result});
      ++i;
      ++j;
    }
  }
  return {phase, PauliWord(a.n_qubits(), std::move(ops))};
}

void PauliSum::add(const PauliWord& w, std::complex<double> c) {
  if (w.n_qubits() != n_) throw Error("PauliSum: register size mismatch");
  terms_[w] += c;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_ != n_)
    throw Error("PauliSum: adding a " + std::to_string(other.n_) + "-qubit sum to a " +
                std::to_string(n_) + "-qubit sum");
  for (const auto& [w, c] : other.terms_) add(w, c);
  return *this;
}

PauliSum PauliSum::scaled(std::complex<double> s) const {
  PauliSum out(n_);
  for (const auto& [w, c] : terms_) out.terms_.emplace(w, c * s);
  return out;
}

void PauliSum::prune(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

std::complex<double> normalized_trace_product(const PauliSum& a, const PauliSum& b) {
  std::complex<double> s(0.0, 0.0);
  for (const auto& [w, c] : a.terms_) {
    const auto it = b.terms_.find(w);
    if (it != b.terms_.end()) s += c * it->second;
  }
  return s;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  PauliSum out(a.n_qubits());
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      auto [phase, w] = multiply(wa, wb);
      out.add(w, phase * ca * cb);
    }
  return out;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  // anticommuting words give [P, Q] = 2PQ; commuting ones vanish
  PauliSum out(a.n_qubits());
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      if (wa.commutes_with(wb)) continue;
      auto [phase, w] = multiply(wa, wb);
      out.add(w, 2.0 * phase * ca * cb);
    }
  return out;
}

}  // namespace cdfx
