// Copyright 2026 The modpack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "modpack/pauli.hpp"

#include <algorithm>
#include <stdexcept>

namespace modpack {

namespace {

using Complex = std::complex<double>;

// a * b = phase * result for single-qubit Paulis.
struct SiteProduct {
  Pauli result;
  Complex phase;
};

SiteProduct multiply(Pauli a, Pauli b) {
  if (a == Pauli::I) return {b, 1.0};
  if (b == Pauli::I) return {a, 1.0};
  if (a == b) return {Pauli::I, 1.0};
  const int ia = static_cast<int>(a), ib = static_cast<int>(b);
  // X=1, Y=2, Z=3: the third Pauli is 6 - ia - ib, and cyclic order XYZ
  // gives +i.
  const auto c = static_cast<Pauli>(6 - ia - ib);
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {c, cyclic ? Complex(0, 1) : Complex(0, -1)};
}

char symbol(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

}  // namespace

Pauli PauliString::at(int row) const {
  if (row < lo || row >= lo + static_cast<int>(ops.size())) return Pauli::I;
  return ops[static_cast<std::size_t>(row - lo)];
}

std::vector<int> PauliString::support() const {
  std::vector<int> rows;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i] != Pauli::I) rows.push_back(lo + static_cast<int>(i));
  }
  return rows;
}

bool PauliString::commutes_with(const PauliString& other) const {
  int anti = 0;
  const int first = std::min(lo, other.lo);
  const int last = std::max(lo + static_cast<int>(ops.size()),
                            other.lo + static_cast<int>(other.ops.size()));
  for (int r = first; r < last; ++r) {
    const Pauli a = at(r), b = other.at(r);
    if (a != Pauli::I && b != Pauli::I && a != b) ++anti;
  }
  return anti % 2 == 0;
}

std::string PauliString::to_string() const {
  std::string s;
  for (int r : support()) {
    if (!s.empty()) s += ' ';
    s += symbol(at(r));
    s += std::to_string(r);
  }
  return s.empty() ? "I" : s;
}

PauliSum PauliSum::with_z_tail(int lo, int hi, int row, Pauli p, Complex coeff) {
  if (row < lo || row > hi) throw std::out_of_range("row outside Pauli window");
  PauliSum s(lo, hi);
  std::vector<Pauli> ops(static_cast<std::size_t>(hi - lo + 1), Pauli::I);
  ops[static_cast<std::size_t>(row - lo)] = p;
  for (int r = row + 1; r <= hi; ++r) ops[static_cast<std::size_t>(r - lo)] = Pauli::Z;
  s.terms_[ops] = coeff;
  return s;
}

PauliSum PauliSum::operator+(const PauliSum& rhs) const {
  if (lo_ != rhs.lo_ || hi_ != rhs.hi_) throw std::invalid_argument("window mismatch");
  PauliSum out = *this;
  for (const auto& [ops, c] : rhs.terms_) out.terms_[ops] += c;
  return out;
}

PauliSum PauliSum::operator*(const PauliSum& rhs) const {
  if (lo_ != rhs.lo_ || hi_ != rhs.hi_) throw std::invalid_argument("window mismatch");
  PauliSum out(lo_, hi_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : rhs.terms_) {
      std::vector<Pauli> ops(a.size());
      Complex phase = ca * cb;
      for (std::size_t i = 0; i < a.size(); ++i) {
        const auto p = multiply(a[i], b[i]);
        ops[i] = p.result;
        phase *= p.phase;
      }
      out.terms_[ops] += phase;
    }
  }
  return out;
}

PauliSum PauliSum::operator*(Complex s) const {
  PauliSum out = *this;
  for (auto& [ops, c] : out.terms_) c *= s;
  return out;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out = *this;
  for (auto& [ops, c] : out.terms_) c = std::conj(c);
  return out;
}

PauliSum PauliSum::pruned(double tol) const {
  PauliSum out(lo_, hi_);
  for (const auto& [ops, c] : terms_) {
    if (std::abs(c) > tol) out.terms_[ops] = c;
  }
  return out;
}

}  // namespace modpack
