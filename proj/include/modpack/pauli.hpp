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

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace modpack {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// Tensor product of single-row Paulis over the rows [lo, lo + ops.size()).
/// Rows outside the window are identity.
struct PauliString {
  int lo = 0;
  std::vector<Pauli> ops;

  Pauli at(int row) const;
  /// Rows carrying a non-identity Pauli, ascending.
  std::vector<int> support() const;
  bool commutes_with(const PauliString& other) const;
  /// e.g. "X0 Z1 Y2"; "I" for the identity.
  std::string to_string() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString& a, const PauliString& b) {
    return a.ops <=> b.ops;
  }
};

/// Sum of Pauli strings sharing one row window, with complex coefficients.
class PauliSum {
 public:
  using Complex = std::complex<double>;

  PauliSum(int lo, int hi) : lo_(lo), hi_(hi) {}

  /// coeff * P_row * Z_{row+1} ... Z_{hi}; the open Z tail models the
  /// Jordan-Wigner parity string pointing toward higher rows.
  static PauliSum with_z_tail(int lo, int hi, int row, Pauli p, Complex coeff);

  PauliSum operator+(const PauliSum& rhs) const;
  PauliSum operator*(const PauliSum& rhs) const;
  PauliSum operator*(Complex s) const;
  PauliSum adjoint() const;

  /// Drops terms with |coefficient| <= tol.
  PauliSum pruned(double tol = 1e-12) const;

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  const std::map<std::vector<Pauli>, Complex>& terms() const { return terms_; }

 private:
  int lo_, hi_;
  std::map<std::vector<Pauli>, Complex> terms_;
};

}  // namespace modpack
