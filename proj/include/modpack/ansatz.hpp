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

#include <array>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace modpack {

enum class TermKind { Single, Double };

/// How a term is expanded into conjugated CNOT ladders.
/// Controlled is a double excitation whose creation and annihilation index
/// pairs share exactly one index, e.g. double(i, j, j, m).
enum class HoppingClass { Single, Controlled, Double };

/// One fermionic excitation t (a_i^dag a_j - h.c.) or
/// t (a_i^dag a_j^dag a_k a_m - h.c.).
///
/// Orbital indices are abstract row indices; the input order is assumed to be
/// cluster-localized already and is never permuted.
struct ExcitationTerm {
  int id = 0;
  TermKind kind = TermKind::Single;
  std::array<int, 4> idx{};  // single: idx[0], idx[1]; double: all four
  double amplitude = 0.0;
  double gradient_magnitude = 0.0;

  static ExcitationTerm single(int id, int i, int j, double amp, double grad);
  static ExcitationTerm double_hop(int id, int i, int j, int k, int m,
                                   double amp, double grad);

  std::span<const int> indices() const {
    return {idx.data(), kind == TermKind::Single ? 2u : 4u};
  }
  int row_lo() const;
  int row_hi() const;
  HoppingClass hopping_class() const;
  /// Number of Pauli-string exponentials (CNOT-ladder conjugations): 2, 4 or 8.
  int conjugation_count() const;
  /// True for controlled hoppings laid out as (i, j, j, m) with i < j < m.
  bool is_canonical_controlled() const;

  friend bool operator==(const ExcitationTerm&, const ExcitationTerm&) = default;
};

/// Throws std::invalid_argument when the term breaks an invariant for a
/// register of n_orbitals rows.
void validate_term(const ExcitationTerm& t, int n_orbitals);

class Ansatz {
 public:
  using Metadata = std::map<std::string, std::string>;

  Ansatz() = default;
  /// Validates id uniqueness and index ranges.
  Ansatz(int n_orbitals, std::vector<ExcitationTerm> terms, Metadata meta = {});

  int n_orbitals() const { return n_orbitals_; }
  const std::vector<ExcitationTerm>& terms() const { return terms_; }
  const Metadata& metadata() const { return meta_; }
  std::size_t size() const { return terms_.size(); }

  friend bool operator==(const Ansatz&, const Ansatz&) = default;

 private:
  int n_orbitals_ = 0;
  std::vector<ExcitationTerm> terms_;
  Metadata meta_;
};

/// Partition of qubit rows into modules. A seam s separates rows < s from
/// rows >= s.
class ModuleLayout {
 public:
  ModuleLayout() = default;
  ModuleLayout(int n_rows, std::vector<int> seams);
  /// n_modules modules of (almost) equal size; leftover rows go to the
  /// leading modules.
  static ModuleLayout equal(int n_rows, int n_modules);

  int n_rows() const { return n_rows_; }
  const std::vector<int>& seams() const { return seams_; }
  int n_modules() const { return static_cast<int>(seams_.size()) + 1; }
  int module_of(int row) const;
  /// Distinct modules intersecting the closed row interval [lo, hi].
  int modules_spanned(int lo, int hi) const;
  /// Number of seams s with lo < s <= hi.
  int seams_crossed(int lo, int hi) const { return modules_spanned(lo, hi) - 1; }
  std::pair<int, int> module_rows(int module) const;  // [first, last]

  friend bool operator==(const ModuleLayout&, const ModuleLayout&) = default;

 private:
  int n_rows_ = 1;
  std::vector<int> seams_;
};

struct HoppingDiagram {
  double epsilon = 0.0;
  std::vector<int> intra_terms;
  std::vector<int> inter_terms;
  std::map<int, int> modules_spanned;  // term id -> k
};

/// Terms with gradient_magnitude >= epsilon, in their original order.
Ansatz select_terms(const Ansatz& a, double epsilon);

HoppingDiagram classify_hoppings(const Ansatz& a, const ModuleLayout& layout,
                                 double epsilon);

/// Stacks `copies` translated copies of a unit cell.
///
/// Unit terms confined to [0, rows_per_module) are cell terms; terms with
/// row_lo < rows_per_module <= row_hi < 2*rows_per_module are boundary terms
/// and are replicated across each of the copies-1 seams. Output order is
/// copy-major: cell terms of copy c, then boundary terms of seam c. Ids are
/// renumbered sequentially.
std::pair<Ansatz, ModuleLayout> replicate_translation(const Ansatz& unit,
                                                      int rows_per_module,
                                                      int copies);

}  // namespace modpack
