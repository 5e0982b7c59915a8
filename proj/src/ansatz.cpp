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

#include "modpack/ansatz.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "modpack/util.hpp"

namespace modpack {

ExcitationTerm ExcitationTerm::single(int id, int i, int j, double amp,
                                      double grad) {
  ExcitationTerm t;
  t.id = id;
  t.kind = TermKind::Single;
  t.idx = {i, j, 0, 0};
  t.amplitude = amp;
  t.gradient_magnitude = grad;
  return t;
}

ExcitationTerm ExcitationTerm::double_hop(int id, int i, int j, int k, int m,
                                          double amp, double grad) {
  ExcitationTerm t;
  t.id = id;
  t.kind = TermKind::Double;
  t.idx = {i, j, k, m};
  t.amplitude = amp;
  t.gradient_magnitude = grad;
  return t;
}

int ExcitationTerm::row_lo() const {
  auto ix = indices();
  return *std::min_element(ix.begin(), ix.end());
}

int ExcitationTerm::row_hi() const {
  auto ix = indices();
  return *std::max_element(ix.begin(), ix.end());
}

namespace {

int shared_index_count(const ExcitationTerm& t) {
  int shared = 0;
  for (int c : {t.idx[0], t.idx[1]}) {
    if (c == t.idx[2] || c == t.idx[3]) ++shared;
  }
  return shared;
}

}  // namespace

HoppingClass ExcitationTerm::hopping_class() const {
  if (kind == TermKind::Single) return HoppingClass::Single;
  return shared_index_count(*this) == 1 ? HoppingClass::Controlled
                                        : HoppingClass::Double;
}

int ExcitationTerm::conjugation_count() const {
  switch (hopping_class()) {
    case HoppingClass::Single:
      return 2;
    case HoppingClass::Controlled:
      return 4;
    case HoppingClass::Double:
      return 8;
  }
  return 0;
}

bool ExcitationTerm::is_canonical_controlled() const {
  return hopping_class() == HoppingClass::Controlled && idx[1] == idx[2] &&
         idx[0] < idx[1] && idx[1] < idx[3];
}

void validate_term(const ExcitationTerm& t, int n_orbitals) {
  for (int i : t.indices()) {
    if (i < 0 || i >= n_orbitals) {
      throw std::invalid_argument("term " + std::to_string(t.id) + ": index " +
                                  std::to_string(i) + " outside [0, " +
                                  std::to_string(n_orbitals) + ")");
    }
  }
  if (!(t.gradient_magnitude >= 0.0)) {
    throw std::invalid_argument("term " + std::to_string(t.id) +
                                ": gradient magnitude must be >= 0");
  }
  if (t.kind == TermKind::Single) {
    if (t.idx[0] == t.idx[1]) {
      throw std::invalid_argument("term " + std::to_string(t.id) +
                                  ": single hopping needs i != j");
    }
    return;
  }
  // a_i^dag a_i^dag = 0, and {i,j} == {k,m} leaves a number operator whose
  // anti-Hermitian part vanishes.
  if (t.idx[0] == t.idx[1] || t.idx[2] == t.idx[3] ||
      shared_index_count(t) == 2) {
    throw std::invalid_argument("term " + std::to_string(t.id) +
                                ": degenerate double hopping");
  }
}

Ansatz::Ansatz(int n_orbitals, std::vector<ExcitationTerm> terms, Metadata meta)
    : n_orbitals_(n_orbitals), terms_(std::move(terms)), meta_(std::move(meta)) {
  if (n_orbitals_ < 1) throw std::invalid_argument("n_orbitals must be >= 1");
  std::set<int> ids;
  for (const auto& t : terms_) {
    validate_term(t, n_orbitals_);
    if (!ids.insert(t.id).second) {
      throw std::invalid_argument("duplicate term id " + std::to_string(t.id));
    }
  }
}

ModuleLayout::ModuleLayout(int n_rows, std::vector<int> seams)
    : n_rows_(n_rows), seams_(std::move(seams)) {
  if (n_rows_ < 1) throw std::invalid_argument("layout needs >= 1 row");
  for (std::size_t i = 0; i < seams_.size(); ++i) {
    if (seams_[i] < 1 || seams_[i] > n_rows_ - 1) {
      throw std::invalid_argument("seam " + std::to_string(seams_[i]) +
                                  " outside [1, " + std::to_string(n_rows_ - 1) +
                                  "]");
    }
    if (i > 0 && seams_[i] <= seams_[i - 1]) {
      throw std::invalid_argument("seams must be strictly increasing");
    }
  }
}

ModuleLayout ModuleLayout::equal(int n_rows, int n_modules) {
  if (n_modules < 1 || n_modules > n_rows) {
    throw std::invalid_argument("cannot split " + std::to_string(n_rows) +
                                " rows into " + std::to_string(n_modules) +
                                " modules");
  }
  std::vector<int> seams;
  const int base = n_rows / n_modules;
  const int extra = n_rows % n_modules;
  int pos = 0;
  for (int m = 0; m + 1 < n_modules; ++m) {
    pos += base + (m < extra ? 1 : 0);
    seams.push_back(pos);
  }
  return ModuleLayout(n_rows, std::move(seams));
}

int ModuleLayout::module_of(int row) const {
  if (row < 0 || row >= n_rows_) {
    throw std::out_of_range("row " + std::to_string(row) + " outside layout");
  }
  return static_cast<int>(
      std::upper_bound(seams_.begin(), seams_.end(), row) - seams_.begin());
}

int ModuleLayout::modules_spanned(int lo, int hi) const {
  return module_of(hi) - module_of(lo) + 1;
}

std::pair<int, int> ModuleLayout::module_rows(int module) const {
  const int first = module == 0 ? 0 : seams_.at(module - 1);
  const int last = module == n_modules() - 1 ? n_rows_ - 1 : seams_.at(module) - 1;
  return {first, last};
}

Ansatz select_terms(const Ansatz& a, double epsilon) {
  std::vector<ExcitationTerm> kept;
  for (const auto& t : a.terms()) {
    if (t.gradient_magnitude >= epsilon) kept.push_back(t);
  }
  auto meta = a.metadata();
  meta["epsilon"] = format_double(epsilon);
  return Ansatz(a.n_orbitals(), std::move(kept), std::move(meta));
}

HoppingDiagram classify_hoppings(const Ansatz& a, const ModuleLayout& layout,
                                 double epsilon) {
  if (layout.n_rows() < a.n_orbitals()) {
    throw std::invalid_argument("layout has " + std::to_string(layout.n_rows()) +
                                " rows but ansatz needs " +
                                std::to_string(a.n_orbitals()));
  }
  HoppingDiagram d;
  d.epsilon = epsilon;
  const Ansatz kept = select_terms(a, epsilon);
  for (const auto& t : kept.terms()) {
    const int k = layout.modules_spanned(t.row_lo(), t.row_hi());
    d.modules_spanned[t.id] = k;
    (k == 1 ? d.intra_terms : d.inter_terms).push_back(t.id);
  }
  return d;
}

std::pair<Ansatz, ModuleLayout> replicate_translation(const Ansatz& unit,
                                                      int rows_per_module,
                                                      int copies) {
  if (copies < 1) throw std::invalid_argument("copies must be >= 1");
  if (rows_per_module < 1) {
    throw std::invalid_argument("rows_per_module must be >= 1");
  }
  std::vector<ExcitationTerm> cell, boundary;
  for (const auto& t : unit.terms()) {
    if (t.row_hi() < rows_per_module) {
      cell.push_back(t);
    } else if (t.row_lo() < rows_per_module && t.row_hi() < 2 * rows_per_module) {
      boundary.push_back(t);
    } else {
      throw std::invalid_argument(
          "term " + std::to_string(t.id) +
          " is neither inside the unit cell nor a single-seam boundary term");
    }
  }

  auto shifted = [](ExcitationTerm t, int offset, int new_id) {
    for (int& i : t.idx) i += offset;
    if (t.kind == TermKind::Single) t.idx[2] = t.idx[3] = 0;
    t.id = new_id;
    return t;
  };

  std::vector<ExcitationTerm> out;
  int next_id = 0;
  for (int c = 0; c < copies; ++c) {
    const int offset = c * rows_per_module;
    for (const auto& t : cell) out.push_back(shifted(t, offset, next_id++));
    if (c + 1 < copies) {
      for (const auto& t : boundary) out.push_back(shifted(t, offset, next_id++));
    }
  }

  const int n_rows = copies * rows_per_module;
  std::vector<int> seams;
  for (int c = 1; c < copies; ++c) seams.push_back(c * rows_per_module);
  auto meta = unit.metadata();
  meta["copies"] = std::to_string(copies);
  return {Ansatz(n_rows, std::move(out), std::move(meta)),
          ModuleLayout(n_rows, std::move(seams))};
}

}  // namespace modpack
