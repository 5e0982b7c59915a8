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

#include "modpack/jw_compile.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "modpack/util.hpp"

namespace modpack {

namespace {

using Complex = std::complex<double>;

PauliSum annihilation(int lo, int hi, int p) {
  return PauliSum::with_z_tail(lo, hi, p, Pauli::X, 0.5) +
         PauliSum::with_z_tail(lo, hi, p, Pauli::Y, Complex(0, -0.5));
}

PauliSum creation(int lo, int hi, int p) { return annihilation(lo, hi, p).adjoint(); }

// The excitation operator A with t (A - A^dag) the term generator. Z strings
// above row_hi appear an even number of times and cancel, so the window
// [row_lo, row_hi] is exact.
PauliSum excitation_operator(const ExcitationTerm& t) {
  const int lo = t.row_lo(), hi = t.row_hi();
  const auto& ix = t.idx;
  if (t.kind == TermKind::Single) {
    return creation(lo, hi, ix[0]) * annihilation(lo, hi, ix[1]);
  }
  return creation(lo, hi, ix[0]) * creation(lo, hi, ix[1]) *
         annihilation(lo, hi, ix[2]) * annihilation(lo, hi, ix[3]);
}

void check_rows(const ExcitationTerm& t, int n_rows) {
  validate_term(t, n_rows);
}

}  // namespace

std::vector<PauliRotation> jw_rotations(const ExcitationTerm& t) {
  validate_term(t, t.row_hi() + 1);
  const PauliSum a = excitation_operator(t);
  // A - A^dag = sum 2i Im(c_s) P_s.
  const PauliSum gen = (a + a.adjoint() * Complex(-1.0)).pruned();
  std::vector<PauliRotation> out;
  for (const auto& [ops, c] : gen.terms()) {
    PauliString ps{t.row_lo(), ops};
    if (ps.support().empty()) throw std::logic_error("generator has identity part");
    out.push_back({std::move(ps), c.imag() * t.amplitude});
  }
  if (static_cast<int>(out.size()) != t.conjugation_count()) {
    throw std::logic_error("term " + std::to_string(t.id) + " expanded into " +
                           std::to_string(out.size()) + " strings, expected " +
                           std::to_string(t.conjugation_count()));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      if (!out[i].pauli.commutes_with(out[j].pauli)) {
        throw std::logic_error("non-commuting strings in term expansion");
      }
    }
  }
  return out;
}

TermCircuit compile_term_to_gates(const ExcitationTerm& t, int n_rows) {
  check_rows(t, n_rows);
  TermCircuit circ;
  circ.noncanonical_controlled =
      t.hopping_class() == HoppingClass::Controlled && !t.is_canonical_controlled();
  auto& g = circ.gates;
  for (const auto& rot : jw_rotations(t)) {
    const auto rows = rot.pauli.support();
    for (int r : rows) {
      if (rot.pauli.at(r) == Pauli::X) {
        g.push_back(Gate::h(r));
      } else if (rot.pauli.at(r) == Pauli::Y) {
        g.push_back(Gate::sdg(r));
        g.push_back(Gate::h(r));
      }
    }
    for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
      g.push_back(Gate::cnot(rows[k], rows[k + 1]));
    }
    g.push_back(Gate::rz(rows.back(), -2.0 * rot.angle));
    for (std::size_t k = rows.size() - 1; k > 0; --k) {
      g.push_back(Gate::cnot(rows[k - 1], rows[k]));
    }
    for (int r : rows) {
      if (rot.pauli.at(r) == Pauli::X) {
        g.push_back(Gate::h(r));
      } else if (rot.pauli.at(r) == Pauli::Y) {
        g.push_back(Gate::h(r));
        g.push_back(Gate::s(r));
      }
    }
  }
  return circ;
}

int cnot_count(const std::vector<Gate>& gates) {
  return static_cast<int>(std::count_if(gates.begin(), gates.end(), [](const Gate& g) {
    return g.kind == GateKind::CNOT;
  }));
}

std::string format_gates(const std::vector<Gate>& gates) {
  std::ostringstream os;
  for (const auto& g : gates) {
    switch (g.kind) {
      case GateKind::CNOT:
        os << "cnot " << g.q0 << ' ' << g.q1 << '\n';
        break;
      case GateKind::RZ:
        os << "rz " << g.q0 << ' ' << format_double(g.angle) << '\n';
        break;
      case GateKind::H:
        os << "h " << g.q0 << '\n';
        break;
      case GateKind::SDG:
        os << "sdg " << g.q0 << '\n';
        break;
      case GateKind::S:
        os << "s " << g.q0 << '\n';
        break;
      case GateKind::Y_BASIS:
        os << "sdg " << g.q0 << '\n' << "h " << g.q0 << '\n';
        break;
    }
  }
  return os.str();
}

std::vector<Gate> parse_gates(const std::string& text) {
  std::vector<Gate> out;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    try {
      auto q = [&](std::size_t i) { return static_cast<int>(parse_int(tok.at(i))); };
      if (tok[0] == "cnot" && tok.size() == 3) {
        out.push_back(Gate::cnot(q(1), q(2)));
      } else if (tok[0] == "rz" && tok.size() == 3) {
        out.push_back(Gate::rz(q(1), parse_double(tok[2])));
      } else if (tok[0] == "h" && tok.size() == 2) {
        out.push_back(Gate::h(q(1)));
      } else if (tok[0] == "sdg" && tok.size() == 2) {
        out.push_back(Gate::sdg(q(1)));
      } else if (tok[0] == "s" && tok.size() == 2) {
        out.push_back(Gate::s(q(1)));
      } else {
        throw ParseError(line_no, "unrecognized gate '" + std::string(line) + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return out;
}

CircuitTile make_tile(int tile_id, int row_lo, int row_hi, int width,
                      int modules_spanned, int term_id) {
  if (row_lo > row_hi || row_lo < 0) throw std::invalid_argument("bad tile rows");
  if (width < 1) throw std::invalid_argument("tile width must be >= 1");
  if (modules_spanned < 1) throw std::invalid_argument("modules_spanned must be >= 1");
  CircuitTile tile;
  tile.tile_id = tile_id;
  tile.term_id = term_id;
  tile.row_lo = row_lo;
  tile.row_hi = row_hi;
  tile.width = width;
  tile.modules_spanned = modules_spanned;
  tile.kind = modules_spanned > 1 ? TileKind::Inter : TileKind::Intra;
  tile.inter_gate_count = 2 * (modules_spanned - 1);
  return tile;
}

CircuitTile term_to_tile(const ExcitationTerm& t, const ModuleLayout& layout,
                         int tile_id) {
  check_rows(t, layout.n_rows());
  const int lo = t.row_lo(), hi = t.row_hi();
  const int width = 2 * t.conjugation_count() * (hi - lo);
  return make_tile(tile_id, lo, hi, width, layout.modules_spanned(lo, hi), t.id);
}

std::vector<CircuitTile> compile_ansatz(const Ansatz& a, const ModuleLayout& layout) {
  if (layout.n_rows() < a.n_orbitals()) {
    throw std::invalid_argument("layout smaller than ansatz register");
  }
  std::vector<CircuitTile> tiles;
  tiles.reserve(a.size());
  for (const auto& t : a.terms()) {
    tiles.push_back(term_to_tile(t, layout, static_cast<int>(tiles.size())));
  }
  return tiles;
}

int SeamReport::total() const {
  int sum = 0;
  for (const auto& e : seams) sum += e.n_inter;
  return sum;
}

SeamReport count_inter_cnots(const std::vector<CircuitTile>& tiles,
                             const ModuleLayout& layout) {
  SeamReport report;
  for (int s : layout.seams()) {
    SeamReport::Entry e;
    e.seam = s;
    for (const auto& t : tiles) {
      if (t.row_lo < s && s <= t.row_hi) {
        e.crossing_tiles.push_back(t.tile_id);
        e.n_inter += 2;
      }
    }
    report.seams.push_back(std::move(e));
  }
  return report;
}

std::vector<int> seam_sweep(const Ansatz& a) {
  const int n = a.n_orbitals();
  // Difference array over seam positions crossed by each term.
  std::vector<int> diff(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& t : a.terms()) {
    diff[static_cast<std::size_t>(t.row_lo()) + 1] += 2;
    diff[static_cast<std::size_t>(t.row_hi()) + 1] -= 2;
  }
  std::vector<int> out(static_cast<std::size_t>(n), 0);
  int run = 0;
  for (int s = 1; s < n; ++s) {
    run += diff[static_cast<std::size_t>(s)];
    out[static_cast<std::size_t>(s)] = run;
  }
  return out;
}

SeamChoice optimize_seam(const Ansatz& a, int n_modules, int min_module_rows) {
  const int n = a.n_orbitals();
  if (n_modules < 2) throw std::invalid_argument("optimize_seam needs >= 2 modules");
  if (min_module_rows < 1) throw std::invalid_argument("min_module_rows must be >= 1");
  if (static_cast<long long>(n_modules) * min_module_rows > n) {
    throw std::invalid_argument("cannot fit " + std::to_string(n_modules) +
                                " modules of >= " + std::to_string(min_module_rows) +
                                " rows into " + std::to_string(n) + " rows");
  }
  const auto cost = seam_sweep(a);

  struct Best {
    long long n_inter = std::numeric_limits<long long>::max();
    long long sq = std::numeric_limits<long long>::max();
    bool operator<(const Best& o) const {
      return n_inter != o.n_inter ? n_inter < o.n_inter : sq < o.sq;
    }
  };
  const int seams = n_modules - 1;
  // best[r][start]: optimum for the rows [start, n) split by r more seams.
  std::vector<std::vector<Best>> best(static_cast<std::size_t>(seams) + 1,
                                      std::vector<Best>(static_cast<std::size_t>(n) + 1));
  auto at = [&](int r, int start) -> Best& {
    return best[static_cast<std::size_t>(r)][static_cast<std::size_t>(start)];
  };
  for (int start = 0; start < n; ++start) {
    const long long size = n - start;
    if (size >= min_module_rows) at(0, start) = {0, size * size};
  }
  for (int r = 1; r <= seams; ++r) {
    for (int start = 0; start < n; ++start) {
      for (int s = start + min_module_rows; s <= n - r * min_module_rows; ++s) {
        const Best& rest = at(r - 1, s);
        if (rest.n_inter == std::numeric_limits<long long>::max()) continue;
        const long long size = s - start;
        Best cand{cost[static_cast<std::size_t>(s)] + rest.n_inter, size * size + rest.sq};
        if (cand < at(r, start)) at(r, start) = cand;
      }
    }
  }

  std::vector<int> chosen;
  int start = 0;
  for (int r = seams; r >= 1; --r) {
    const Best target = at(r, start);
    for (int s = start + min_module_rows; s <= n - r * min_module_rows; ++s) {
      const Best& rest = at(r - 1, s);
      if (rest.n_inter == std::numeric_limits<long long>::max()) continue;
      const long long size = s - start;
      if (cost[static_cast<std::size_t>(s)] + rest.n_inter == target.n_inter &&
          size * size + rest.sq == target.sq) {
        chosen.push_back(s);
        start = s;
        break;
      }
    }
  }
  return {ModuleLayout(n, chosen), static_cast<int>(at(seams, 0).n_inter)};
}

}  // namespace modpack
