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

#include "modpack/simcheck.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace modpack {

namespace {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

void check_dim(int n) {
  if (n < 1 || n > kDenseMaxQubits) {
    throw std::invalid_argument("dense dimension cap: n=" + std::to_string(n) +
                                " outside 1.." + std::to_string(kDenseMaxQubits));
  }
}

void check_row(int q, int n) {
  if (q < 0 || q >= n) {
    throw std::invalid_argument("gate row " + std::to_string(q) + " outside 0.." +
                                std::to_string(n - 1));
  }
}

DenseUnitary checked(DenseUnitary u) {
  const double err = u.unitarity_error();
  if (!(err <= kUnitarityTol)) {
    throw std::logic_error("unitarity check failed: ||U^dag U - I||_F = " + std::to_string(err));
  }
  return u;
}

// Left-multiply by a single-qubit gate on row q.
void apply_1q(Eigen::MatrixXcd& u, int q, const Mat2& g) {
  const Eigen::Index dim = u.rows();
  const Eigen::Index bit = Eigen::Index{1} << q;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const Eigen::Index j = i | bit;
    const Eigen::RowVectorXcd r0 = u.row(i);
    const Eigen::RowVectorXcd r1 = u.row(j);
    u.row(i) = g(0, 0) * r0 + g(0, 1) * r1;
    u.row(j) = g(1, 0) * r0 + g(1, 1) * r1;
  }
}

void apply_cnot(Eigen::MatrixXcd& u, int c, int t) {
  const Eigen::Index dim = u.rows();
  const Eigen::Index cb = Eigen::Index{1} << c, tb = Eigen::Index{1} << t;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if ((i & cb) && !(i & tb)) u.row(i).swap(u.row(i | tb));
  }
}

Mat2 hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  Mat2 h;
  h << r, r, r, -r;
  return h;
}

Mat2 phase(Complex p) {
  Mat2 m;
  m << 1.0, 0.0, 0.0, p;
  return m;
}

Mat2 rz(double angle) {
  Mat2 m;
  m << std::exp(Complex(0, -angle / 2)), 0.0, 0.0, std::exp(Complex(0, angle / 2));
  return m;
}

// One ladder operator on a basis state. Returns false when it annihilates.
bool apply_ladder(int p, bool create, int n, std::uint64_t& state, double& sign) {
  const std::uint64_t bit = std::uint64_t{1} << p;
  // a_p = Q^+ on p (|0> -> |1>), a_p^dag = Q^- (|1> -> |0>).
  if (create == !(state & bit)) return false;
  const std::uint64_t tail = state & ~((bit << 1) - 1) & ((std::uint64_t{1} << n) - 1);
  if (std::popcount(tail) % 2) sign = -sign;
  state ^= bit;
  return true;
}

}  // namespace

double DenseUnitary::unitarity_error() const {
  const auto dim = m.rows();
  return (m.adjoint() * m - Eigen::MatrixXcd::Identity(dim, dim)).norm();
}

DenseUnitary identity_unitary(int n) {
  check_dim(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  return {n, Eigen::MatrixXcd::Identity(dim, dim)};
}

DenseUnitary gates_to_unitary(const std::vector<Gate>& gates, int n) {
  DenseUnitary u = identity_unitary(n);
  for (const auto& g : gates) {
    check_row(g.q0, n);
    switch (g.kind) {
      case GateKind::CNOT:
        check_row(g.q1, n);
        if (g.q0 == g.q1) throw std::invalid_argument("cnot control equals target");
        apply_cnot(u.m, g.q0, g.q1);
        break;
      case GateKind::RZ:
        apply_1q(u.m, g.q0, rz(g.angle));
        break;
      case GateKind::H:
        apply_1q(u.m, g.q0, hadamard());
        break;
      case GateKind::SDG:
        apply_1q(u.m, g.q0, phase(Complex(0, -1)));
        break;
      case GateKind::S:
        apply_1q(u.m, g.q0, phase(Complex(0, 1)));
        break;
      case GateKind::Y_BASIS:
        apply_1q(u.m, g.q0, phase(Complex(0, -1)));
        apply_1q(u.m, g.q0, hadamard());
        break;
    }
  }
  return checked(std::move(u));
}

Eigen::MatrixXcd jw_generator(const ExcitationTerm& term, int n) {
  check_dim(n);
  validate_term(term, n);
  // Right-to-left application order of A's ladder operators.
  std::vector<std::pair<int, bool>> ops;
  const auto& ix = term.idx;
  if (term.kind == TermKind::Single) {
    ops = {{ix[1], false}, {ix[0], true}};
  } else {
    ops = {{ix[3], false}, {ix[2], false}, {ix[1], true}, {ix[0], true}};
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    auto state = static_cast<std::uint64_t>(col);
    double sign = 1.0;
    bool alive = true;
    for (const auto& [p, create] : ops) {
      if (!(alive = apply_ladder(p, create, n, state, sign))) break;
    }
    if (alive) a(static_cast<Eigen::Index>(state), col) += sign;
  }
  return term.amplitude * (a - a.adjoint());
}

DenseUnitary jw_reference_unitary(const ExcitationTerm& term, int n) {
  const Eigen::MatrixXcd g = jw_generator(term, n);
  // G = -i H with H = i G Hermitian, so exp(G) = V exp(-i L) V^dag.
  const Eigen::MatrixXcd h = Complex(0, 1) * g;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  const Eigen::VectorXcd phases =
      es.eigenvalues().unaryExpr([](double l) { return std::exp(Complex(0, -l)); });
  DenseUnitary u{n, es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint()};
  return checked(std::move(u));
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  // BDCSVD misreports the top singular value on some 64x64 complex inputs
  // (Eigen 3.4); the Hermitian eigensolver on M^dag M is reliable.
  const Eigen::MatrixXcd g = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

SwapCheck check_commuting_swap(const ExcitationTerm& a, const ExcitationTerm& b, int n) {
  const auto ua = gates_to_unitary(compile_term_to_gates(a, n).gates, n);
  const auto ub = gates_to_unitary(compile_term_to_gates(b, n).gates, n);
  SwapCheck r;
  r.max_norm_diff = spectral_norm(ua.m * ub.m - ub.m * ua.m);
  r.disjoint = a.row_hi() < b.row_lo() || b.row_hi() < a.row_lo();
  return r;
}

SwapCheck check_commuting_swap(const CircuitTile& tile_a, const CircuitTile& tile_b,
                               const ExcitationTerm& a, const ExcitationTerm& b, int n) {
  auto same_rows = [](const CircuitTile& t, const ExcitationTerm& e) {
    return t.row_lo == e.row_lo() && t.row_hi == e.row_hi();
  };
  if (!same_rows(tile_a, a) || !same_rows(tile_b, b)) {
    throw std::invalid_argument("tile rows do not match their terms");
  }
  return check_commuting_swap(a, b, n);
}

bool VerifyReport::ok() const {
  return std::all_of(terms.begin(), terms.end(), [](const TermCheck& t) { return t.pass; }) &&
         std::all_of(pairs.begin(), pairs.end(), [](const PairCheck& p) { return p.pass; }) &&
         scaling.pass;
}

namespace {

const char* class_name(HoppingClass c) {
  switch (c) {
    case HoppingClass::Single: return "single";
    case HoppingClass::Controlled: return "controlled";
    case HoppingClass::Double: return "double";
  }
  return "?";
}

std::string index_list(const ExcitationTerm& t) {
  std::string s;
  for (int i : t.indices()) s += (s.empty() ? "" : ",") + std::to_string(i);
  return s;
}

}  // namespace

std::string VerifyReport::table() const {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3);
  os << std::left << std::setw(6) << "term" << std::setw(12) << "class" << std::setw(10)
     << "indices" << std::setw(8) << "amp" << std::setw(4) << "n" << std::setw(12) << "norm_diff"
     << "result\n";
  for (const auto& t : terms) {
    std::ostringstream amp;
    amp << std::defaultfloat << t.term.amplitude;
    os << std::setw(6) << t.term.id << std::setw(12) << class_name(t.term.hopping_class())
       << std::setw(10) << index_list(t.term) << std::setw(8) << amp.str() << std::setw(4)
       << t.n_qubits << std::setw(12) << t.norm_diff << (t.pass ? "pass" : "FAIL") << '\n';
  }
  os << "\npair  swap_diff   disjoint  result\n";
  for (const auto& p : pairs) {
    std::ostringstream ids;
    ids << p.term_a << '/' << p.term_b;
    os << std::setw(6) << ids.str() << std::setw(12) << p.swap.max_norm_diff << std::setw(10)
       << (p.swap.disjoint ? "yes" : "no")
       << (p.swap.disjoint ? (p.pass ? "pass" : "FAIL") : "reported") << '\n';
  }
  os << "\nscaling single(0,2)/single(1,2): diff(t)=" << scaling.diff_full
     << " diff(t/2)=" << scaling.diff_half << " ratio=" << std::fixed << std::setprecision(3)
     << scaling.ratio << ' ' << (scaling.pass ? "pass" : "FAIL") << '\n';
  return os.str();
}

VerifyReport run_verification(const std::vector<ExcitationTerm>& terms, int n, double tol) {
  VerifyReport r;
  for (const auto& t : terms) {
    TermCheck c;
    c.term = t;
    c.n_qubits = n;
    const auto compiled = gates_to_unitary(compile_term_to_gates(t, n).gates, n);
    const auto reference = jw_reference_unitary(t, n);
    c.norm_diff = spectral_norm(compiled.m - reference.m);
    c.pass = c.norm_diff <= tol;
    r.terms.push_back(c);
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      PairCheck p;
      p.term_a = terms[i].id;
      p.term_b = terms[j].id;
      p.swap = check_commuting_swap(terms[i], terms[j], n);
      p.pass = !p.swap.disjoint || p.swap.max_norm_diff <= 1e-10;
      r.pairs.push_back(p);
    }
  }
  if (n >= 3) {
    // Bilinears on disjoint orbitals commute exactly, so the pair shares
    // orbital 2.
    auto diff_at = [n](double t) {
      const auto a = jw_reference_unitary(ExcitationTerm::single(0, 0, 2, t, 0.0), n);
      const auto b = jw_reference_unitary(ExcitationTerm::single(1, 1, 2, t, 0.0), n);
      return spectral_norm(a.m * b.m - b.m * a.m);
    };
    r.scaling.diff_full = diff_at(0.1);
    r.scaling.diff_half = diff_at(0.05);
    r.scaling.ratio = r.scaling.diff_full / r.scaling.diff_half;
    r.scaling.pass = std::abs(r.scaling.ratio - 4.0) <= 0.8;
  } else {
    r.scaling.pass = true;  // needs three rows
  }
  return r;
}

std::vector<ExcitationTerm> standard_terms(double amplitude) {
  return {ExcitationTerm::single(0, 0, 3, amplitude, 0.0),
          ExcitationTerm::double_hop(1, 0, 1, 1, 2, amplitude, 0.0),
          ExcitationTerm::double_hop(2, 0, 1, 2, 3, amplitude, 0.0)};
}

}  // namespace modpack
