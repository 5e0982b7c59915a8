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

#include "catch_amalgamated.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "modpack/ansatz.hpp"
#include "modpack/ansatz_io.hpp"
#include "modpack/synthetic.hpp"
#include "modpack/util.hpp"

using namespace modpack;

namespace {

// Random valid term over n orbitals; mixes all three hopping classes.
ExcitationTerm random_term(Rng& rng, int id, int n) {
  const double amp = rng.uniform(-1.0, 1.0);
  const double grad = std::pow(10.0, rng.uniform(-6.0, -1.0));
  const int kind = n >= 4 ? rng.uniform_int(0, 2) : 0;
  if (kind == 0) {
    int i = rng.uniform_int(0, n - 1), j = rng.uniform_int(0, n - 2);
    if (j >= i) ++j;
    return ExcitationTerm::single(id, i, j, amp, grad);
  }
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) pool[static_cast<std::size_t>(r)] = r;
  for (int r = n - 1; r > 0; --r) std::swap(pool[static_cast<std::size_t>(r)], pool[static_cast<std::size_t>(rng.uniform_int(0, r))]);
  if (kind == 1) return ExcitationTerm::double_hop(id, pool[0], pool[1], pool[1], pool[2], amp, grad);
  return ExcitationTerm::double_hop(id, pool[0], pool[1], pool[2], pool[3], amp, grad);
}

Ansatz random_ansatz(Rng& rng, int n, int count) {
  std::vector<ExcitationTerm> terms;
  for (int i = 0; i < count; ++i) terms.push_back(random_term(rng, i, n));
  return Ansatz(n, terms, {{"label", "random"}});
}

std::vector<int> ids(const Ansatz& a) {
  std::vector<int> out;
  for (const auto& t : a.terms()) out.push_back(t.id);
  return out;
}

}  // namespace

TEST_CASE("term invariants") {
  CHECK_NOTHROW(validate_term(ExcitationTerm::single(0, 0, 3, 0.1, 0.0), 4));
  CHECK_THROWS_AS(validate_term(ExcitationTerm::single(0, 2, 2, 0.1, 0.0), 4), std::invalid_argument);
  CHECK_THROWS_AS(validate_term(ExcitationTerm::single(0, 0, 4, 0.1, 0.0), 4), std::invalid_argument);
  CHECK_THROWS_AS(validate_term(ExcitationTerm::single(0, 0, 1, 0.1, -1e-3), 4), std::invalid_argument);
  // {i,j} and {k,m} the same pair: a number operator, not a hopping.
  CHECK_THROWS(validate_term(ExcitationTerm::double_hop(0, 0, 1, 1, 0, 0.1, 0.0), 4));
  CHECK_THROWS(validate_term(ExcitationTerm::double_hop(0, 0, 0, 1, 2, 0.1, 0.0), 4));
  CHECK_THROWS(validate_term(ExcitationTerm::double_hop(0, 0, 1, 2, 2, 0.1, 0.0), 4));

  const auto c = ExcitationTerm::double_hop(0, 0, 1, 1, 2, 0.1, 0.0);
  CHECK(c.hopping_class() == HoppingClass::Controlled);
  CHECK(c.is_canonical_controlled());
  CHECK(c.conjugation_count() == 4);
  CHECK_FALSE(ExcitationTerm::double_hop(0, 2, 1, 1, 0, 0.1, 0.0).is_canonical_controlled());
  CHECK(ExcitationTerm::double_hop(0, 0, 1, 2, 3, 0.1, 0.0).conjugation_count() == 8);
  CHECK(ExcitationTerm::single(0, 3, 0, 0.1, 0.0).row_lo() == 0);
  CHECK(ExcitationTerm::single(0, 3, 0, 0.1, 0.0).row_hi() == 3);
}

TEST_CASE("ansatz rejects duplicate ids") {
  std::vector<ExcitationTerm> terms{ExcitationTerm::single(7, 0, 1, 0.1, 0.0),
                                    ExcitationTerm::single(7, 1, 2, 0.1, 0.0)};
  CHECK_THROWS_AS(Ansatz(3, terms), std::invalid_argument);
}

TEST_CASE("parse text ansatz") {
  SECTION("single line without header") {
    const Ansatz a = parse_ansatz("single 0 3 amp=0.3 grad=2e-3\n");
    CHECK(a.n_orbitals() >= 4);
    REQUIRE(a.size() == 1);
    CHECK(a.terms()[0].kind == TermKind::Single);
    CHECK(a.terms()[0].amplitude == 0.3);
    CHECK(a.terms()[0].gradient_magnitude == 2e-3);
  }
  SECTION("empty list with header") {
    const Ansatz a = parse_ansatz("orbitals 8\n# nothing else\n");
    CHECK(a.n_orbitals() == 8);
    CHECK(a.size() == 0);
  }
  SECTION("identical indices flag a controlled hopping") {
    const Ansatz a = parse_ansatz("orbitals 4\ndouble 0 1 1 2 amp=0.1 grad=1e-3\n");
    CHECK(a.terms()[0].hopping_class() == HoppingClass::Controlled);
  }
  SECTION("meta, comments, explicit ids, order") {
    const Ansatz a = parse_ansatz(
        "orbitals 6\nmeta molecule H4 chain\n"
        "double 0 1 2 3 amp=-0.25 grad=1e-4 id=12  # trailing comment\n"
        "single 4 5 amp=0.5 grad=0\n");
    CHECK(a.metadata().at("molecule") == "H4 chain");
    REQUIRE(a.size() == 2);
    CHECK(a.terms()[0].id == 12);
    CHECK(a.terms()[1].id == 1);
    CHECK(a.terms()[1].idx[0] == 4);
  }
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string& src) -> std::size_t {
    try {
      parse_ansatz(src, AnsatzFormat::Text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("orbitals 4\nsingle 0 1 amp=0.1\n") == 2);
  CHECK(line_of("orbitals 4\n\nsingle 0 9 amp=0.1 grad=0\n") == 3);
  CHECK(line_of("single 0 1 amp=0.1 grad=0 id=3\nsingle 1 2 amp=1 grad=0 id=3\n") == 2);
  CHECK(line_of("triple 0 1 2\n") == 1);
  CHECK(line_of("single 0 1 amp=x grad=0\n") == 1);
  CHECK(line_of("single 0 1 amp=0.1 grad=0\norbitals 4\n") == 2);
}

TEST_CASE("missing file names the path") {
  try {
    load_ansatz("/nonexistent/dir/a.terms");
    FAIL("expected an exception");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("/nonexistent/dir/a.terms") != std::string::npos);
  }
}

TEST_CASE("round trip through both formats (property)") {
  Rng rng(20261014);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.uniform_int(2, 16);
    const Ansatz a = random_ansatz(rng, n, rng.uniform_int(0, 30));
    for (auto fmt : {AnsatzFormat::Text, AnsatzFormat::Json}) {
      const Ansatz b = parse_ansatz(serialize_ansatz(a, fmt), fmt);
      REQUIRE(b == a);
      // Auto detection picks the same reader.
      REQUIRE(parse_ansatz(serialize_ansatz(a, fmt)) == a);
    }
  }
}

TEST_CASE("select_terms") {
  const Ansatz a(4, {ExcitationTerm::single(0, 0, 1, 0.1, 2e-3),
                     ExcitationTerm::single(1, 1, 2, 0.1, 5e-4)});
  CHECK(ids(select_terms(a, 1e-3)) == std::vector<int>{0});
  CHECK(ids(select_terms(a, 0.0)) == ids(a));
  CHECK(select_terms(a, 1e-3).metadata().at("epsilon") == "0.001");

  // Monotone in epsilon, brute-force subset check.
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const Ansatz r = random_ansatz(rng, 10, 100);
    double e1 = std::pow(10.0, rng.uniform(-6, -1)), e2 = std::pow(10.0, rng.uniform(-6, -1));
    if (e1 > e2) std::swap(e1, e2);
    const auto big = ids(select_terms(r, e1));
    const std::set<int> big_set(big.begin(), big.end());
    for (int id : ids(select_terms(r, e2))) REQUIRE(big_set.count(id) == 1);
  }
}

TEST_CASE("module layout") {
  const ModuleLayout l(12, {4, 8});
  CHECK(l.n_modules() == 3);
  CHECK(l.module_of(0) == 0);
  CHECK(l.module_of(3) == 0);
  CHECK(l.module_of(4) == 1);
  CHECK(l.module_of(11) == 2);
  CHECK(l.modules_spanned(0, 11) == 3);
  CHECK(l.modules_spanned(3, 4) == 2);
  CHECK(l.module_rows(1) == std::pair{4, 7});
  CHECK_THROWS(ModuleLayout(12, {0}));
  CHECK_THROWS(ModuleLayout(12, {12}));
  CHECK_THROWS(ModuleLayout(12, {5, 5}));
  CHECK(ModuleLayout::equal(10, 3).seams() == std::vector<int>{4, 7});
}

TEST_CASE("classify_hoppings") {
  const Ansatz a(4, {ExcitationTerm::single(0, 0, 3, 0.1, 1.0), ExcitationTerm::single(1, 0, 1, 0.1, 1.0)});
  const auto d = classify_hoppings(a, ModuleLayout(4, {2}), 0.0);
  CHECK(d.inter_terms == std::vector<int>{0});
  CHECK(d.intra_terms == std::vector<int>{1});
  CHECK(d.modules_spanned.at(0) == 2);

  const Ansatz chain(12, {ExcitationTerm::single(0, 0, 11, 0.1, 1.0)});
  CHECK(classify_hoppings(chain, ModuleLayout(12, {4, 8}), 0.0).modules_spanned.at(0) == 3);
  CHECK_THROWS(classify_hoppings(chain, ModuleLayout(8, {4}), 0.0));

  // Partition property on random instances.
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Ansatz r = random_ansatz(rng, 12, 60);
    const double eps = std::pow(10.0, rng.uniform(-6, -1));
    const auto diag = classify_hoppings(r, ModuleLayout(12, {3, 7}), eps);
    const auto sel = ids(select_terms(r, eps));
    std::vector<int> all = diag.intra_terms;
    all.insert(all.end(), diag.inter_terms.begin(), diag.inter_terms.end());
    std::sort(all.begin(), all.end());
    auto sorted_sel = sel;
    std::sort(sorted_sel.begin(), sorted_sel.end());
    REQUIRE(all == sorted_sel);
    for (int id : diag.intra_terms) REQUIRE(diag.modules_spanned.at(id) == 1);
    for (int id : diag.inter_terms) REQUIRE(diag.modules_spanned.at(id) > 1);
  }
}

TEST_CASE("synthetic chains") {
  SyntheticSpec spec;
  spec.n_modules = 3;
  spec.rows_per_module = 4;
  spec.inter_terms_per_seam = 0;
  const Ansatz a = generate_synthetic_chain(spec, 5);
  const auto d = classify_hoppings(a, ModuleLayout::equal(12, 3), 0.0);
  CHECK(d.inter_terms.empty());
  CHECK(d.intra_terms.size() == a.size());

  SyntheticSpec two;
  two.n_modules = 2;
  two.inter_terms_per_seam = 1;
  const Ansatz b = generate_synthetic_chain(two, 9);
  CHECK(classify_hoppings(b, ModuleLayout::equal(b.n_orbitals(), 2), 0.0).inter_terms.size() == 1);

  CHECK(serialize_ansatz(generate_synthetic_chain(SyntheticSpec{}, 42)) ==
        serialize_ansatz(generate_synthetic_chain(SyntheticSpec{}, 42)));
  CHECK(serialize_ansatz(generate_synthetic_chain(SyntheticSpec{}, 42)) !=
        serialize_ansatz(generate_synthetic_chain(SyntheticSpec{}, 43)));

  SyntheticSpec bad;
  bad.rows_per_module = 3;
  bad.max_intra_span = 5;
  CHECK_THROWS_AS(generate_synthetic_chain(bad, 1), std::invalid_argument);

  // Inter gradients sit under the decayed ceiling.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Ansatz c = generate_synthetic_chain(SyntheticSpec{}, seed);
    const auto diag = classify_hoppings(c, ModuleLayout::equal(c.n_orbitals(), 3), 0.0);
    for (int id : diag.inter_terms) {
      const auto& t = *std::find_if(c.terms().begin(), c.terms().end(), [&](const ExcitationTerm& e) { return e.id == id; });
      REQUIRE(t.gradient_magnitude <= 1e-2 * 0.1 + 1e-15);
    }
  }
}

TEST_CASE("replicate_translation") {
  const Ansatz unit(16, {ExcitationTerm::single(0, 0, 3, 0.1, 1.0),
                        ExcitationTerm::double_hop(1, 4, 5, 6, 7, 0.1, 1.0),
                        ExcitationTerm::single(2, 6, 9, 0.1, 1e-3),
                        ExcitationTerm::single(3, 7, 8, 0.1, 1e-3)});
  SECTION("no boundary terms") {
    const Ansatz cell(4, {ExcitationTerm::single(0, 0, 3, 0.1, 1.0)});
    auto [a, l] = replicate_translation(cell, 4, 3);
    CHECK(a.size() == 3);
    CHECK(classify_hoppings(a, l, 0.0).inter_terms.empty());
  }
  SECTION("seven copies") {
    auto [a, l] = replicate_translation(unit, 8, 7);
    CHECK(l.seams().size() == 6);
    CHECK(a.n_orbitals() == 56);
    CHECK(classify_hoppings(a, l, 0.0).inter_terms.size() == 12);
    CHECK(a.size() == 7 * 2 + 12);
  }
  SECTION("one copy keeps the cell") {
    auto [a, l] = replicate_translation(unit, 8, 1);
    REQUIRE(a.size() == 2);
    CHECK(a.terms()[0].idx == unit.terms()[0].idx);
    CHECK(a.terms()[1].idx == unit.terms()[1].idx);
    CHECK(l.n_modules() == 1);
  }
  SECTION("closure over copies") {
    for (int c = 1; c <= 6; ++c) {
      auto [a, l] = replicate_translation(unit, 8, c);
      REQUIRE(classify_hoppings(a, l, 0.0).inter_terms.size() == static_cast<std::size_t>(2 * (c - 1)));
    }
  }
  CHECK_THROWS(replicate_translation(unit, 8, 0));
  const Ansatz wide(24, {ExcitationTerm::single(0, 0, 20, 0.1, 1.0)});
  CHECK_THROWS(replicate_translation(wide, 8, 2));
}
