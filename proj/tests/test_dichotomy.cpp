#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "doctest.h"
#include "gm2/dichotomy.hpp"
#include "gm2/hall.hpp"
#include "gm2/linalg.hpp"
#include "gm2/pairs.hpp"

using namespace gm2;

namespace {

mpq_class q(long num, long den = 1) { return mpq_class(num, den); }

std::vector<mpq_class> coords_of(const TorsionWitness& w) { return w.coords; }

}  // namespace

TEST_CASE("rank table at p = 3 matches the module ranks") {
  auto rows = rank_table(3, 10);
  REQUIRE(rows.size() == 10);

  const unsigned long expect_l2[10] = {2, 1, 2, 3, 6, 9, 18, 30, 56, 99};
  const unsigned long expect_m[10] = {2, 1, 2, 3, 6, 6, 12, 10, 20, 15};
  for (unsigned i = 0; i < 10; ++i) {
    CHECK(rows[i].n == i + 1);
    CHECK(rows[i].p == 3);
    CHECK(rows[i].l2 == expect_l2[i]);
    CHECK(rows[i].m == expect_m[i]);
    CHECK(rows[i].omega_lower == expect_m[i]);
    CHECK(rows[i].omega_lower <= rows[i].l2);
    CHECK(!rows[i].reduction_rank.has_value());
  }
}

TEST_CASE("rank table low degrees agree with the free Lie ranks at both primes") {
  for (unsigned long p : {2ul, 3ul}) {
    auto rows = rank_table(p, 5);
    REQUIRE(rows.size() == 5);
    for (const auto& row : rows) CHECK(row.omega_lower == row.l2);
  }
}

TEST_CASE("rank table at p = 2 carries the reduction diagnostic") {
  auto rows = rank_table(2, 6);
  REQUIRE(rows.size() == 6);
  const unsigned long expect_red[6] = {2, 1, 2, 3, 4, 5};
  for (unsigned i = 0; i < 6; ++i) {
    REQUIRE(rows[i].reduction_rank.has_value());
    CHECK(*rows[i].reduction_rank == expect_red[i]);
    CHECK(*rows[i].reduction_rank <= rows[i].omega_lower);
  }
  // The mod-2 reduction rank drops strictly below the rational rank from
  // degree five on; the rational rank is the p-independent lower bound.
  CHECK(*rows[4].reduction_rank == 4);
  CHECK(rows[4].omega_lower == 6);
}

TEST_CASE("rank table exhibits the degree-six kernel") {
  auto rows = rank_table(3, 6);
  const auto& row = rows.back();
  CHECK(row.l2 == 9);
  CHECK(row.m == 6);
  CHECK(row.omega_lower == 6);

  // The kernel of the weight-6 span has dimension 3: the three letters whose
  // group images only start in degree seven.
  HallBasis basis(6);
  LieContext ctx = LieContext::pseudo(7);
  HallGroupEval<QPoly> group(basis, ctx.pair().X(), ctx.pair().Y());
  unsigned deep = 0;
  for (int id : basis.at_weight(6)) {
    auto mc = min_component(group.at(id));
    REQUIRE(mc.has_value());
    if (mc->first > 6) ++deep;
  }
  CHECK(deep == 3);
}

TEST_CASE("rank table argument validation") {
  CHECK_THROWS_AS(rank_table(4, 5), range_error);
  CHECK_THROWS_AS(rank_table(3, 0), range_error);
  auto single = rank_table(3, 1);
  REQUIRE(single.size() == 1);
  CHECK(single[0].l2 == 2);
  CHECK(single[0].m == 2);
  CHECK(single[0].omega_lower == 2);
}

TEST_CASE("torsion witnesses reproduce the pinned coordinates") {
  auto ws = torsion_witnesses(8);
  REQUIRE(ws.size() == 3);

  for (const auto& w : ws) {
    CHECK(w.min_degree == 7);
    CHECK(w.coords.size() == 12);
    CHECK(w.matches_closed_form);
    CHECK(w.min_valuation == -1);
    CHECK(w.doubled_integral);
    CHECK(w.bch_agrees);
    CHECK(w.log_agrees);
  }

  CHECK(ws[0].word == "[1+x,1+y,1+x,1+x,[1+x,1+y]]");
  CHECK(ws[1].word == "[1+x,1+y,1+x,1+y,[1+x,1+y]]");
  CHECK(ws[2].word == "[1+x,1+y,1+y,1+y,[1+x,1+y]]");

  // Exact coordinates on the twelve-element free basis, first the [x,y,x]
  // block, then the [x,y,y] block, monomials ordered alpha^2, alpha beta,
  // alpha gamma, beta^2, beta gamma, gamma^2.
  std::vector<mpq_class> c1 = {0, 1, q(-1, 2), q(1, 2), 0, 0, -1, 0, 0, 0, 0, 0};
  std::vector<mpq_class> c2 = {0, 0, 1, q(-1, 2), q(1, 2), 0, 0, q(-1, 2), 0, q(-1, 2), 0, 0};
  std::vector<mpq_class> c3 = {0, 0, 0, 0, 0, 1, 0, 0, q(1, 2), q(-1, 2), -1, 0};
  CHECK(coords_of(ws[0]) == c1);
  CHECK(coords_of(ws[1]) == c2);
  CHECK(coords_of(ws[2]) == c3);

  // The half-integral parts sit exactly where the closed forms put them.
  CHECK(ws[0].closed_form[2] == q(-1, 2));
  CHECK(ws[0].closed_form[3] == q(1, 2));
  CHECK(ws[2].closed_form[8] == q(-1, 2));
  CHECK(ws[2].closed_form[9] == q(1, 2));
}

TEST_CASE("torsion witnesses are stable under a larger cap") {
  auto small = torsion_witnesses(8);
  auto large = torsion_witnesses(9);
  REQUIRE(small.size() == 3);
  REQUIRE(large.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(small[i].coords == large[i].coords);
}

TEST_CASE("torsion witnesses reject a small cap") {
  CHECK_THROWS_AS(torsion_witnesses(7), range_error);
}

TEST_CASE("torsion group check certifies rank three") {
  auto ws = torsion_witnesses(8);
  auto report = torsion_group_check(ws);
  CHECK(report.all_order_two);
  CHECK(report.closed_forms_match);
  CHECK(report.bch_agrees);
  CHECK(report.gf2_rank == 3);
  CHECK(report.torsion_rank_three);
  REQUIRE(report.witnesses.size() == 3);
}

TEST_CASE("torsion group check validates its input") {
  auto ws = torsion_witnesses(8);
  auto two = std::vector<TorsionWitness>(ws.begin(), ws.begin() + 2);
  CHECK_THROWS_AS(torsion_group_check(two), range_error);
}

TEST_CASE("minimal roundtrip holds at the pinned degrees") {
  for (unsigned n : {2u, 4u, 5u, 6u, 7u, 8u, 9u}) {
    auto report = prop_minimal_roundtrip(n, 40, 7);
    CHECK(report.passed);
    CHECK(report.family_integral == report.family_checked);
    CHECK(report.decompositions_integral == report.decompositions);
    CHECK(report.family_checked == 40);
    CHECK(report.decompositions == 40);
  }
}

TEST_CASE("minimal roundtrip pinned examples") {
  LieContext ctx = LieContext::pseudo(8);

  auto fvar = [](unsigned cap, std::size_t i) {
    return QPoly::variable(RationalRing{}, abc3(), cap, i);
  };
  auto integral = [](const Mat2<QPoly>& m) {
    const QPoly* entries[4] = {&m.e11, &m.e12, &m.e21, &m.e22};
    for (const auto* e : entries)
      for (const auto& [mono, c] : e->terms())
        if (c.get_den() != 1) return false;
    return true;
  };

  SUBCASE("half of the mixed generator has integer entries") {
    LieCoordinates c(5, true, 1);
    c.odd_xyx = fvar(1, 1).scaled(q(1, 2));
    c.odd_xyy = fvar(1, 0).scaled(q(1, 2));
    CHECK(integral(from_lie_coordinates(ctx, c)));
  }

  SUBCASE("the degree-four invariant times the bracket has integer entries") {
    LieCoordinates c(6, false, 2);
    QPoly a = fvar(2, 0), b = fvar(2, 1), g = fvar(2, 2);
    c.even_coeff = (b * b - a * g).scaled(q(1, 4));
    auto m = from_lie_coordinates(ctx, c);
    CHECK(integral(m));
    auto membership = L_intersect_A_membership(ctx, m, 6);
    CHECK(membership.member);
  }

  SUBCASE("half the bracket is rejected") {
    LieCoordinates c(2, false, 0);
    c.even_coeff = QPoly::constant(RationalRing{}, abc3(), 0, q(1, 2));
    auto membership = L_intersect_A_membership(ctx, from_lie_coordinates(ctx, c), 2);
    CHECK(!membership.member);
  }
}

TEST_CASE("minimal roundtrip argument validation") {
  CHECK_THROWS_AS(prop_minimal_roundtrip(1, 5), range_error);
  CHECK_THROWS_AS(prop_minimal_roundtrip(6, 0), range_error);
}

TEST_CASE("minimal roundtrip is deterministic for a fixed seed") {
  auto a = prop_minimal_roundtrip(7, 25, 42);
  auto b = prop_minimal_roundtrip(7, 25, 42);
  CHECK(a.family_integral == b.family_integral);
  CHECK(a.decompositions_integral == b.decompositions_integral);
  CHECK(a.passed == b.passed);
}
