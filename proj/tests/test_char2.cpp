#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "gm2/char2.hpp"
#include "gm2/rng.hpp"

using namespace gm2;

namespace {

TPoly tp_zero(unsigned cap) { return TPoly::zero(cap); }

TPoly random_coeff(Rng& rng, unsigned cap, unsigned max_deg, unsigned terms) {
  F2Poly f = F2Poly::zero(GF2{}, sform4(), cap);
  for (unsigned i = 0; i < terms; ++i) {
    Mono m;
    m.e[0] = static_cast<std::uint8_t>(rng.uniform(0, 3));
    m.e[1] = static_cast<std::uint8_t>(rng.uniform(0, 3));
    m.e[2] = static_cast<std::uint8_t>(rng.uniform(0, 1));
    m.e[3] = static_cast<std::uint8_t>(rng.uniform(0, 1));
    if (m.degree(*sform4()) <= max_deg) f.add_term(m, 1);
  }
  return TPoly::from_normal(f);
}

JElement random_j(Rng& rng, unsigned cap, unsigned max_deg) {
  return JElement{random_coeff(rng, cap, max_deg, 3), random_coeff(rng, cap, max_deg, 3),
                  random_coeff(rng, cap, max_deg, 3), random_coeff(rng, cap, max_deg, 3)};
}

JElement scaled_j(const JElement& e, const TPoly& f) {
  return JElement{f * e.a, f * e.b, f * e.c, f * e.d};
}

// Splits an arbitrary J element into homogeneous pieces by encoded degree.
std::vector<JElement> split_homog(const JElement& e) {
  unsigned cap = e.a.cap();
  std::vector<JElement> pieces;
  for (unsigned i = 3; i <= cap + 4; ++i) {
    TPoly a = i >= 3 && i - 3 <= cap ? e.a.homogeneous_component(i - 3) : tp_zero(cap);
    TPoly b = i >= 3 && i - 3 <= cap ? e.b.homogeneous_component(i - 3) : tp_zero(cap);
    TPoly c = i >= 4 && i - 4 <= cap ? e.c.homogeneous_component(i - 4) : tp_zero(cap);
    TPoly d = i >= 4 && i - 4 <= cap ? e.d.homogeneous_component(i - 4) : tp_zero(cap);
    JElement piece{a, b, c, d};
    if (!piece.is_zero()) pieces.push_back(piece);
  }
  return pieces;
}

std::optional<unsigned> level_of(const JElement& e) {
  return decompose_UVW(split_homog(e)).n_of();
}

}  // namespace

TEST_CASE("context construction matches the trace ring constants") {
  Char2Context ctx(12);
  CHECK(ctx.cap() == 12);
  CHECK(ctx.u == lie_bracket(ctx.pair.x, ctx.pair.y));
  CHECK(ctx.lam == ctx.pair.x.trace());
  CHECK(ctx.usq == t_to_base(TPoly::delta(12)));
  CHECK(t_from_base(ctx.vth) == TPoly::vartheta(12));
}

TEST_CASE("R coordinates: basis elements and the commutator") {
  Char2Context ctx(12);
  unsigned cap = ctx.cap();
  TPoly one = TPoly::one(cap), zero = tp_zero(cap);
  TPoly lam = TPoly::lambda(cap), tht = TPoly::theta(cap), vth = TPoly::vartheta(cap);

  RElement rx = to_R_coefficients(ctx.pair.x);
  CHECK(rx == RElement{zero, one, zero, zero});

  RElement ry = to_R_coefficients(ctx.pair.y);
  CHECK(ry == RElement{zero, zero, one, zero});

  RElement rxy = to_R_coefficients(ctx.pair.x * ctx.pair.y);
  CHECK(rxy == RElement{zero, zero, zero, one});

  RElement rone = to_R_coefficients(Mat2<F2Poly>::identity(ctx.pair.x.like()));
  CHECK(rone == RElement{one, zero, zero, zero});

  // [x,y] = (t(xy) + t(x)t(y)) 1 + t(y) x + t(x) y
  RElement ru = to_R_coefficients(ctx.u);
  CHECK(ru == RElement{vth + lam * tht, tht, lam, zero});
}

TEST_CASE("R coordinates: crafted non-members are rejected") {
  Char2Context ctx(12);
  F2Poly zero = F2Poly::zero(GF2{}, pseudo4(), 12);
  F2Poly one = F2Poly::one(GF2{}, pseudo4(), 12);

  Mat2<F2Poly> lower(zero, zero, one, zero);
  CHECK_THROWS_AS((void)to_R_coefficients(lower), domain_error);

  Mat2<F2Poly> corner(ctx.lam, zero, zero, zero);
  CHECK_THROWS_AS((void)to_R_coefficients(corner), domain_error);

  // in the span over the base ring, but the coefficient x12 is not a trace
  F2Poly x12 = F2Poly::variable(GF2{}, pseudo4(), 12, 1);
  CHECK_THROWS_AS((void)to_R_coefficients(ctx.pair.x.scaled(x12)), domain_error);
}

TEST_CASE("R coordinates: roundtrip on random elements") {
  Rng rng(41);
  unsigned cap = 14;
  for (int k = 0; k < 200; ++k) {
    RElement r{random_coeff(rng, cap, 10, 3), random_coeff(rng, cap, 10, 3),
               random_coeff(rng, cap, 10, 3), random_coeff(rng, cap, 10, 3)};
    RElement back = to_R_coefficients(r_value(r));
    CHECK(back == r);
  }
}

TEST_CASE("J coordinates: basis elements and products") {
  Char2Context ctx(12);
  unsigned cap = ctx.cap();
  TPoly one = TPoly::one(cap), zero = tp_zero(cap);
  TPoly lam = TPoly::lambda(cap), tht = TPoly::theta(cap);

  CHECK(to_J_coefficients(ctx.ux) == JElement{one, zero, zero, zero});
  CHECK(to_J_coefficients(ctx.uy) == JElement{zero, one, zero, zero});
  CHECK(to_J_coefficients(Mat2<F2Poly>::scalar(ctx.usq)) == JElement{zero, zero, one, zero});
  CHECK(to_J_coefficients(ctx.uxy) == JElement{zero, zero, zero, one});

  // x [x,y]y = t(x) [x,y]y + [x,y]xy
  CHECK(to_J_coefficients(ctx.pair.x * ctx.uy) == JElement{zero, lam, zero, one});

  // y [x,y]x = t(y) [x,y]x + [x,y]^2 + [x,y]xy
  Mat2<F2Poly> yux = ctx.pair.y * ctx.ux;
  CHECK(to_J_coefficients(yux) == JElement{tht, zero, one, one});
  CHECK(yux == ctx.ux.scaled(ctx.tht) + Mat2<F2Poly>::scalar(ctx.usq) + ctx.uxy);
}

TEST_CASE("J coordinates: non-members are rejected") {
  Char2Context ctx(12);
  CHECK_THROWS_AS((void)to_J_coefficients(ctx.pair.x), domain_error);
  CHECK_THROWS_AS((void)to_J_coefficients(Mat2<F2Poly>::identity(ctx.pair.x.like())),
                  domain_error);
  // the commutator itself is in R but outside the module span
  CHECK_THROWS_AS((void)to_J_coefficients(ctx.u), domain_error);
  CHECK_THROWS_AS((void)to_J_coefficients(ctx.pair.x.scaled(ctx.lam)), domain_error);
}

TEST_CASE("J coordinates: roundtrip on random elements") {
  Rng rng(42);
  unsigned cap = 14;
  for (int k = 0; k < 200; ++k) {
    JElement j = random_j(rng, cap, 8);
    JElement back = to_J_coefficients(j_value(j));
    CHECK(back == j);
  }
}

TEST_CASE("J ideal closure: the eight product rules and random products") {
  Char2Context ctx(16);
  ClosureReport report = j_ideal_closure_check(ctx, 100, 7);
  CHECK(report.all_passed);
  CHECK(report.rules.size() == 8);
  for (const auto& [name, ok] : report.rules) {
    INFO(name);
    CHECK(ok);
  }
  CHECK(report.random_products == 200);
}

TEST_CASE("UVW decomposition: pinned examples") {
  unsigned cap = 12;
  TPoly zero = tp_zero(cap);
  TPoly lam = TPoly::lambda(cap), tht = TPoly::theta(cap), vth = TPoly::vartheta(cap);

  SUBCASE("t(x)^3 [x,y]x is a single U block at (3, 6)") {
    TPoly l3 = lam * lam * lam;
    JDecomposition dec = decompose_UVW({JElement{l3, zero, zero, zero}});
    REQUIRE(dec.blocks.size() == 1);
    const auto& [key, block] = *dec.blocks.begin();
    CHECK(key == std::make_pair(3u, 6u));
    CHECK(block.ux == l3);
    CHECK(block.uy.is_zero());
    CHECK(block.v.is_zero());
    CHECK(block.w.is_zero());
  }

  SUBCASE("t(x)^3 t(xy) [x,y]^2 is a single V block at (3, 9)") {
    TPoly c = lam * lam * lam * vth;
    JDecomposition dec = decompose_UVW({JElement{zero, zero, c, zero}});
    REQUIRE(dec.blocks.size() == 1);
    const auto& [key, block] = *dec.blocks.begin();
    CHECK(key == std::make_pair(3u, 9u));
    CHECK(block.v == c);
    CHECK(block.u_zero());
    CHECK(block.w.is_zero());
  }

  SUBCASE("t(x)^2 t(y) [x,y]x is a single U block at (2, 6)") {
    TPoly c = lam * lam * tht;
    JDecomposition dec = decompose_UVW({JElement{c, zero, zero, zero}});
    REQUIRE(dec.blocks.size() == 1);
    const auto& [key, block] = *dec.blocks.begin();
    CHECK(key == std::make_pair(2u, 6u));
    CHECK(block.ux == c);
  }

  SUBCASE("mixed element splits by the power of t(x)") {
    // t(x)^2 [x,y]x + t(x)^5 [x,y]x + t(x)^3 [x,y]xy, all of encoded degree i
    // only when homogeneous; use separate homogeneous pieces
    TPoly a1 = lam * lam;                  // degree 2, level 2
    TPoly a2 = lam * lam * lam * lam * lam;  // degree 5, level 5
    JDecomposition dec =
        decompose_UVW({JElement{a1, zero, zero, zero}, JElement{a2, zero, zero, zero}});
    CHECK(dec.blocks.size() == 2);
    CHECK(dec.blocks.count({2, 5}) == 1);
    CHECK(dec.blocks.count({5, 8}) == 1);
    CHECK(dec.n_of() == 2);
    CHECK(dec.nbar() == 2);
    CHECK(dec.ibar() == 5);
  }
}

TEST_CASE("UVW decomposition: homogeneity is enforced") {
  unsigned cap = 12;
  TPoly zero = tp_zero(cap);
  TPoly lam = TPoly::lambda(cap);
  TPoly mixed = lam + lam * lam;  // degrees 1 and 2
  CHECK_THROWS_AS((void)j_homogeneous_degree(JElement{mixed, zero, zero, zero}),
                  domain_error);
  // a of degree 1 (encoded degree 4) vs c of degree 1 (encoded degree 5)
  CHECK_THROWS_AS((void)j_homogeneous_degree(JElement{lam, zero, lam, zero}),
                  domain_error);
  CHECK(!j_homogeneous_degree(JElement{zero, zero, zero, zero}).has_value());
  CHECK(j_homogeneous_degree(JElement{lam, zero, zero, zero}) == 4u);
}

TEST_CASE("UVW decomposition: recomposition and degree bounds on random elements") {
  Rng rng(43);
  unsigned cap = 14;
  for (int k = 0; k < 60; ++k) {
    JElement e = random_j(rng, cap, 9);
    auto pieces = split_homog(e);
    JDecomposition dec = decompose_UVW(pieces);

    for (const auto& [key, block] : dec.blocks) {
      auto [n, i] = key;
      if (!block.u_zero()) CHECK(i >= n + 3);
      if (!block.v.is_zero() || !block.w.is_zero()) CHECK(i >= n + 4);
    }

    // recomposition: per-degree sums reproduce the homogeneous pieces
    for (const auto& piece : pieces) {
      unsigned deg = *j_homogeneous_degree(piece);
      CHECK(dec.recomposed(deg) == piece);
    }

    auto n_of = dec.n_of();
    auto nbar = dec.nbar();
    auto ibar = dec.ibar();
    if (nbar) {
      CHECK(*n_of <= *nbar);
      CHECK(*nbar <= *ibar);
    }
  }
}

TEST_CASE("level filtration equivalences under t(x), t(y), [x,y]^2") {
  Rng rng(44);
  unsigned cap = 14;
  unsigned tested = 0;
  for (int k = 0; k < 200; ++k) {
    JElement e = random_j(rng, cap, 8);
    auto n0 = level_of(e);
    if (!n0) continue;
    ++tested;
    TPoly lam = TPoly::lambda(cap), tht = TPoly::theta(cap);
    TPoly dsq = TPoly::delta(cap);
    CHECK(level_of(scaled_j(e, lam)) == *n0 + 1);
    CHECK(level_of(scaled_j(e, tht)) == *n0);
    CHECK(level_of(scaled_j(e, dsq)) == *n0);
  }
  CHECK(tested >= 150);
}

TEST_CASE("trace of a J element sees only the [x,y]xy coordinate") {
  Rng rng(45);
  unsigned cap = 14;
  for (int k = 0; k < 100; ++k) {
    JElement e = random_j(rng, cap, 8);
    CHECK(e.trace().is_zero() == e.d.is_zero());
    CHECK(j_value(e).trace() == t_to_base(e.trace()));

    JElement traceless{e.a, e.b, e.c, tp_zero(cap)};
    CHECK(traceless.trace().is_zero());
    CHECK(j_value(traceless).trace().is_zero());
  }
}

TEST_CASE("unit decomposition: second-derived words lie in the ideal") {
  Char2Context ctx(16);
  auto X = ctx.X(), Y = ctx.Y();
  auto c = group_commutator(X, Y);
  auto w = group_commutator(c, group_commutator(c, X));

  JDecomposition dec = decompose_unit(w);
  CHECK(dec.n_of() == 1);
  CHECK_FALSE(dec.in_level(3));

  // first-derived elements need not decompose: [X,Y] - 1 has the degree-2
  // term [x,y], which is outside the module span
  CHECK_THROWS_AS((void)decompose_unit(c), domain_error);
}

TEST_CASE("unit decomposition: recomposition matches the unit") {
  Char2Context ctx(16);
  auto X = ctx.X(), Y = ctx.Y();
  auto c = group_commutator(X, Y);
  auto w = group_commutator(c, group_commutator(c, X));
  auto g = phi_x(ctx, w);

  Mat2<F2Poly> d = g.delta();
  JDecomposition dec = decompose_unit(g);
  CHECK(dec.cap == 16);
  for (unsigned i = *d.min_degree(); i <= 16; ++i) {
    Mat2<F2Poly> piece = d.homogeneous_component(i);
    JElement back = dec.recomposed(i);
    if (piece.is_zero())
      CHECK(back.is_zero());
    else
      CHECK(j_value(back) == piece);
  }
}

TEST_CASE("goodness certificate on transported second-derived elements") {
  Char2Context ctx(20);
  auto X = ctx.X(), Y = ctx.Y();
  auto c = group_commutator(X, Y);
  auto w = group_commutator(c, group_commutator(c, X));

  auto h = phi_x(ctx, w);
  GoodnessCertificate cert = invariants_of(h);
  CHECK(cert.n_of == 4);
  REQUIRE(cert.nbar);
  CHECK(*cert.nbar == 5);
  REQUIRE(cert.ibar);
  CHECK(*cert.ibar == 11);
  CHECK(cert.breve_member);
  CHECK(cert.good);
  CHECK(cert.n_of <= *cert.nbar);
  CHECK(*cert.nbar <= *cert.ibar);
  REQUIRE(cert.min_x);
  CHECK(cert.min_x->n == 5);
  CHECK(cert.min_x->i == 11);
  bool min_zero = cert.min_x->cx.is_zero() && cert.min_x->cy.is_zero();
  CHECK_FALSE(min_zero);

  // a second transport: level jumps by at least 3, nbar within one of n
  auto g = phi_x(ctx, h);
  GoodnessCertificate cert2 = invariants_of(g);
  CHECK(cert2.n_of >= cert.n_of + 3);
  REQUIRE(cert2.nbar);
  CHECK(*cert2.nbar <= cert2.n_of + 1);
  CHECK(cert2.good);
}

TEST_CASE("goodness certificate rejects the trivial unit") {
  Char2Context ctx(12);
  CHECK_THROWS_AS((void)invariants_of(Unit<F2Poly>::one(ctx.pair.x.like())), domain_error);
}

TEST_CASE("transport operators: closed forms") {
  Char2Context ctx(12);
  auto X = ctx.X(), Y = ctx.Y();
  Mat2<F2Poly> id = Mat2<F2Poly>::identity(ctx.pair.x.like());

  F2Poly l3 = ctx.lam * ctx.lam * ctx.lam;
  CHECK(X.pow(4).value() == id + ctx.pair.x.scaled(l3));
  CHECK(X.pow(2).value() == id + ctx.pair.x.scaled(ctx.lam));

  // ([1+x,1+y])^2 - 1 starts with [x,y]^2 in degree 4
  auto c = group_commutator(X, Y);
  Mat2<F2Poly> sq = (c * c).delta();
  CHECK(sq.min_degree() == 4u);
  CHECK(sq.homogeneous_component(4) == Mat2<F2Poly>::scalar(ctx.usq));

  Unit<F2Poly> one = Unit<F2Poly>::one(ctx.pair.x.like());
  CHECK(phi_x(ctx, one).is_one());
  CHECK(phi_y(ctx, one).is_one());
  CHECK(psi(ctx, one).is_one());
}

TEST_CASE("breve recipe lands in the expected level") {
  Char2Context ctx(16);
  auto c = group_commutator(ctx.X(), ctx.Y());

  for (unsigned r : {1u, 2u}) {
    auto g = breve_recipe(ctx, c, r);
    REQUIRE_FALSE(g.is_one());
    JDecomposition dec = decompose_unit(g);
    CHECK(*dec.n_of() >= (1u << r));
  }
}

TEST_CASE("transport report on a generated catalog") {
  Char2Context ctx(22);
  CatalogOptions opts;
  opts.count = 8;
  opts.seed = 5;
  auto catalog = good_catalog(ctx, opts);
  REQUIRE(catalog.size() == 8);
  for (const auto& g : catalog) {
    GoodnessCertificate cert = invariants_of(g);
    CHECK(cert.good);
    CHECK(*cert.ibar + 8 <= ctx.cap());
  }

  TransportReport report = verify_transport(ctx, catalog);
  CHECK(report.all_passed);
  CHECK(report.elements == 8);
  CHECK(report.pairs + report.excluded_pairs == 8 * 7 / 2);
  CHECK(report.pairs >= 1);
  // three operators, three checks each, plus three checks per valid pair
  CHECK(report.checks.size() == 8 * 9 + report.pairs * 3);
  for (const auto& chk : report.checks) {
    INFO(chk.name, " ", chk.detail);
    CHECK(chk.passed);
  }
}

TEST_CASE("transport preconditions are enforced") {
  Char2Context ctx(16);
  auto X = ctx.X(), Y = ctx.Y();
  auto c = group_commutator(X, Y);
  auto w = group_commutator(c, group_commutator(c, X));

  // w is not good (terms below level 3)
  CHECK_THROWS_AS((void)verify_transport(ctx, {w}), domain_error);

  // phi_x(w) is good with ibar = 11, but 11 + 8 exceeds cap 16
  auto h = phi_x(ctx, w);
  CHECK(invariants_of(h).good);
  CHECK_THROWS_AS((void)verify_transport(ctx, {h}), domain_error);
}

TEST_CASE("commutator shape checks") {
  Char2Context ctx(16);
  auto X = ctx.X(), Y = ctx.Y();
  auto c = group_commutator(X, Y);

  SUBCASE("first-derived words have the 1 + [x,y](series in R) shape") {
    ShapeReport rep = commutator_shape_check(ctx, c, false);
    CHECK(rep.commutator_shape);
    CHECK(rep.failure.empty());

    HallBasis basis(4);
    GroupWord word = parse_generator_word(basis, "X Y X^-1 Y^-1");
    ShapeReport rep2 = commutator_shape_check_word(ctx, basis, word, false);
    CHECK(rep2.commutator_shape);

    auto mixed = group_commutator(X * Y, Y.inverse());
    CHECK(commutator_shape_check(ctx, mixed, false).commutator_shape);
  }

  SUBCASE("non-derived elements fail with a recorded reason") {
    ShapeReport rep = commutator_shape_check(ctx, X, false);
    CHECK_FALSE(rep.commutator_shape);
    CHECK_FALSE(rep.failure.empty());
  }

  SUBCASE("second-derived words decompose term by term") {
    auto w = group_commutator(c, group_commutator(c, X));
    ShapeReport rep = commutator_shape_check(ctx, w, true);
    CHECK(rep.commutator_shape);
    CHECK(rep.second_derived_in_J);
    CHECK(rep.n_of == 1u);
    CHECK_FALSE(rep.breve_member);
  }

  SUBCASE("the doubling recipe lands in a deep level") {
    auto g = breve_recipe(ctx, c, 2);
    ShapeReport rep = commutator_shape_check(ctx, g, true);
    CHECK(rep.commutator_shape);
    CHECK(rep.second_derived_in_J);
    CHECK(*rep.n_of >= 4);
    CHECK(rep.breve_member);
  }
}
