#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gm2/mat2.hpp"
#include "gm2/pairs.hpp"
#include "gm2/rng.hpp"

using namespace gm2;

namespace {

template <class R>
Mat2<Poly<R>> random_matrix(Rng& rng, const R& ring, const VarSetPtr& vs, unsigned cap,
                            unsigned max_deg) {
  return Mat2<Poly<R>>(rng.poly(ring, vs, cap, max_deg), rng.poly(ring, vs, cap, max_deg),
                       rng.poly(ring, vs, cap, max_deg), rng.poly(ring, vs, cap, max_deg));
}

}  // namespace

TEST_CASE("cayley-hamilton residual vanishes identically") {
  auto g8q = make_generic8(RationalRing{}, 6);
  CHECK(cayley_hamilton_residual(g8q.x).is_zero());
  CHECK(cayley_hamilton_residual(g8q.x * g8q.y + g8q.y).is_zero());
  auto g8f = make_generic8(GF2{}, 6);
  CHECK(cayley_hamilton_residual(g8f.x).is_zero());
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    CHECK(cayley_hamilton_residual(random_matrix(rng, RationalRing{}, generic8(), 5, 2)).is_zero());
    CHECK(cayley_hamilton_residual(random_matrix(rng, GF2{}, pseudo4(), 5, 2)).is_zero());
    CHECK(cayley_hamilton_residual(random_matrix(rng, ZmodPrimePower(3, 3), pseudo4(), 5, 2))
              .is_zero());
  }
}

TEST_CASE("trace is linear and det is multiplicative") {
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    auto a = random_matrix(rng, RationalRing{}, generic8(), 4, 2);
    auto b = random_matrix(rng, RationalRing{}, generic8(), 4, 2);
    CHECK((a + b).trace() == a.trace() + b.trace());
    CHECK((a * b).det() == a.det() * b.det());
    CHECK((a * b).trace() == (b * a).trace());
    CHECK(a * a - a.scaled(a.trace()) + Mat2<QPoly>::scalar(a.det()) ==
          Mat2<QPoly>::zero(a.like()));
    CHECK(a * a.adjugate() == Mat2<QPoly>::scalar(a.det()));
  }
}

TEST_CASE("unit inverses and group laws") {
  auto P = make_generic8(RationalRing{}, 6);
  auto X = P.X();
  auto Y = P.Y();
  auto one = Unit<QPoly>::one(P.x.like());
  CHECK((X * X.inverse()).is_one());
  CHECK((X.inverse() * X).is_one());
  CHECK(((X * Y) * X).value() == (X * (Y * X)).value());
  CHECK((group_commutator(X, Y) * group_commutator(Y, X)).is_one());
  CHECK(group_commutator(X, X).is_one());
  CHECK(group_commutator(one, X).is_one());
  // Units reject matrices whose delta has a constant part.
  auto two = Mat2<QPoly>::identity(P.x.like()) + Mat2<QPoly>::identity(P.x.like());
  CHECK_THROWS_AS(Unit<QPoly>{two}, unit_error);
}

TEST_CASE("binomial powers realize integer powers and compose additively") {
  auto P = make_generic8(RationalRing{}, 5);
  auto X = P.X();
  auto Y = P.Y();
  auto g = X * Y * X.inverse();
  CHECK(g.pow(3).value() == (g * g * g).value());
  CHECK(g.pow(-2).value() == (g.inverse() * g.inverse()).value());
  CHECK(g.pow(0).is_one());
  CHECK((g.pow(7) * g.pow(-4)).value() == g.pow(3).value());
  // Rational exponents: (g^(1/2))^2 = g, and exponents add.
  auto h = pow_binomial(g, mpq_class(1, 2));
  CHECK((h * h).value() == g.value());
  CHECK(pow_binomial(g, mpq_class(-1)).value() == g.inverse().value());
  CHECK((pow_binomial(g, mpq_class(3, 2)) * pow_binomial(g, mpq_class(-1, 2))).value() ==
        g.value());
}

TEST_CASE("group commutator of generators has minimal component [x,y]") {
  auto P = make_generic8(RationalRing{}, 4);
  auto c = group_commutator(P.X(), P.Y());
  auto mc = min_component(c);
  REQUIRE(mc.has_value());
  CHECK(mc->first == 2);
  CHECK(mc->second == lie_bracket(P.x, P.y));
  CHECK(!min_component(Unit<QPoly>::one(P.x.like())).has_value());
}

TEST_CASE("exp and log are mutually inverse") {
  auto P = make_generic8(RationalRing{}, 5);
  auto ex = matrix_exp(P.x);
  CHECK(matrix_log(ex) == P.x);
  Rng rng(9);
  auto strip = [](const QPoly& f) {
    return f - QPoly::constant(f.ring(), f.vars(), f.cap(), f.constant_term());
  };
  int tested = 0;
  for (int i = 0; i < 20; ++i) {
    auto a = random_matrix(rng, RationalRing{}, generic8(), 5, 2);
    auto a2 = Mat2<QPoly>(strip(a.e11), strip(a.e12), strip(a.e21), strip(a.e22));
    if (!a2.min_degree()) continue;
    ++tested;
    auto e = matrix_exp(a2);
    CHECK(matrix_log(e) == a2);
    CHECK(min_component(e)->second == a2.homogeneous_component(*a2.min_degree()));
  }
  CHECK(tested >= 15);
}

TEST_CASE("log of the group commutator of exponentials to degree three") {
  // log[e^z, e^w] = [z,w] - 1/2 [z,w,z] - 1/2 [z,w,w] + (degree >= 4).
  auto P = make_generic8(RationalRing{}, 4);
  auto z = P.x;
  auto w = P.y;
  auto lhs = matrix_log(group_commutator(matrix_exp(z), matrix_exp(w)));
  auto zw = lie_bracket(z, w);
  auto half = QPoly::constant(RationalRing{}, generic8(), 4, mpq_class(1, 2));
  auto rhs = zw - lie_bracket(zw, z).scaled(half) - lie_bracket(zw, w).scaled(half);
  for (unsigned d = 0; d <= 3; ++d)
    CHECK(lhs.homogeneous_component(d) == rhs.homogeneous_component(d));
}

TEST_CASE("specialization commutes with evaluation") {
  auto G = make_generic8(RationalRing{}, 5);
  auto Pp = make_pseudo4(RationalRing{}, 5);
  auto cG = group_commutator(G.X(), G.Y()).value();
  auto cP = group_commutator(Pp.X(), Pp.Y()).value();
  CHECK(specialize(cG) == cP);
  auto bG = lie_bracket_left({G.x, G.y, G.x, G.x});
  auto bP = lie_bracket_left({Pp.x, Pp.y, Pp.x, Pp.x});
  CHECK(specialize(bG) == bP);
  CHECK(specialize(G.x.det()).is_zero());
}

TEST_CASE("trace coordinates specialize to the determinant-zero values") {
  auto G = make_generic8(RationalRing{}, 6);
  auto Pp = make_pseudo4(RationalRing{}, 6);
  auto cg = trace_coords(G);
  auto cp = trace_coords(Pp);
  CHECK(specialize(cg.alpha) == cp.alpha);
  CHECK(specialize(cg.beta) == cp.beta);
  CHECK(specialize(cg.gamma) == cp.gamma);
  auto tx = Pp.x.trace();
  auto ty = Pp.y.trace();
  auto txy = (Pp.x * Pp.y).trace();
  CHECK(cp.alpha == tx * tx);
  CHECK(cp.beta == Pp.scalar(2) * txy - tx * ty);
  CHECK(cp.gamma == ty * ty);
}

TEST_CASE("determinant-zero pair: squares collapse onto traces") {
  // x^2 = t(x) x, (xy)^2 = t(xy) xy, xyx = t(xy) x, [x,y]^2 central.
  auto Pq = make_pseudo4(RationalRing{}, 8);
  auto x = Pq.x;
  auto y = Pq.y;
  CHECK(x * x == x.scaled(x.trace()));
  CHECK(y * y == y.scaled(y.trace()));
  auto xy = x * y;
  CHECK(xy * xy == xy.scaled(xy.trace()));
  CHECK(x * y * x == x.scaled(xy.trace()));
  CHECK(y * x * y == y.scaled(xy.trace()));
  auto br = lie_bracket(x, y);
  auto txy = xy.trace();
  auto tx = x.trace();
  auto ty = y.trace();
  CHECK(br * br == Mat2<QPoly>::scalar(txy * txy - tx * ty * txy));
}
