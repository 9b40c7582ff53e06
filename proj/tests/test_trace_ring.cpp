#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <vector>

#include "gm2/linalg.hpp"
#include "gm2/pairs.hpp"
#include "gm2/rng.hpp"
#include "gm2/trace_ring.hpp"

using namespace gm2;

namespace {

TPoly random_tpoly(Rng& rng, unsigned cap, unsigned max_terms = 5) {
  F2Poly f = F2Poly::zero(GF2{}, sform4(), cap);
  unsigned n = static_cast<unsigned>(rng.uniform(0, long(max_terms)));
  for (unsigned i = 0; i < n; ++i) {
    Mono m;
    m.e[0] = static_cast<std::uint8_t>(rng.uniform(0, 3));
    m.e[1] = static_cast<std::uint8_t>(rng.uniform(0, 3));
    m.e[2] = static_cast<std::uint8_t>(rng.uniform(0, 2));
    m.e[3] = static_cast<std::uint8_t>(rng.uniform(0, 1));
    if (m.degree(*sform4()) <= cap) f.add_term(m, 1);
  }
  return TPoly::from_normal(f);
}

F2Poly random_trace3(Rng& rng, unsigned cap, unsigned max_terms = 5) {
  F2Poly f = F2Poly::zero(GF2{}, trace3(), cap);
  unsigned n = static_cast<unsigned>(rng.uniform(0, long(max_terms)));
  for (unsigned i = 0; i < n; ++i) {
    Mono m;
    m.e[0] = static_cast<std::uint8_t>(rng.uniform(0, 4));
    m.e[1] = static_cast<std::uint8_t>(rng.uniform(0, 4));
    m.e[2] = static_cast<std::uint8_t>(rng.uniform(0, 4));
    if (m.degree(*trace3()) <= cap) f.add_term(m, 1);
  }
  return f;
}

// Number of monomials tx^a ty^b txy^c of weighted degree exactly d.
unsigned free_slice_dim(unsigned d) {
  unsigned count = 0;
  for (unsigned c = 0; 2 * c <= d; ++c) count += d - 2 * c + 1;
  return count;
}

}  // namespace

TEST_CASE("generators, degrees and the rewriting rule") {
  const unsigned cap = 12;
  TPoly lam = TPoly::lambda(cap), tht = TPoly::theta(cap), vth = TPoly::vartheta(cap),
        del = TPoly::delta(cap);
  CHECK(*lam.max_degree() == 1);
  CHECK(*tht.max_degree() == 1);
  CHECK(*vth.max_degree() == 2);
  CHECK(*del.max_degree() == 4);

  CHECK(vth * vth == del + lam * tht * vth);

  F2Poly vth3 = F2Poly::variable(GF2{}, trace3(), cap, 2);
  F2Poly lam3 = F2Poly::variable(GF2{}, trace3(), cap, 0);
  F2Poly tht3 = F2Poly::variable(GF2{}, trace3(), cap, 1);
  CHECK(del.to_trace3() == vth3 * vth3 + lam3 * tht3 * vth3);

  CHECK(TPoly::one(cap).is_one());
  CHECK(TPoly::zero(cap).is_zero());
  CHECK_THROWS_AS(TPoly::from_normal(vth3), structural_error);
  F2Poly bad = F2Poly::monomial(GF2{}, sform4(), cap, Mono::var(3, 2), 1);
  CHECK_THROWS_AS(TPoly::from_normal(bad), structural_error);
  CHECK(TPoly::normalized(bad) == del + lam * tht * vth);
}

TEST_CASE("trace3 conversion is a ring isomorphism onto normal forms") {
  const unsigned cap = 14;
  Rng rng(2026);
  for (int k = 0; k < 200; ++k) {
    TPoly f = random_tpoly(rng, cap);
    CHECK(TPoly::from_trace3(f.to_trace3()) == f);
  }
  for (int k = 0; k < 200; ++k) {
    F2Poly f = random_trace3(rng, cap);
    CHECK(TPoly::from_trace3(f).to_trace3() == f);
  }
  for (int k = 0; k < 200; ++k) {
    TPoly f = random_tpoly(rng, cap), g = random_tpoly(rng, cap);
    CHECK((f * g).to_trace3() == f.to_trace3() * g.to_trace3());
    CHECK((f + g).to_trace3() == f.to_trace3() + g.to_trace3());
  }
}

TEST_CASE("ring laws and integrality through the rewriting") {
  const unsigned cap = 14;
  Rng rng(7);
  for (int k = 0; k < 150; ++k) {
    TPoly f = random_tpoly(rng, cap), g = random_tpoly(rng, cap), h = random_tpoly(rng, cap);
    CHECK(f * g == g * f);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
  }
  for (int k = 0; k < 100; ++k) {
    TPoly f = random_tpoly(rng, 8), g = random_tpoly(rng, 8);
    if (f.is_zero() || g.is_zero()) continue;
    TPoly p = f.lifted(16) * g.lifted(16);
    CHECK_FALSE(p.is_zero());
    CHECK(*p.max_degree() == *f.max_degree() + *g.max_degree());
  }
}

TEST_CASE("normal form gives the S-module coordinates") {
  const unsigned cap = 14;
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    TPoly f = random_tpoly(rng, cap);
    F2Poly s0 = f.s_even(), s1 = f.s_odd();
    for (const auto& [m, c] : s0.terms()) CHECK(m.e[3] == 0);
    for (const auto& [m, c] : s1.terms()) CHECK(m.e[3] == 0);
    TPoly rebuilt = TPoly::from_normal(s0) + TPoly::vartheta(cap) * TPoly::from_normal(s1);
    CHECK(rebuilt == f);
  }
}

TEST_CASE("the trace ring is free on the three traces") {
  const unsigned cap = 12;
  // All monomials tx^a ty^b txy^c with a+b+c <= 6: their base images must be
  // linearly independent over GF(2).
  std::vector<F2Poly> images;
  std::vector<unsigned> degrees;
  for (unsigned a = 0; a <= 6; ++a)
    for (unsigned b = 0; a + b <= 6; ++b)
      for (unsigned c = 0; a + b + c <= 6; ++c) {
        Mono m = Mono::var(0, static_cast<std::uint8_t>(a)) *
                 Mono::var(1, static_cast<std::uint8_t>(b)) *
                 Mono::var(2, static_cast<std::uint8_t>(c));
        F2Poly f = F2Poly::monomial(GF2{}, trace3(), cap, m, 1);
        images.push_back(trace3_to_base(f));
        degrees.push_back(a + b + 2 * c);
      }
  auto cmp = [](const Mono& x, const Mono& y) { return x.e < y.e; };
  std::map<Mono, std::size_t, decltype(cmp)> columns(cmp);
  for (const auto& img : images)
    for (const auto& [m, c] : img.terms()) columns.try_emplace(m, columns.size());
  Matrix<GF2> mat(GF2{}, images.size(), columns.size());
  for (std::size_t i = 0; i < images.size(); ++i)
    for (const auto& [m, c] : images[i].terms()) mat.at(i, columns.at(m)) = c;
  CHECK(rank(mat) == images.size());

  // Degree-d slice dimensions match the free commutative ring with weights
  // (1, 1, 2).
  std::map<unsigned, unsigned> by_degree;
  for (unsigned d : degrees) by_degree[d] += 1;
  for (unsigned d = 0; d <= 6; ++d) CHECK(by_degree.at(d) == free_slice_dim(d));
}

TEST_CASE("base images agree with the determinant-zero matrices") {
  const unsigned cap = 12;
  auto P = make_pseudo4(GF2{}, cap);
  TPoly lam = TPoly::lambda(cap), tht = TPoly::theta(cap), vth = TPoly::vartheta(cap),
        del = TPoly::delta(cap);
  CHECK(t_to_base(lam) == P.x.trace());
  CHECK(t_to_base(tht) == P.y.trace());
  CHECK(t_to_base(vth) == (P.x * P.y).trace());

  Mat2<F2Poly> u = lie_bracket(P.x, P.y);
  Mat2<F2Poly> usq = u * u;
  CHECK(usq.e12.is_zero());
  CHECK(usq.e21.is_zero());
  CHECK(usq.e11 == usq.e22);
  CHECK(t_to_base(del) == usq.e11);

  CHECK(t_to_base(lam * vth) == (P.x * P.y * P.x).trace());
  CHECK(t_to_base(vth * vth) == (P.x * P.y * P.x * P.y).trace());
  CHECK(t_to_base(del) == (u * P.y * P.x).trace());
}

TEST_CASE("base membership recognition") {
  const unsigned cap = 14;
  Rng rng(23);
  for (int k = 0; k < 200; ++k) {
    TPoly f = random_tpoly(rng, cap);
    CHECK(t_from_base(t_to_base(f)) == f);
  }
  auto var = [&](std::size_t i) { return F2Poly::variable(GF2{}, pseudo4(), cap, i); };
  CHECK_THROWS_AS(t_from_base(var(1)), domain_error);
  CHECK_THROWS_AS(t_from_base(var(0) * var(3)), domain_error);
  CHECK_THROWS_AS(t_from_base(var(1) * var(1) * var(3)), domain_error);

  F2Poly z = var(1) * var(3);
  TPoly zt = t_from_base(z * z * z);
  TPoly expect = TPoly::vartheta(cap) + TPoly::lambda(cap) * TPoly::theta(cap);
  CHECK(zt == expect * expect * expect);
}

TEST_CASE("tx-power filtration is a monomial grouping") {
  const unsigned cap = 14;
  Rng rng(31);
  for (int k = 0; k < 200; ++k) {
    TPoly f = random_tpoly(rng, cap);
    auto layers = f.lambda_layers();
    TPoly sum = TPoly::zero(cap);
    for (const auto& [n, part] : layers) {
      CHECK_FALSE(part.is_zero());
      CHECK(*part.lambda_order() == n);
      CHECK(part.lambda_unshift(n).lambda_free());
      CHECK(part.lambda_unshift(n).lambda_shift(n) == part);
      sum += part;
    }
    CHECK(sum == f);
    if (!f.is_zero()) {
      unsigned lo = *f.lambda_order();
      CHECK(f.in_lambda_power(lo));
      CHECK_FALSE(f.in_lambda_power(lo + 1));
    }
  }
  TPoly g = TPoly::lambda(cap) * TPoly::lambda(cap) * TPoly::lambda(cap) *
            (TPoly::theta(cap) + TPoly::vartheta(cap));
  CHECK(*g.lambda_order() == 3);
  CHECK(g.lambda_layers().size() == 1);
  CHECK_THROWS_AS(g.lambda_unshift(4), divisibility_error);
}

TEST_CASE("exact division") {
  const unsigned cap = 14;
  Rng rng(41);
  for (int k = 0; k < 150; ++k) {
    TPoly f = random_tpoly(rng, 6), g = random_tpoly(rng, 6);
    if (g.is_zero()) continue;
    TPoly fl = f.lifted(cap), gl = g.lifted(cap);
    CHECK(t_exact_divide(fl * gl, gl) == fl);
  }
  CHECK_THROWS_AS(t_exact_divide(TPoly::lambda(cap), TPoly::theta(cap)), divisibility_error);
  CHECK_THROWS_AS(
      t_exact_divide(TPoly::delta(cap), TPoly::lambda(cap) + TPoly::theta(cap)),
      divisibility_error);
}

TEST_CASE("component and cap handling") {
  const unsigned cap = 10;
  TPoly f = TPoly::lambda(cap) + TPoly::delta(cap) + TPoly::vartheta(cap) * TPoly::theta(cap);
  CHECK(f.homogeneous_component(1) == TPoly::lambda(cap));
  CHECK(f.homogeneous_component(3) == TPoly::vartheta(cap) * TPoly::theta(cap));
  CHECK(f.homogeneous_component(4) == TPoly::delta(cap));
  CHECK(f.truncated(3).lifted(cap) == TPoly::lambda(cap) + TPoly::vartheta(cap) * TPoly::theta(cap));
  CHECK(*f.min_degree() == 1);
  CHECK(*f.max_degree() == 4);
}
