#include <gm2/dichotomy.hpp>

#include <gm2/hall.hpp>
#include <gm2/linalg.hpp>
#include <gm2/pairs.hpp>

#include <algorithm>
#include <random>
#include <utility>

namespace gm2 {

namespace {

bool is_prime(unsigned long p) {
  mpz_class z(static_cast<long>(p));
  return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

QPoly formal_var(unsigned cap, std::size_t idx) {
  return QPoly::variable(RationalRing{}, abc3(), cap, idx);
}

QPoly formal_const(unsigned cap, const mpq_class& c) {
  return QPoly::constant(RationalRing{}, abc3(), cap, c);
}

QPoly formal_delta(unsigned cap) {
  QPoly a = formal_var(cap, 0), b = formal_var(cap, 1), c = formal_var(cap, 2);
  return (b * b - a * c).scaled(mpq_class(1, 4));
}

long valuation2(const mpq_class& q) {
  mpz_class tmp;
  long vn = static_cast<long>(
      mpz_remove(tmp.get_mpz_t(), mpq_class(q).get_num_mpz_t(), mpz_class(2).get_mpz_t()));
  long vd = static_cast<long>(
      mpz_remove(tmp.get_mpz_t(), mpq_class(q).get_den_mpz_t(), mpz_class(2).get_mpz_t()));
  return vn - vd;
}

bool integer_entries(const Mat2<QPoly>& m) {
  const QPoly* entries[4] = {&m.e11, &m.e12, &m.e21, &m.e22};
  for (const auto* e : entries)
    for (const auto& [mono, c] : e->terms())
      if (c.get_den() != 1) return false;
  return true;
}

bool mats_equal(const Mat2<QPoly>& a, const Mat2<QPoly>& b) {
  Mat2<QPoly> d = a;
  d.e11 -= b.e11;
  d.e12 -= b.e12;
  d.e21 -= b.e21;
  d.e22 -= b.e22;
  bool zero = d.e11.is_zero() && d.e12.is_zero();
  zero = zero && d.e21.is_zero() && d.e22.is_zero();
  return zero;
}

// The three witness words, nested left to right with the bracket of the two
// generator images appended as the last argument.
std::vector<Unit<QPoly>> witness_units(const Unit<QPoly>& gx, const Unit<QPoly>& gy) {
  Unit<QPoly> c = group_commutator(gx, gy);
  std::vector<Unit<QPoly>> out;
  out.push_back(group_commutator(group_commutator(group_commutator(c, gx), gx), c));
  out.push_back(group_commutator(group_commutator(group_commutator(c, gx), gy), c));
  out.push_back(group_commutator(group_commutator(group_commutator(c, gy), gy), c));
  return out;
}

std::vector<std::vector<mpq_class>> witness_closed_forms() {
  // Index layout: the six degree-2 monomials in alpha, beta, gamma in the
  // fixed monomial order, first against [x,y,x], then against [x,y,y].
  std::vector<std::vector<mpq_class>> closed(3, std::vector<mpq_class>(12, 0));
  const mpq_class half(1, 2);
  closed[0][2] = -half;  // alpha gamma [x,y,x]
  closed[0][3] = half;   // beta^2 [x,y,x]
  closed[1][3] = half;
  closed[1][4] = half;  // beta gamma [x,y,x]
  closed[1][7] = half;  // alpha beta [x,y,y]
  closed[1][9] = half;  // beta^2 [x,y,y]
  closed[2][8] = -half;
  closed[2][9] = half;
  return closed;
}

Mat2<QPoly> coordinates_to_matrix(const LieContext& ctx, const std::vector<mpq_class>& v) {
  LieCoordinates c(7, true, 2);
  auto monos = abc_monomials(2);
  for (std::size_t j = 0; j < monos.size(); ++j) {
    c.odd_xyx += QPoly::monomial(RationalRing{}, abc3(), 2, monos[j], v[j]);
    c.odd_xyy += QPoly::monomial(RationalRing{}, abc3(), 2, monos[j], v[j + monos.size()]);
  }
  return from_lie_coordinates(ctx, c);
}

}  // namespace

std::vector<RankRow> rank_table(unsigned long p, unsigned n_max) {
  if (!is_prime(p)) throw range_error("rank_table: p must be prime");
  if (n_max < 1) throw range_error("rank_table: n_max must be at least 1");
  HallBasis basis(n_max);
  LieContext ctx = LieContext::pseudo(std::max(n_max + 1, 4u));
  HallGroupEval<QPoly> group(basis, ctx.pair().X(), ctx.pair().Y());

  std::vector<RankRow> rows;
  for (unsigned n = 1; n <= n_max; ++n) {
    std::vector<Mat2<QPoly>> vecs;
    for (int id : basis.at_weight(n)) vecs.push_back(group.at(id).delta().homogeneous_component(n));
    RankRow row;
    row.n = n;
    row.l2 = witt_l2(n);
    row.m = n >= 2 ? zubkov_m(n) : 2;
    row.omega_lower = rank_of_span(vecs);
    row.p = p;
    if (p == 2) row.reduction_rank = rank_of_span_mod_p(vecs, 2);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<TorsionWitness> torsion_witnesses(unsigned cap) {
  if (cap < 8) throw range_error("torsion_witnesses: cap must be at least 8");
  LieContext ctx = LieContext::pseudo(cap);
  const auto& pair = ctx.pair();

  auto direct = witness_units(pair.X(), pair.Y());
  auto exps = witness_units(matrix_exp(pair.x), matrix_exp(pair.y));
  auto closed = witness_closed_forms();
  const char* names[3] = {
      "[1+x,1+y,1+x,1+x,[1+x,1+y]]",
      "[1+x,1+y,1+x,1+y,[1+x,1+y]]",
      "[1+x,1+y,1+y,1+y,[1+x,1+y]]",
  };

  std::vector<TorsionWitness> out;
  for (std::size_t i = 0; i < direct.size(); ++i) {
    auto mc = min_component(direct[i]);
    if (!mc || mc->first != 7)
      throw domain_error("torsion_witnesses: expected a degree-7 minimal component");
    auto lc = lie_coordinates(ctx, mc->second, 7);
    if (!lc)
      throw domain_error("torsion_witnesses: minimal component is outside the graded module");

    TorsionWitness w(mc->second);
    w.word = names[i];
    w.min_degree = mc->first;
    w.coords = lc->basis_vector();
    w.closed_form = closed[i];

    bool integral_diff = true;
    long min_val = 0;
    bool doubled = true;
    for (std::size_t j = 0; j < w.coords.size(); ++j) {
      if (!padic_integral(w.coords[j] - w.closed_form[j], 2)) integral_diff = false;
      if (w.coords[j] != 0) min_val = std::min(min_val, valuation2(w.coords[j]));
      if (!padic_integral(mpq_class(2) * w.coords[j], 2)) doubled = false;
    }
    w.min_valuation = min_val;
    w.doubled_integral = doubled;

    Mat2<QPoly> diff = w.min7;
    Mat2<QPoly> cm = coordinates_to_matrix(ctx, w.closed_form);
    diff.e11 -= cm.e11;
    diff.e12 -= cm.e12;
    diff.e21 -= cm.e21;
    diff.e22 -= cm.e22;
    auto membership = L_intersect_A_membership(ctx, diff, 7);
    w.matches_closed_form = integral_diff && membership.member;

    auto me = min_component(exps[i]);
    bool same_degree = me && me->first == mc->first;
    w.bch_agrees = same_degree && mats_equal(me->second, mc->second);
    w.log_agrees = mats_equal(matrix_log(direct[i]).homogeneous_component(7), mc->second);
    out.push_back(std::move(w));
  }
  return out;
}

TorsionReport torsion_group_check(const std::vector<TorsionWitness>& witnesses) {
  if (witnesses.size() != 3)
    throw range_error("torsion_group_check: expected exactly three witnesses");
  for (const auto& w : witnesses)
    if (w.coords.size() != 12)
      throw range_error("torsion_group_check: witness coordinates must have twelve entries");

  TorsionReport report;
  report.witnesses = witnesses;
  report.all_order_two = true;
  report.closed_forms_match = true;
  report.bch_agrees = true;
  for (const auto& w : witnesses) {
    bool order_two = w.min_valuation == -1 && w.doubled_integral;
    report.all_order_two = report.all_order_two && order_two;
    report.closed_forms_match = report.closed_forms_match && w.matches_closed_form;
    bool cross = w.bch_agrees && w.log_agrees;
    report.bch_agrees = report.bch_agrees && cross;
  }

  Matrix<GF2> classes(GF2{}, witnesses.size(), 12);
  for (std::size_t i = 0; i < witnesses.size(); ++i)
    for (std::size_t j = 0; j < 12; ++j) {
      mpq_class doubled = mpq_class(2) * witnesses[i].coords[j];
      if (!padic_integral(doubled, 2))
        throw domain_error("torsion_group_check: witness coordinates are not half-integral");
      classes.at(i, j) = static_cast<std::uint8_t>(mpz_odd_p(doubled.get_num_mpz_t()) ? 1 : 0);
    }
  report.gf2_rank = rank(classes);
  report.torsion_rank_three = report.gf2_rank == 3;
  return report;
}

RoundtripReport prop_minimal_roundtrip(unsigned n, unsigned trials, std::uint64_t seed) {
  if (n < 2) throw range_error("prop_minimal_roundtrip: degree must be at least 2");
  if (trials == 0) throw range_error("prop_minimal_roundtrip: trials must be positive");
  LieContext ctx = LieContext::pseudo(std::max(n + 1, 4u));
  std::mt19937_64 rng(seed);

  const bool odd = (n % 2) != 0;
  const unsigned d = odd ? (n - 3) / 2 : (n - 2) / 2;
  auto monos = abc_monomials(d);

  // Generators of the lattice component, given as pairs of formal coefficient
  // polynomials against the frame brackets, with their formal degrees.
  struct Generator {
    unsigned formal_degree;
    QPoly first;
    QPoly second;  // unused for even n
  };
  std::vector<Generator> gens;
  const mpq_class half(1, 2);
  if (odd) {
    gens.push_back({0, formal_const(d, 1), formal_const(d, 0)});
    gens.push_back({0, formal_const(d, 0), formal_const(d, 1)});
    if (d >= 1) {
      gens.push_back({1, formal_var(d, 1).scaled(half), formal_var(d, 0).scaled(half)});
      gens.push_back({1, formal_var(d, 2).scaled(half), formal_var(d, 1).scaled(half)});
    }
  } else {
    gens.push_back({0, formal_const(d, 1), formal_const(d, 0)});
    if (d >= 1) gens.push_back({1, formal_var(d, 1), formal_const(d, 0)});
  }

  auto random_s_monomial = [&](unsigned s) {
    // All (a, c, w) with a + c + 2w = s, as exponents of alpha, gamma, delta.
    std::vector<std::array<unsigned, 3>> choices;
    for (unsigned w = 0; 2 * w <= s; ++w)
      for (unsigned a = 0; a + 2 * w <= s; ++a) choices.push_back({a, s - 2 * w - a, w});
    auto [a, c, w] = choices[rng() % choices.size()];
    QPoly out = formal_const(d, 1);
    for (unsigned i = 0; i < a; ++i) out = out * formal_var(d, 0);
    for (unsigned i = 0; i < c; ++i) out = out * formal_var(d, 2);
    for (unsigned i = 0; i < w; ++i) out = out * formal_delta(d);
    return out;
  };

  RoundtripReport report;
  report.n = n;
  report.trials = trials;

  for (unsigned t = 0; t < trials; ++t) {
    LieCoordinates coords(n, odd, d);
    unsigned summands = 1 + static_cast<unsigned>(rng() % 3);
    for (unsigned s = 0; s < summands; ++s) {
      std::vector<std::size_t> eligible;
      for (std::size_t j = 0; j < gens.size(); ++j)
        if (gens[j].formal_degree <= d) eligible.push_back(j);
      const Generator& g = gens[eligible[rng() % eligible.size()]];
      long z = static_cast<long>(rng() % 11) - 5;
      if (z == 0) z = 1;
      QPoly sm = random_s_monomial(d - g.formal_degree).scaled(mpq_class(z));
      if (odd) {
        coords.odd_xyx += sm * g.first;
        coords.odd_xyy += sm * g.second;
      } else {
        coords.even_coeff += sm * g.first;
      }
    }
    ++report.family_checked;
    if (integer_entries(from_lie_coordinates(ctx, coords))) ++report.family_integral;
  }

  for (unsigned t = 0; t < trials; ++t) {
    LieCoordinates coords(n, odd, d);
    for (const auto& mono : monos) {
      long zx = static_cast<long>(rng() % 19) - 9;
      if (odd) {
        long zy = static_cast<long>(rng() % 19) - 9;
        coords.odd_xyx += QPoly::monomial(RationalRing{}, abc3(), d, mono, mpq_class(zx));
        coords.odd_xyy += QPoly::monomial(RationalRing{}, abc3(), d, mono, mpq_class(zy));
      } else {
        coords.even_coeff += QPoly::monomial(RationalRing{}, abc3(), d, mono, mpq_class(zx));
      }
    }
    ++report.decompositions;
    auto membership = L_intersect_A_membership(ctx, from_lie_coordinates(ctx, coords), n);
    bool integral = membership.member && membership.min_valuation_2 >= 0;
    for (const auto& q : membership.combination)
      if (!padic_integral(q, 2)) integral = false;
    if (integral) ++report.decompositions_integral;
  }

  report.passed = report.family_integral == report.family_checked &&
                  report.decompositions_integral == report.decompositions;
  return report;
}

}  // namespace gm2
