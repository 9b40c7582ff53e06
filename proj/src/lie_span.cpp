#include "gm2/lie_span.hpp"

#include <set>

#include "gm2/rings.hpp"

namespace gm2 {

namespace {

Mat2<QPoly> lift_mat(const Mat2<QPoly>& m, unsigned cap) {
  return Mat2<QPoly>(m.e11.lifted(cap), m.e12.lifted(cap), m.e21.lifted(cap), m.e22.lifted(cap));
}

bool is_homogeneous_of(const Mat2<QPoly>& a, unsigned n) {
  const QPoly* entries[4] = {&a.e11, &a.e12, &a.e21, &a.e22};
  for (const auto* e : entries) {
    if (e->is_zero()) continue;
    if (*e->min_degree() != n || *e->max_degree() != n) return false;
  }
  return true;
}

std::string abc_mono_name(const Mono& m) {
  static const char* names[3] = {"alpha", "beta", "gamma"};
  std::string s;
  for (int i = 0; i < 3; ++i) {
    if (!m.e[i]) continue;
    if (!s.empty()) s += ' ';
    s += names[i];
    if (m.e[i] > 1) s += '^' + std::to_string(unsigned(m.e[i]));
  }
  return s.empty() ? "1" : s;
}

}  // namespace

LieContext::LieContext(GenericPair<RationalRing> pair)
    : pair_(std::move(pair)),
      coords_(trace_coords(pair_)),
      br_xy_(lie_bracket(pair_.x, pair_.y)),
      br_xyx_(lie_bracket(br_xy_, pair_.x)),
      br_xyy_(lie_bracket(br_xy_, pair_.y)),
      q_(QPoly::zero(pair_.ring, pair_.alphabet, pair_.cap)) {
  if (pair_.cap < 4) throw range_error("LieContext: cap must be at least 4");
  Mat2<QPoly> sq = br_xy_ * br_xy_;
  if (!sq.e12.is_zero() || !sq.e21.is_zero() || sq.e11 != sq.e22)
    throw structural_error("LieContext: [x,y]^2 is not scalar");
  q_ = sq.e11;
  if (q_.is_zero()) throw structural_error("LieContext: [x,y]^2 vanished");
  QPoly lifted_delta =
      (coords_.beta * coords_.beta - coords_.alpha * coords_.gamma).scaled(mpq_class(1, 4));
  if (lifted_delta != q_) throw structural_error("LieContext: q != (beta^2 - alpha gamma)/4");
}

std::vector<Mono> abc_monomials(unsigned d) {
  std::vector<Mono> out;
  for (unsigned r = d + 1; r-- > 0;)
    for (unsigned s = d - r + 1; s-- > 0;) {
      Mono m;
      m.e[0] = static_cast<std::uint8_t>(r);
      m.e[1] = static_cast<std::uint8_t>(s);
      m.e[2] = static_cast<std::uint8_t>(d - r - s);
      out.push_back(m);
    }
  return out;
}

std::vector<mpq_class> abc_coefficient_vector(const QPoly& formal, unsigned d) {
  auto monos = abc_monomials(d);
  std::vector<mpq_class> out;
  out.reserve(monos.size());
  for (const auto& m : monos) out.push_back(formal.coeff(m));
  return out;
}

const LieContext::AbcFrame& LieContext::frame(unsigned d) const {
  auto it = frames_.find(d);
  if (it != frames_.end()) return it->second;

  AbcFrame f;
  f.monos = abc_monomials(d);
  const unsigned vcap = 2 * d;
  const QPoly one = QPoly::one(pair_.ring, pair_.alphabet, vcap);
  const QPoly a = coords_.alpha.lifted(vcap);
  const QPoly b = coords_.beta.lifted(vcap);
  const QPoly c = coords_.gamma.lifted(vcap);
  for (const auto& m : f.monos) {
    QPoly v = one;
    for (unsigned i = 0; i < m.e[0]; ++i) v *= a;
    for (unsigned i = 0; i < m.e[1]; ++i) v *= b;
    for (unsigned i = 0; i < m.e[2]; ++i) v *= c;
    f.values.push_back(std::move(v));
  }
  auto cmp = [this](const Mono& x, const Mono& y) { return mono_less(*pair_.alphabet, x, y); };
  std::set<Mono, decltype(cmp)> support(cmp);
  for (const auto& v : f.values)
    for (const auto& [m, cf] : v.terms()) support.insert(m);
  f.support.assign(support.begin(), support.end());
  Matrix<RationalRing> mat(pair_.ring, f.support.size(), f.monos.size());
  for (std::size_t i = 0; i < f.support.size(); ++i)
    for (std::size_t j = 0; j < f.monos.size(); ++j) mat.at(i, j) = f.values[j].coeff(f.support[i]);
  f.mat = std::move(mat);
  return frames_.emplace(d, std::move(f)).first->second;
}

std::optional<QPoly> LieContext::abc_expand(const QPoly& f, unsigned d) const {
  const QPoly zero_formal = QPoly::zero(pair_.ring, abc3(), d);
  if (f.is_zero()) return zero_formal;
  if (*f.min_degree() != 2 * d || *f.max_degree() != 2 * d)
    throw domain_error("abc_expand: polynomial is not homogeneous of degree 2d");
  const AbcFrame& fr = frame(d);
  std::vector<mpq_class> rhs;
  rhs.reserve(fr.support.size());
  for (const auto& m : fr.support) rhs.push_back(f.coeff(m));
  auto sol = solve(fr.mat, rhs);
  if (!sol) return std::nullopt;
  QPoly out = zero_formal;
  QPoly check = QPoly::zero(pair_.ring, pair_.alphabet, f.cap());
  for (std::size_t j = 0; j < fr.monos.size(); ++j) {
    if (sol->at(j) == 0) continue;
    out += QPoly::monomial(pair_.ring, abc3(), d, fr.monos[j], sol->at(j));
    check += fr.values[j].lifted(f.cap()).scaled(sol->at(j));
  }
  if (check != f) return std::nullopt;
  return out;
}

QPoly LieContext::abc_value(const QPoly& formal, unsigned out_cap) const {
  if (!formal.is_zero() && formal.vars() != abc3())
    throw structural_error("abc_value: expected a formal abc3 polynomial");
  QPoly out = QPoly::zero(pair_.ring, pair_.alphabet, out_cap);
  const QPoly a = coords_.alpha.lifted(out_cap);
  const QPoly b = coords_.beta.lifted(out_cap);
  const QPoly c = coords_.gamma.lifted(out_cap);
  for (const auto& [m, cf] : formal.terms()) {
    QPoly v = QPoly::constant(pair_.ring, pair_.alphabet, out_cap, cf);
    for (unsigned i = 0; i < m.e[0]; ++i) v *= a;
    for (unsigned i = 0; i < m.e[1]; ++i) v *= b;
    for (unsigned i = 0; i < m.e[2]; ++i) v *= c;
    out += v;
  }
  return out;
}

std::optional<QPoly> lie_even_coefficient(const LieContext& ctx, const Mat2<QPoly>& a,
                                          unsigned n) {
  if (n < 2 || n % 2 != 0) throw range_error("lie_even_coefficient: n must be even and >= 2");
  if (!is_homogeneous_of(a, n))
    throw domain_error("lie_even_coefficient: input is not homogeneous of degree n");
  const unsigned need = std::max(ctx.cap(), n + 2);
  const Mat2<QPoly> al = lift_mat(a, need);
  const Mat2<QPoly> u = lift_mat(ctx.br_xy(), need);
  const QPoly two_q = ctx.q().lifted(need).scaled(2);
  QPoly eps = QPoly::zero(ctx.pair().ring, ctx.pair().alphabet, need);
  try {
    eps = exact_divide((al * u).trace(), two_q);
  } catch (const divisibility_error&) {
    return std::nullopt;
  }
  if (u.scaled(eps) != al) return std::nullopt;
  return eps.truncated(ctx.cap());
}

std::optional<std::pair<QPoly, QPoly>> lie_odd_coefficients(const LieContext& ctx,
                                                            const Mat2<QPoly>& a, unsigned n) {
  if (n < 3 || n % 2 != 1) throw range_error("lie_odd_coefficients: n must be odd and >= 3");
  if (!is_homogeneous_of(a, n))
    throw domain_error("lie_odd_coefficients: input is not homogeneous of degree n");
  const unsigned need = std::max(ctx.cap(), n + 2);
  const Mat2<QPoly> al = lift_mat(a, need);
  const Mat2<QPoly> xl = lift_mat(ctx.pair().x, need);
  const Mat2<QPoly> yl = lift_mat(ctx.pair().y, need);
  const QPoly two_q = ctx.q().lifted(need).scaled(2);
  QPoly eps1 = QPoly::zero(ctx.pair().ring, ctx.pair().alphabet, need);
  QPoly eps2 = eps1;
  try {
    eps1 = exact_divide((al * yl).trace(), two_q);
    eps2 = exact_divide(-(al * xl).trace(), two_q);
  } catch (const divisibility_error&) {
    return std::nullopt;
  }
  const Mat2<QPoly> rebuilt =
      lift_mat(ctx.br_xyx(), need).scaled(eps1) + lift_mat(ctx.br_xyy(), need).scaled(eps2);
  if (rebuilt != al) return std::nullopt;
  return std::make_pair(eps1.truncated(ctx.cap()), eps2.truncated(ctx.cap()));
}

std::vector<mpq_class> LieCoordinates::basis_vector() const {
  if (!odd) return abc_coefficient_vector(even_coeff, d);
  auto v1 = abc_coefficient_vector(odd_xyx, d);
  auto v2 = abc_coefficient_vector(odd_xyy, d);
  v1.insert(v1.end(), v2.begin(), v2.end());
  return v1;
}

std::optional<LieCoordinates> lie_coordinates(const LieContext& ctx, const Mat2<QPoly>& a,
                                              unsigned n) {
  if (n < 2) throw range_error("lie_coordinates: n must be at least 2");
  const bool odd = (n % 2 == 1);
  LieCoordinates out(n, odd, odd ? (n - 3) / 2 : (n - 2) / 2);
  if (!out.odd) {
    auto eps = lie_even_coefficient(ctx, a, n);
    if (!eps) return std::nullopt;
    auto formal = ctx.abc_expand(*eps, out.d);
    if (!formal) return std::nullopt;
    out.even_coeff = *formal;
  } else {
    auto eps = lie_odd_coefficients(ctx, a, n);
    if (!eps) return std::nullopt;
    auto f1 = ctx.abc_expand(eps->first, out.d);
    auto f2 = ctx.abc_expand(eps->second, out.d);
    if (!f1 || !f2) return std::nullopt;
    out.odd_xyx = *f1;
    out.odd_xyy = *f2;
  }
  return out;
}

Mat2<QPoly> from_lie_coordinates(const LieContext& ctx, const LieCoordinates& c) {
  if (!c.odd) return ctx.br_xy().scaled(ctx.abc_value(c.even_coeff, ctx.cap()));
  return ctx.br_xyx().scaled(ctx.abc_value(c.odd_xyx, ctx.cap())) +
         ctx.br_xyy().scaled(ctx.abc_value(c.odd_xyy, ctx.cap()));
}

GradedLieComponent L_n_spanning_set(const LieContext& ctx, unsigned n) {
  if (n < 2) throw range_error("L_n_spanning_set: n must be at least 2");
  if (n > ctx.cap()) throw range_error("L_n_spanning_set: n exceeds the context cap");
  GradedLieComponent out;
  out.n = n;
  const bool odd = (n % 2 == 1);
  const unsigned d = odd ? (n - 3) / 2 : (n - 2) / 2;
  for (const auto& m : abc_monomials(d)) {
    QPoly v = ctx.abc_value(QPoly::monomial(ctx.pair().ring, abc3(), d, m, 1), ctx.cap());
    const std::string base = abc_mono_name(m);
    if (!odd) {
      out.vectors.push_back(ctx.br_xy().scaled(v));
      out.names.push_back(base + " [x,y]");
    } else {
      out.vectors.push_back(ctx.br_xyx().scaled(v));
      out.names.push_back(base + " [x,y,x]");
      out.vectors.push_back(ctx.br_xyy().scaled(v));
      out.names.push_back(base + " [x,y,y]");
    }
  }
  out.rank = rank_of_span(out.vectors);
  return out;
}

unsigned long rank_of_span_mod_p(const std::vector<Mat2<QPoly>>& vecs, unsigned long p) {
  if (vecs.empty()) return 0;
  const auto& like = vecs.front().e11;
  std::vector<std::pair<int, Mono>> cols;
  for (const auto& v : vecs) {
    v.e11.require_compatible(like, "rank_of_span_mod_p");
    const QPoly* entries[4] = {&v.e11, &v.e12, &v.e21, &v.e22};
    for (int s = 0; s < 4; ++s)
      for (const auto& [m, c] : entries[s]->terms()) cols.emplace_back(s, m);
  }
  std::sort(cols.begin(), cols.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return mono_less(*like.vars(), a.second, b.second);
  });
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  Matrix<RationalRing> m(like.ring(), vecs.size(), cols.size());
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    const QPoly* entries[4] = {&vecs[i].e11, &vecs[i].e12, &vecs[i].e21, &vecs[i].e22};
    for (std::size_t j = 0; j < cols.size(); ++j)
      m.at(i, j) = entries[cols[j].first]->coeff(cols[j].second);
  }
  return rank_mod_p(m, static_cast<unsigned>(p));
}

namespace {

// Monomials alpha^u gamma^v delta^w with u + v + 2w = d, delta formal degree 2.
struct SMono {
  unsigned u = 0, v = 0, w = 0;
};

std::vector<SMono> s_monomials(unsigned d) {
  std::vector<SMono> out;
  for (unsigned w = 0; 2 * w <= d; ++w)
    for (unsigned u = d - 2 * w + 1; u-- > 0;) out.push_back({u, d - 2 * w - u, w});
  return out;
}

std::string s_mono_name(const SMono& m) {
  std::string s;
  auto app = [&s](const char* n, unsigned e) {
    if (!e) return;
    if (!s.empty()) s += ' ';
    s += n;
    if (e > 1) s += '^' + std::to_string(e);
  };
  app("alpha", m.u);
  app("gamma", m.v);
  app("delta", m.w);
  return s.empty() ? "1" : s;
}

// Formal abc3 value of alpha^u gamma^v delta^w at total abc degree cap.
QPoly s_mono_value(const RationalRing& ring, const SMono& m, unsigned cap) {
  const QPoly alpha = QPoly::variable(ring, abc3(), cap, 0);
  const QPoly beta = QPoly::variable(ring, abc3(), cap, 1);
  const QPoly gamma = QPoly::variable(ring, abc3(), cap, 2);
  const QPoly delta = (beta * beta - alpha * gamma).scaled(mpq_class(1, 4));
  QPoly v = QPoly::one(ring, abc3(), cap);
  for (unsigned i = 0; i < m.u; ++i) v *= alpha;
  for (unsigned i = 0; i < m.v; ++i) v *= gamma;
  for (unsigned i = 0; i < m.w; ++i) v *= delta;
  return v;
}

}  // namespace

MembershipResult L_intersect_A_membership(const LieContext& ctx, const Mat2<QPoly>& v,
                                          unsigned n) {
  auto coords = lie_coordinates(ctx, v, n);
  if (!coords)
    throw domain_error("L_intersect_A_membership: element is not in the degree-n module component");
  MembershipResult out;
  out.free_coordinates = coords->basis_vector();
  out.min_valuation_2 = 0;
  for (const auto& c : out.free_coordinates)
    if (c != 0) out.min_valuation_2 = std::min(out.min_valuation_2, padic_valuation(c, 2));

  const RationalRing& ring = ctx.pair().ring;
  const unsigned d = coords->d;
  const auto monos = abc_monomials(d);
  const bool odd = coords->odd;
  const std::size_t block = monos.size();
  const std::size_t rows = odd ? 2 * block : block;

  struct Generator {
    std::string name;
    std::vector<mpq_class> column;
  };
  std::vector<Generator> gens;
  auto coeffs_of = [&](const QPoly& formal) { return abc_coefficient_vector(formal, d); };

  if (!odd) {
    for (const auto& sm : s_monomials(d))
      gens.push_back({s_mono_name(sm) + " [x,y]", coeffs_of(s_mono_value(ring, sm, d))});
    if (d >= 1) {
      const QPoly beta = QPoly::variable(ring, abc3(), d, 1);
      for (const auto& sm : s_monomials(d - 1))
        gens.push_back({"beta " + s_mono_name(sm) + " [x,y]",
                        coeffs_of(beta * s_mono_value(ring, sm, d))});
    }
  } else {
    auto stacked = [&](const QPoly& f1, const QPoly& f2) {
      auto c1 = coeffs_of(f1);
      auto c2 = coeffs_of(f2);
      c1.insert(c1.end(), c2.begin(), c2.end());
      return c1;
    };
    const QPoly zero = QPoly::zero(ring, abc3(), d);
    for (const auto& sm : s_monomials(d)) {
      QPoly val = s_mono_value(ring, sm, d);
      gens.push_back({s_mono_name(sm) + " [x,y,x]", stacked(val, zero)});
      gens.push_back({s_mono_name(sm) + " [x,y,y]", stacked(zero, val)});
    }
    if (d >= 1) {
      const QPoly alpha = QPoly::variable(ring, abc3(), d, 0);
      const QPoly beta = QPoly::variable(ring, abc3(), d, 1);
      const QPoly gamma = QPoly::variable(ring, abc3(), d, 2);
      const mpq_class half(1, 2);
      for (const auto& sm : s_monomials(d - 1)) {
        QPoly val = s_mono_value(ring, sm, d);
        gens.push_back({s_mono_name(sm) + " (beta [x,y,x] + alpha [x,y,y])/2",
                        stacked((beta * val).scaled(half), (alpha * val).scaled(half))});
        gens.push_back({s_mono_name(sm) + " (gamma [x,y,x] + beta [x,y,y])/2",
                        stacked((gamma * val).scaled(half), (beta * val).scaled(half))});
      }
    }
  }

  Matrix<RationalRing> A(ring, rows, gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (gens[j].column.size() != rows)
      throw structural_error("L_intersect_A_membership: generator column size mismatch");
    for (std::size_t i = 0; i < rows; ++i) A.at(i, j) = gens[j].column[i];
  }
  auto res = solve_p_integral(A, out.free_coordinates, 2);
  for (const auto& g : gens) out.generator_names.push_back(g.name);
  if (res.status == LocalSolveStatus::ok) {
    out.member = true;
    out.combination = res.solution;
  }
  return out;
}

}  // namespace gm2
