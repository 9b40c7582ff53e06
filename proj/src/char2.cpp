#include "gm2/char2.hpp"

#include <utility>

#include "gm2/rng.hpp"

namespace gm2 {

namespace {

// The central scalar [x,y]^2 of a freshly built pair, validated.
F2Poly central_square(const Mat2<F2Poly>& u) {
  Mat2<F2Poly> m = u * u;
  if (!m.e12.is_zero() || !m.e21.is_zero() || !(m.e11 == m.e22))
    throw structural_error("central_square: [x,y]^2 is not scalar");
  return m.e11;
}

Mat2<F2Poly> lift_mat(const Mat2<F2Poly>& m, unsigned cap) {
  return Mat2<F2Poly>(m.e11.lifted(cap), m.e12.lifted(cap), m.e21.lifted(cap),
                      m.e22.lifted(cap));
}

void require_pseudo4(const Mat2<F2Poly>& a, const char* who) {
  if (!(*a.like().vars() == *pseudo4()))
    throw structural_error(std::string(who) + ": expected the pseudo4 alphabet");
}

TPoly random_tpoly(Rng& rng, unsigned cap, unsigned max_each, unsigned max_terms) {
  F2Poly f = F2Poly::zero(GF2{}, sform4(), cap);
  unsigned n = static_cast<unsigned>(rng.uniform(1, long(max_terms)));
  for (unsigned i = 0; i < n; ++i) {
    Mono m;
    m.e[0] = static_cast<std::uint8_t>(rng.uniform(0, long(max_each)));
    m.e[1] = static_cast<std::uint8_t>(rng.uniform(0, long(max_each)));
    m.e[2] = static_cast<std::uint8_t>(rng.uniform(0, 1));
    m.e[3] = static_cast<std::uint8_t>(rng.uniform(0, 1));
    if (m.degree(*sform4()) <= cap) f.add_term(m, 1);
  }
  return TPoly::from_normal(f);
}

}  // namespace

Char2Context::Char2Context(unsigned cap)
    : pair(make_pseudo4(GF2{}, cap)),
      u(lie_bracket(pair.x, pair.y)),
      ux(u * pair.x),
      uy(u * pair.y),
      uxy(u * pair.x * pair.y),
      lam(pair.x.trace()),
      tht(pair.y.trace()),
      vth((pair.x * pair.y).trace()),
      usq(central_square(u)) {}

TPoly JElement::trace() const { return TPoly::delta(d.cap()) * d; }

Mat2<F2Poly> r_value(const RElement& a) {
  unsigned cap = a.c1.cap();
  auto P = make_pseudo4(GF2{}, cap);
  return Mat2<F2Poly>::scalar(t_to_base(a.c1)) + P.x.scaled(t_to_base(a.cx)) +
         P.y.scaled(t_to_base(a.cy)) + (P.x * P.y).scaled(t_to_base(a.cxy));
}

Mat2<F2Poly> j_value(const JElement& a) {
  unsigned cap = a.a.cap();
  auto P = make_pseudo4(GF2{}, cap);
  Mat2<F2Poly> u = lie_bracket(P.x, P.y);
  return (u * P.x).scaled(t_to_base(a.a)) + (u * P.y).scaled(t_to_base(a.b)) +
         Mat2<F2Poly>::scalar(central_square(u) * t_to_base(a.c)) +
         (u * P.x * P.y).scaled(t_to_base(a.d));
}

RElement to_R_coefficients(const Mat2<F2Poly>& a) {
  require_pseudo4(a, "to_R_coefficients");
  const unsigned cap = a.like().cap();
  if (a.is_zero()) {
    TPoly z = TPoly::zero(cap);
    return RElement{z, z, z, z};
  }
  const unsigned need = cap + 6;
  auto P = make_pseudo4(GF2{}, need);
  Mat2<F2Poly> al = lift_mat(a, need);
  Mat2<F2Poly> u = lie_bracket(P.x, P.y);
  F2Poly usq = central_square(u);
  F2Poly vth = (P.x * P.y).trace();

  F2Poly t_alpha = (P.x * u * al * u * P.y).trace();
  F2Poly t_beta = (u * P.y * al).trace();
  F2Poly t_gamma = (u * al * P.x).trace();
  F2Poly t_delta = (u * al).trace();

  F2Poly ca = F2Poly::zero(GF2{}, pseudo4(), need);
  F2Poly cb = ca, cc = ca, cd = ca;
  try {
    ca = exact_divide(t_alpha, vth * usq);
    cb = exact_divide(t_beta, usq);
    cc = exact_divide(t_gamma, usq);
    cd = exact_divide(t_delta, usq);
  } catch (const divisibility_error&) {
    throw domain_error("to_R_coefficients: not in R (trace division failed)");
  }

  Mat2<F2Poly> rebuilt = Mat2<F2Poly>::scalar(ca) + P.x.scaled(cb) + P.y.scaled(cc) +
                         (P.x * P.y).scaled(cd);
  if (!(rebuilt == al))
    throw domain_error("to_R_coefficients: not in R (recomposition mismatch)");

  return RElement{t_from_base(ca).truncated(cap), t_from_base(cb).truncated(cap),
                  t_from_base(cc).truncated(cap), t_from_base(cd).truncated(cap)};
}

JElement to_J_coefficients(const Mat2<F2Poly>& a) {
  require_pseudo4(a, "to_J_coefficients");
  const unsigned cap = a.like().cap();
  if (a.is_zero()) {
    TPoly z = TPoly::zero(cap);
    return JElement{z, z, z, z};
  }
  const unsigned need = cap + 6;
  auto P = make_pseudo4(GF2{}, need);
  Mat2<F2Poly> al = lift_mat(a, need);
  Mat2<F2Poly> u = lie_bracket(P.x, P.y);
  F2Poly usq = central_square(u);
  F2Poly mix = (P.x * P.y).trace() + P.x.trace() * P.y.trace();  // t(xy) + t(x)t(y)

  F2Poly t_a = (u * P.y * al).trace();
  F2Poly t_b = (u * P.x * al).trace();
  F2Poly t_c = (P.x * al * u * P.y).trace();
  F2Poly t_d = al.trace();

  F2Poly ca = F2Poly::zero(GF2{}, pseudo4(), need);
  F2Poly cb = ca, cc = ca, cd = ca;
  try {
    ca = exact_divide(t_a, mix * usq);
    cb = exact_divide(t_b, mix * usq);
    cc = exact_divide(t_c, usq * usq);
    cd = exact_divide(t_d, usq);
  } catch (const divisibility_error&) {
    throw domain_error("to_J_coefficients: not in J (trace division failed)");
  }

  Mat2<F2Poly> rebuilt = (u * P.x).scaled(ca) + (u * P.y).scaled(cb) +
                         Mat2<F2Poly>::scalar(usq * cc) + (u * P.x * P.y).scaled(cd);
  if (!(rebuilt == al))
    throw domain_error("to_J_coefficients: not in J (recomposition mismatch)");

  return JElement{t_from_base(ca).truncated(cap), t_from_base(cb).truncated(cap),
                  t_from_base(cc).truncated(cap), t_from_base(cd).truncated(cap)};
}

std::optional<unsigned> j_homogeneous_degree(const JElement& piece) {
  std::optional<unsigned> deg;
  auto feed = [&](const TPoly& coeff, unsigned offset, const char* slot) {
    if (coeff.is_zero()) return;
    if (*coeff.min_degree() != *coeff.max_degree())
      throw domain_error(std::string("j_homogeneous_degree: inhomogeneous ") + slot +
                         " coordinate");
    unsigned d = *coeff.max_degree() + offset;
    if (deg && *deg != d)
      throw domain_error("j_homogeneous_degree: coordinates of mixed degree");
    deg = d;
  };
  feed(piece.a, 3, "[x,y]x");
  feed(piece.b, 3, "[x,y]y");
  feed(piece.c, 4, "[x,y]^2");
  feed(piece.d, 4, "[x,y]xy");
  return deg;
}

std::optional<unsigned> JDecomposition::n_of() const {
  std::optional<unsigned> best;
  for (const auto& [key, block] : blocks)
    if (!block.is_zero() && (!best || key.first < *best)) best = key.first;
  return best;
}

std::optional<unsigned> JDecomposition::nbar() const {
  std::optional<unsigned> best;
  for (const auto& [key, block] : blocks)
    if (!block.u_zero() && (!best || key.first < *best)) best = key.first;
  return best;
}

std::optional<unsigned> JDecomposition::ibar() const {
  auto n = nbar();
  if (!n) return std::nullopt;
  std::optional<unsigned> best;
  for (const auto& [key, block] : blocks)
    if (key.first == *n && !block.u_zero() && (!best || key.second < *best))
      best = key.second;
  return best;
}

std::optional<MinComponentX> JDecomposition::min_x() const {
  auto n = nbar();
  auto i = ibar();
  if (!n || !i) return std::nullopt;
  const JBlock& b = blocks.at({*n, *i});
  return MinComponentX{*n, *i, b.ux, b.uy};
}

bool JDecomposition::in_level(unsigned n) const {
  for (const auto& [key, block] : blocks)
    if (!block.is_zero() && key.first < n) return false;
  return true;
}

JElement JDecomposition::recomposed(unsigned degree) const {
  JElement sum{TPoly::zero(cap), TPoly::zero(cap), TPoly::zero(cap), TPoly::zero(cap)};
  for (const auto& [key, block] : blocks) {
    if (key.second != degree) continue;
    sum.a += block.ux;
    sum.b += block.uy;
    sum.c += block.v;
    sum.d += block.w;
  }
  return sum;
}

JDecomposition decompose_UVW(const std::vector<JElement>& pieces) {
  std::optional<unsigned> cap;
  for (const auto& piece : pieces) {
    if (!cap) cap = piece.a.cap();
    if (piece.a.cap() != *cap)
      throw structural_error("decompose_UVW: pieces of mixed cap");
  }
  JDecomposition dec;
  dec.cap = cap.value_or(0);
  auto put = [&](unsigned n, unsigned i, const TPoly& part, TPoly JBlock::*slot) {
    auto [it, fresh] = dec.blocks.try_emplace(
        std::make_pair(n, i), JBlock{TPoly::zero(*cap), TPoly::zero(*cap),
                                     TPoly::zero(*cap), TPoly::zero(*cap)});
    it->second.*slot += part;
  };
  for (const auto& piece : pieces) {
    auto deg = j_homogeneous_degree(piece);
    if (!deg) continue;
    for (const auto& [n, part] : piece.a.lambda_layers()) put(n, *deg, part, &JBlock::ux);
    for (const auto& [n, part] : piece.b.lambda_layers()) put(n, *deg, part, &JBlock::uy);
    for (const auto& [n, part] : piece.c.lambda_layers()) put(n, *deg, part, &JBlock::v);
    for (const auto& [n, part] : piece.d.lambda_layers()) put(n, *deg, part, &JBlock::w);
  }
  return dec;
}

JDecomposition decompose_unit(const Unit<F2Poly>& g) {
  Mat2<F2Poly> d = g.delta();
  auto lo = d.min_degree();
  if (!lo) throw domain_error("decompose_unit: the element is 1 at cap");
  const unsigned cap = d.like().cap();
  std::vector<JElement> pieces;
  for (unsigned i = *lo; i <= cap; ++i) {
    Mat2<F2Poly> piece = d.homogeneous_component(i);
    if (piece.is_zero()) continue;
    pieces.push_back(to_J_coefficients(piece));
  }
  JDecomposition dec = decompose_UVW(pieces);
  dec.cap = cap;
  return dec;
}

GoodnessCertificate invariants_of(const Unit<F2Poly>& g) {
  JDecomposition dec = decompose_unit(g);
  GoodnessCertificate cert;
  cert.cap = dec.cap;
  cert.n_of = *dec.n_of();
  cert.nbar = dec.nbar();
  cert.ibar = dec.ibar();
  cert.min_x = dec.min_x();
  cert.breve_member = dec.in_level(3);
  cert.good = false;
  if (cert.nbar && cert.breve_member) {
    bool shape = true;
    for (const auto& [key, block] : dec.blocks) {
      if (!block.v.is_zero() && key.first + 1 < *cert.nbar) shape = false;
      if (!block.w.is_zero() && key.first < *cert.nbar + 2) shape = false;
    }
    cert.good = shape;
  }
  return cert;
}

Unit<F2Poly> phi_x(const Char2Context& ctx, const Unit<F2Poly>& g) {
  F2Poly l3 = ctx.lam * ctx.lam * ctx.lam;
  Unit<F2Poly> x4(Mat2<F2Poly>::identity(ctx.pair.x.like()) + ctx.pair.x.scaled(l3));
  return group_commutator(x4, g);
}

Unit<F2Poly> phi_y(const Char2Context& ctx, const Unit<F2Poly>& g) {
  return group_commutator(ctx.Y(), g);
}

Unit<F2Poly> psi(const Char2Context& ctx, const Unit<F2Poly>& g) {
  Unit<F2Poly> c = group_commutator(ctx.X(), ctx.Y());
  return group_commutator(c * c, g);
}

Unit<F2Poly> breve_recipe(const Char2Context& ctx, const Unit<F2Poly>& v, unsigned r) {
  Unit<F2Poly> x2(Mat2<F2Poly>::identity(ctx.pair.x.like()) + ctx.pair.x.scaled(ctx.lam));
  Unit<F2Poly> base = group_commutator(v, x2);
  mpz_class e = 1;
  e <<= r;
  return base.pow(e);
}

ClosureReport j_ideal_closure_check(const Char2Context& ctx, unsigned trials,
                                    std::uint64_t seed) {
  ClosureReport report;
  const auto& x = ctx.pair.x;
  auto scalar = [&](const F2Poly& s) { return Mat2<F2Poly>::scalar(s); };
  auto rule = [&](const char* name, const Mat2<F2Poly>& lhs, const Mat2<F2Poly>& rhs) {
    bool ok = lhs == rhs;
    report.rules.emplace_back(name, ok);
    if (!ok) report.all_passed = false;
  };

  rule("[x,y]x * x = t(x) [x,y]x", ctx.ux * x, ctx.ux.scaled(ctx.lam));
  rule("[x,y]y * x = [x,y]^2 + [x,y]xy", ctx.uy * x, scalar(ctx.usq) + ctx.uxy);
  rule("[x,y]^2 * x = t(xy) [x,y]x + t(x) [x,y]^2 + t(x) [x,y]xy",
       scalar(ctx.usq) * x,
       ctx.ux.scaled(ctx.vth) + scalar(ctx.usq * ctx.lam) + ctx.uxy.scaled(ctx.lam));
  rule("[x,y]xy * x = t(xy) [x,y]x", ctx.uxy * x, ctx.ux.scaled(ctx.vth));
  rule("x * [x,y]x = 0", x * ctx.ux, Mat2<F2Poly>::zero(x.like()));
  rule("x * [x,y]y = t(x) [x,y]y + [x,y]xy", x * ctx.uy,
       ctx.uy.scaled(ctx.lam) + ctx.uxy);
  rule("x * [x,y]^2 = [x,y]^2 * x", x * scalar(ctx.usq), scalar(ctx.usq) * x);
  rule("x * [x,y]xy = 0", x * ctx.uxy, Mat2<F2Poly>::zero(x.like()));

  Rng rng(seed);
  const unsigned cap = ctx.cap();
  unsigned coeff_cap = cap >= 14 ? (cap - 6) / 2 : 4;
  auto coeff = [&] { return random_tpoly(rng, coeff_cap, 2, 3).lifted(cap); };
  for (unsigned k = 0; k < trials; ++k) {
    JElement j{coeff(), coeff(), coeff(), coeff()};
    RElement r{coeff(), coeff(), coeff(), coeff()};
    Mat2<F2Poly> jm = j_value(j);
    Mat2<F2Poly> rm = r_value(r);
    try {
      JElement left = to_J_coefficients(rm * jm);
      JElement right = to_J_coefficients(jm * rm);
      if (j_value(left) == rm * jm && j_value(right) == jm * rm)
        report.random_products += 2;
      else
        report.all_passed = false;
    } catch (const domain_error&) {
      report.all_passed = false;
    }
  }
  return report;
}

namespace {

std::string level_text(const std::optional<unsigned>& v) {
  return v ? std::to_string(*v) : std::string("none below cap");
}

MinComponentX scaled_min(const MinComponentX& m, const TPoly& factor, unsigned dn,
                         unsigned di) {
  return MinComponentX{m.n + dn, m.i + di, factor * m.cx, factor * m.cy};
}

}  // namespace

TransportReport verify_transport(const Char2Context& ctx,
                                 const std::vector<Unit<F2Poly>>& catalog) {
  TransportReport report;
  std::vector<GoodnessCertificate> certs;
  certs.reserve(catalog.size());
  for (std::size_t k = 0; k < catalog.size(); ++k) {
    GoodnessCertificate cert = invariants_of(catalog[k]);
    if (!cert.good)
      throw domain_error("verify_transport: catalog element " + std::to_string(k) +
                         " is not good");
    if (*cert.ibar + 8 > ctx.cap())
      throw domain_error("verify_transport: insufficient cap for catalog element " +
                         std::to_string(k));
    certs.push_back(std::move(cert));
  }
  report.elements = static_cast<unsigned>(catalog.size());

  auto add = [&](std::string name, bool ok, std::string detail) {
    if (!ok) report.all_passed = false;
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  const unsigned cap = ctx.cap();
  for (std::size_t k = 0; k < catalog.size(); ++k) {
    const auto& cert = certs[k];
    const std::string who = "catalog[" + std::to_string(k) + "]";
    struct OpCase {
      const char* name;
      Unit<F2Poly> image;
      MinComponentX expect;
      unsigned dn;
    };
    std::vector<OpCase> cases;
    cases.push_back({"phi_x", phi_x(ctx, catalog[k]),
                     scaled_min(*cert.min_x, TPoly::one(cap).lambda_shift(4), 4, 4), 4});
    cases.push_back(
        {"phi_y", phi_y(ctx, catalog[k]), scaled_min(*cert.min_x, TPoly::theta(cap), 0, 1), 0});
    cases.push_back({"psi", psi(ctx, catalog[k]),
                     scaled_min(*cert.min_x, TPoly::delta(cap) * TPoly::delta(cap), 0, 8),
                     0});
    for (auto& c : cases) {
      GoodnessCertificate after = invariants_of(c.image);
      bool level_ok = after.nbar && *after.nbar == *cert.nbar + c.dn;
      bool min_ok = after.min_x && *after.min_x == c.expect;
      add(who + " " + c.name + " level shift", level_ok,
          "expected " + std::to_string(*cert.nbar + c.dn) + ", got " +
              level_text(after.nbar));
      add(who + " " + c.name + " minimal part", min_ok, min_ok ? "" : "mismatch");
      add(who + " " + c.name + " stays good", after.good, "");
    }
  }

  for (std::size_t k = 0; k < catalog.size(); ++k) {
    for (std::size_t l = k + 1; l < catalog.size(); ++l) {
      const auto& a = certs[k];
      const auto& b = certs[l];
      if (!(a.nbar == b.nbar && a.ibar == b.ibar && *a.min_x != *b.min_x)) {
        report.excluded_pairs += 1;
        continue;
      }
      report.pairs += 1;
      Unit<F2Poly> prod = catalog[k] * catalog[l];
      GoodnessCertificate after = invariants_of(prod);
      MinComponentX expect{a.min_x->n, a.min_x->i, a.min_x->cx + b.min_x->cx,
                           a.min_x->cy + b.min_x->cy};
      std::string who = "catalog[" + std::to_string(k) + "]*catalog[" + std::to_string(l) + "]";
      add(who + " product stays good", after.good, "");
      add(who + " product level", after.nbar && *after.nbar == *a.nbar,
          "expected " + level_text(a.nbar) + ", got " + level_text(after.nbar));
      add(who + " product minimal part is the sum",
          after.min_x && *after.min_x == expect, "");
    }
  }
  return report;
}

ShapeReport commutator_shape_check(const Char2Context& ctx, const Unit<F2Poly>& g,
                                   bool expect_second_derived) {
  ShapeReport report;
  const unsigned cap = ctx.cap();
  Mat2<F2Poly> d = g.delta();
  if (d.is_zero()) {
    report.commutator_shape = true;
    report.second_derived_in_J = expect_second_derived;
    report.breve_member = true;
    return report;
  }

  // g - 1 = [x,y] r with r = [x,y](g - 1)/[x,y]^2; each homogeneous term of r
  // must lie in R. Verified below cap - 2 (the division costs four degrees).
  try {
    Mat2<F2Poly> num = ctx.u * d;
    Mat2<F2Poly> r(exact_divide(num.e11, ctx.usq), exact_divide(num.e12, ctx.usq),
                   exact_divide(num.e21, ctx.usq), exact_divide(num.e22, ctx.usq));
    if (!((ctx.u * r).truncated(cap - 2) == d.truncated(cap - 2)))
      throw domain_error("recomposition mismatch");
    if (auto lo = r.min_degree()) {
      for (unsigned i = *lo; i + 4 <= cap; ++i) {
        Mat2<F2Poly> piece = r.homogeneous_component(i);
        if (piece.is_zero()) continue;
        (void)to_R_coefficients(piece.truncated(i));
      }
    }
    report.commutator_shape = true;
  } catch (const divisibility_error& e) {
    report.failure = std::string("commutator shape: ") + e.what();
    return report;
  } catch (const domain_error& e) {
    report.failure = std::string("commutator shape: ") + e.what();
    return report;
  }

  if (!expect_second_derived) return report;
  try {
    JDecomposition dec = decompose_unit(g);
    report.second_derived_in_J = true;
    report.n_of = dec.n_of();
    report.breve_member = dec.in_level(3);
  } catch (const domain_error& e) {
    report.failure = std::string("second derived terms: ") + e.what();
  }
  return report;
}

ShapeReport commutator_shape_check_word(const Char2Context& ctx, const HallBasis& basis,
                                        const GroupWord& w, bool expect_second_derived) {
  HallGroupEval<F2Poly> eval(basis, ctx.X(), ctx.Y());
  return commutator_shape_check(ctx, eval.evaluate(w), expect_second_derived);
}

std::vector<Unit<F2Poly>> good_catalog(const Char2Context& ctx, const CatalogOptions& opts) {
  Rng rng(opts.seed);
  Unit<F2Poly> X = ctx.X(), Y = ctx.Y();
  Unit<F2Poly> c = group_commutator(X, Y);
  Unit<F2Poly> cx = group_commutator(c, X);
  Unit<F2Poly> cy = group_commutator(c, Y);
  std::vector<Unit<F2Poly>> derived{c,
                                    cx,
                                    cy,
                                    group_commutator(cx, X),
                                    group_commutator(cx, Y),
                                    group_commutator(cy, X),
                                    group_commutator(cy, Y),
                                    X.inverse() * c * X,
                                    Y.inverse() * c * Y,
                                    c * c,
                                    c * cx,
                                    cx * cy};

  std::vector<Unit<F2Poly>> catalog;
  auto consider = [&](const Unit<F2Poly>& cand) {
    if (catalog.size() >= opts.count || cand.is_one()) return;
    GoodnessCertificate cert;
    try {
      cert = invariants_of(cand);
    } catch (const domain_error&) {
      return;
    }
    if (!cert.good || !cert.ibar || *cert.ibar + opts.headroom > ctx.cap()) return;
    for (const auto& have : catalog)
      if (have.value() == cand.value()) return;
    catalog.push_back(cand);
  };

  for (unsigned attempt = 0; attempt < opts.max_attempts && catalog.size() < opts.count;
       ++attempt) {
    std::size_t i = static_cast<std::size_t>(rng.uniform(0, long(derived.size()) - 1));
    std::size_t j = static_cast<std::size_t>(rng.uniform(0, long(derived.size()) - 1));
    if (i == j) continue;
    Unit<F2Poly> w = group_commutator(derived[i], derived[j]);
    if (rng.coin()) {
      std::size_t k = static_cast<std::size_t>(rng.uniform(0, long(derived.size()) - 1));
      std::size_t l = static_cast<std::size_t>(rng.uniform(0, long(derived.size()) - 1));
      if (k != l) w *= group_commutator(derived[k], derived[l]);
    }
    if (w.is_one()) continue;
    Unit<F2Poly> cand = phi_x(ctx, w);
    consider(cand);
    if (catalog.size() < opts.count && !cand.is_one()) consider(phi_y(ctx, cand));
  }
  return catalog;
}

}  // namespace gm2
