#include "gm2/identity.hpp"

#include <algorithm>
#include <sstream>

#include "gm2/errors.hpp"
#include "gm2/linalg.hpp"

namespace gm2 {

namespace {

void require_odd_prime(unsigned long p, const char* who) {
  if (p == 2)
    throw domain_error(std::string(who) +
                       ": p = 2 is refused; the correction coefficients are only guaranteed "
                       "integral away from 2 (the odd-degree components of the module carry "
                       "halves, so the degree lattice and the lower central lattice differ), "
                       "use the characteristic-2 search instead");
  mpz_class z(static_cast<long>(p));
  if (p < 2 || mpz_probab_prime_p(z.get_mpz_t(), 40) == 0)
    throw range_error(std::string(who) + ": p must be prime");
}

mpz_class power_long(unsigned long base, unsigned exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

// Representative of a p-integral rational in [0, p^k).
mpz_class reduce_exponent(const mpq_class& c, const mpz_class& pk) {
  mpz_class num = c.get_num() % pk;
  if (num < 0) num += pk;
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), c.get_den().get_mpz_t(), pk.get_mpz_t()) == 0)
    throw domain_error("reduce_exponent: denominator shares a factor with the modulus");
  mpz_class r = (num * inv) % pk;
  if (r < 0) r += pk;
  return r;
}

std::vector<mpq_class> module_coordinates(const LieContext& ctx, const Mat2<QPoly>& a, unsigned n,
                                          const char* who) {
  auto c = lie_coordinates(ctx, a, n);
  if (!c) throw domain_error(std::string(who) + ": element is outside the graded module component");
  return c->basis_vector();
}

}  // namespace

unsigned default_modulus_exponent(unsigned long p, unsigned target_degree) {
  unsigned k = 1;
  mpz_class pk(static_cast<long>(p));
  while (pk <= target_degree) {
    pk *= static_cast<long>(p);
    ++k;
  }
  return k + 2;
}

SeedReport find_seed_report(const HallBasis& basis, unsigned long p, unsigned cap) {
  require_odd_prime(p, "find_seed");
  if (basis.max_weight() < 6) throw range_error("find_seed: basis must reach weight 6");
  if (cap < 7) throw range_error("find_seed: cap must be at least 7");

  LieContext ctx = LieContext::pseudo(cap);
  HallLieEval<QPoly> lie(basis, ctx.pair().x, ctx.pair().y);
  const std::vector<int>& ids = basis.at_weight(6);

  std::vector<std::vector<mpq_class>> cols;
  cols.reserve(ids.size());
  for (int id : ids) cols.push_back(module_coordinates(ctx, lie.at(id), 6, "find_seed"));

  Matrix<RationalRing> A(RationalRing{}, cols.front().size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < cols[j].size(); ++i) A.at(i, j) = cols[j][i];
  auto ker = kernel_basis(A);
  if (ker.empty())
    throw domain_error("find_seed: the weight-6 commutator images are independent, no seed");

  std::vector<mpz_class> e = primitive_integer_vector(ker.front());
  mpz_class content = 0;
  SeedReport report;
  report.kernel_dimension = ker.size();
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] == 0) continue;
    report.word.letters.emplace_back(ids[j], e[j]);
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), e[j].get_mpz_t());
  }
  if (content != 1)
    throw domain_error("find_seed: kernel vector is not primitive; exponents share a factor");

  HallGroupEval<QPoly> group(basis, ctx.pair().X(), ctx.pair().Y());
  Unit<QPoly> value = group.evaluate(report.word);
  auto md = value.delta().min_degree();
  if (md && *md < 7)
    throw domain_error("find_seed: evaluation of the seed fails to cancel degree 6");
  report.residual_degree = md;
  return report;
}

GroupWord find_seed(const HallBasis& basis, unsigned long p, unsigned cap) {
  return find_seed_report(basis, p, cap).word;
}

namespace {

unsigned checked_basis_weight(unsigned long p, unsigned target_degree, unsigned modulus_exponent) {
  require_odd_prime(p, "build_identity");
  if (target_degree < 7) throw range_error("build_identity: target degree must be at least 7");
  if (modulus_exponent != 0) {
    mpz_class pk = power_long(p, modulus_exponent);
    if (pk <= target_degree)
      throw range_error("build_identity: p^k must exceed the target degree");
  }
  return std::max(6u, target_degree - 1);
}

}  // namespace

IdentityBuilder::IdentityBuilder(unsigned long p, unsigned target_degree,
                                 unsigned modulus_exponent)
    : basis_(checked_basis_weight(p, target_degree, modulus_exponent)),
      ctx_(LieContext::pseudo(target_degree)),
      group_(basis_, ctx_.pair().X(), ctx_.pair().Y()),
      lie_(basis_, ctx_.pair().x, ctx_.pair().y),
      word_{p, target_degree,
            modulus_exponent ? modulus_exponent : default_modulus_exponent(p, target_degree),
            find_seed(basis_, p), {}},
      current_(group_.evaluate(word_.seed)) {
  auto md = current_.delta().min_degree();
  if (md && *md < 7) throw domain_error("build_identity: seed residual below degree 7");
}

CorrectionStepReport IdentityBuilder::step() {
  if (finished()) throw range_error("correction step: all corrections already applied");
  const unsigned n = next_n_;
  CorrectionStepReport report;
  report.n = n;

  auto md = current_.delta().min_degree();
  if (!md || *md > n) {
    report.trivial = true;
    report.residual_after = md;
    word_.corrections.push_back(Correction{n, {}, {}, {}});
    next_n_ += 1;
    reports_.push_back(report);
    return report;
  }
  if (*md < n) throw domain_error("correction step: residual below the expected degree");

  Mat2<QPoly> residual = current_.delta().homogeneous_component(n);
  std::vector<mpq_class> rhs = module_coordinates(ctx_, residual, n, "correction step");
  for (auto& v : rhs) v = -v;

  const std::vector<int>& ids = basis_.at_weight(n);
  Matrix<RationalRing> A(RationalRing{}, rhs.size(), ids.size());
  for (std::size_t j = 0; j < ids.size(); ++j) {
    auto col = module_coordinates(ctx_, lie_.at(ids[j]), n, "correction step");
    if (col.size() != rhs.size()) throw structural_error("correction step: column size mismatch");
    for (std::size_t i = 0; i < col.size(); ++i) A.at(i, j) = col[i];
  }
  report.rows = rhs.size();
  report.columns = ids.size();
  report.rank = rank(A);
  report.redundant = report.rank < report.columns;
  if (report.redundant)
    report.note = "dependent commutator images; free coefficients set to zero";

  LocalSolveResult sol = solve_p_integral(A, rhs, word_.p);
  if (sol.status == LocalSolveStatus::inconsistent)
    throw domain_error("correction step: the residual at degree " + std::to_string(n) +
                       " is outside the span of the weight-" + std::to_string(n) +
                       " commutator images");
  if (sol.status == LocalSolveStatus::not_integral)
    throw domain_error("correction step: the coefficient system at degree " + std::to_string(n) +
                       " has no p-integral solution at p = " + std::to_string(word_.p) +
                       "; this would contradict the integral identification of the degree "
                       "lattice with the lower central lattice away from 2");

  Correction corr;
  corr.n = n;
  mpz_class pk = power_long(word_.p, word_.modulus_exponent);
  for (std::size_t j = 0; j < ids.size(); ++j) {
    const mpq_class& c = sol.solution[j];
    if (c == 0) continue;
    corr.letters.push_back(ids[j]);
    corr.exact.push_back(c);
    corr.reduced.push_back(reduce_exponent(c, pk));
    report.letters.push_back(basis_.name(ids[j]));
    current_ *= pow_binomial(group_.at(ids[j]), c);
  }
  report.exact = corr.exact;
  report.reduced = corr.reduced;

  auto after = current_.delta().min_degree();
  if (after && *after <= n)
    throw domain_error("correction step: the correction failed to advance the residual");
  report.residual_after = after;

  word_.corrections.push_back(std::move(corr));
  next_n_ += 1;
  reports_.push_back(report);
  return report;
}

IdentityWord IdentityBuilder::build() {
  while (!finished()) step();
  auto md = current_.delta().min_degree();
  if (md && *md < word_.target_degree)
    throw domain_error("build_identity: the built word is not trivial modulo the target degree");
  return word_;
}

IdentityWord build_identity(unsigned long p, unsigned target_degree, unsigned modulus_exponent) {
  IdentityBuilder builder(p, target_degree, modulus_exponent);
  return builder.build();
}

Unit<QPoly> evaluate_identity_word(const HallBasis& basis, const GenericPair<RationalRing>& pair,
                                   const IdentityWord& w, bool reduced) {
  HallGroupEval<QPoly> group(basis, pair.X(), pair.Y());
  Unit<QPoly> acc = group.evaluate(w.seed);
  for (const Correction& corr : w.corrections) {
    if (reduced) {
      GroupWord g;
      for (std::size_t j = 0; j < corr.letters.size(); ++j)
        if (corr.reduced[j] != 0) g.letters.emplace_back(corr.letters[j], corr.reduced[j]);
      acc *= group.evaluate(g);
    } else {
      RationalWord r;
      for (std::size_t j = 0; j < corr.letters.size(); ++j)
        r.emplace_back(corr.letters[j], corr.exact[j]);
      acc *= evaluate_rational_word(group, r);
    }
  }
  return acc;
}

std::string identity_word_text(const HallBasis& basis, const IdentityWord& w) {
  std::ostringstream out;
  out << "p = " << w.p << ", trivial modulo degree " << w.target_degree << ", exponents modulo "
      << w.p << "^" << w.modulus_exponent << "\n";
  out << "seed: " << word_to_text(basis, w.seed);
  for (const Correction& corr : w.corrections) {
    out << "\ndeg " << corr.n << ":";
    if (corr.trivial()) {
      out << " (trivial)";
      continue;
    }
    for (std::size_t j = 0; j < corr.letters.size(); ++j)
      out << " " << basis.name(corr.letters[j]) << "^(" << corr.exact[j].get_str() << ")";
  }
  return out.str();
}

namespace {

struct ShiftedCandidate {
  std::size_t index = 0;
  unsigned u = 0, v = 0, w = 0;
  TPoly cx, cy;

  ShiftedCandidate(std::size_t index_, unsigned u_, unsigned v_, unsigned w_, TPoly cx_, TPoly cy_)
      : index(index_), u(u_), v(v_), w(w_), cx(std::move(cx_)), cy(std::move(cy_)) {}
};

// Coefficient vector of (cx, cy) pairs over a shared monomial support.
std::vector<std::pair<int, Mono>> pair_support(const std::vector<const TPoly*>& polys_x,
                                               const std::vector<const TPoly*>& polys_y,
                                               const VarSetPtr& vars) {
  std::vector<std::pair<int, Mono>> cols;
  for (const TPoly* t : polys_x)
    for (const auto& [m, c] : t->normal().terms()) cols.emplace_back(0, m);
  for (const TPoly* t : polys_y)
    for (const auto& [m, c] : t->normal().terms()) cols.emplace_back(1, m);
  std::sort(cols.begin(), cols.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return mono_less(*vars, a.second, b.second);
  });
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  return cols;
}

}  // namespace

Char2SearchOutcome char2_correction_search(const Char2Context& ctx, const Unit<F2Poly>& g,
                                           unsigned target_weight,
                                           const std::vector<Unit<F2Poly>>& catalog,
                                           unsigned exponent_bound) {
  GoodnessCertificate cert_g = invariants_of(g);
  if (!cert_g.good) throw domain_error("char2 correction: g is not good");
  if (*cert_g.ibar + 8 > ctx.cap())
    throw domain_error("char2 correction: cap exhausted; increase the cap to at least 8 beyond "
                       "the minimal degree of g");

  Char2SearchOutcome out;
  Unit<F2Poly> gx = phi_x(ctx, g);
  out.before = invariants_of(gx);
  if (!out.before.good)
    throw domain_error("char2 correction: the x-transport of g is not good");
  const MinComponentX target = *out.before.min_x;

  if (catalog.empty()) {
    out.note = "not found: empty catalog";
    return out;
  }

  const TPoly theta = TPoly::theta(ctx.cap());
  const TPoly delta = TPoly::delta(ctx.cap());
  std::vector<ShiftedCandidate> cands;
  for (std::size_t j = 0; j < catalog.size(); ++j) {
    GoodnessCertificate cert = invariants_of(catalog[j]);
    if (!cert.good)
      throw domain_error("char2 correction: catalog element " + std::to_string(j) +
                         " is not good");
    const MinComponentX& m = *cert.min_x;
    if (target.n < m.n + 8) continue;
    unsigned dn = target.n - m.n - 8;
    if (dn % 4 != 0) continue;
    unsigned u = dn / 4;
    if (target.i < m.i + 8 + 4 * u) continue;
    unsigned rest = target.i - m.i - 8 - 4 * u;
    for (unsigned w = 0; 8 * w <= rest; ++w) {
      unsigned v = rest - 8 * w;
      unsigned total = u + v + w;
      if (total < target_weight || total > exponent_bound) continue;
      TPoly factor = TPoly::one(ctx.cap()).lambda_shift(8 + 4 * u);
      for (unsigned s = 0; s < v; ++s) factor *= theta;
      for (unsigned s = 0; s < 2 * w; ++s) factor *= delta;
      cands.emplace_back(j, u, v, w, factor * m.cx, factor * m.cy);
    }
  }
  if (cands.empty()) {
    out.note = "not found: no catalog element matches the minimal bidegree under the "
               "exponent bounds";
    return out;
  }

  std::vector<const TPoly*> px{&target.cx}, py{&target.cy};
  for (const auto& c : cands) {
    px.push_back(&c.cx);
    py.push_back(&c.cy);
  }
  auto support = pair_support(px, py, target.cx.normal().vars());

  GF2 K;
  Matrix<GF2> A(K, support.size(), cands.size());
  std::vector<GF2::Value> rhs(support.size(), 0);
  for (std::size_t i = 0; i < support.size(); ++i) {
    const auto& [slot, mono] = support[i];
    rhs[i] = slot == 0 ? target.cx.normal().coeff(mono) : target.cy.normal().coeff(mono);
    for (std::size_t j = 0; j < cands.size(); ++j)
      A.at(i, j) = slot == 0 ? cands[j].cx.normal().coeff(mono) : cands[j].cy.normal().coeff(mono);
  }
  auto sol = solve(std::move(A), std::move(rhs));
  if (!sol) {
    out.note = "not found: the minimal component is outside the catalog span under the bounds";
    return out;
  }

  Unit<F2Poly> prod = Unit<F2Poly>::one(ctx.X().value().e11);
  for (std::size_t j = 0; j < cands.size(); ++j) {
    if ((*sol)[j] == 0) continue;
    const ShiftedCandidate& c = cands[j];
    out.factors.push_back(Char2SearchFactor{c.index, c.u, c.v, c.w});
    Unit<F2Poly> hj = catalog[c.index];
    for (unsigned s = 0; s < c.u; ++s) hj = phi_x(ctx, hj);
    for (unsigned s = 0; s < c.v; ++s) hj = phi_y(ctx, hj);
    for (unsigned s = 0; s < c.w; ++s) hj = psi(ctx, hj);
    prod *= hj;
  }
  if (out.factors.empty()) {
    out.note = "not found: the solver selected no factors";
    return out;
  }

  out.found = true;
  Unit<F2Poly> h = phi_x(ctx, prod);
  out.correction = h;
  Unit<F2Poly> ghx = phi_x(ctx, g * h);
  if (ghx.is_one()) {
    out.postcondition = true;
    out.note = "corrected transport is trivial at the cap";
    return out;
  }
  GoodnessCertificate after = invariants_of(ghx);
  out.after = after;
  if (!after.nbar) {
    out.postcondition = true;
    out.note = "no x-level component below the cap after correction";
    return out;
  }
  const unsigned nb = *out.before.nbar, ib = *out.before.ibar;
  out.postcondition =
      (*after.nbar > nb) || (*after.nbar == nb && after.ibar && *after.ibar > ib);
  if (!out.postcondition) out.note = "assembled correction failed the postcondition";
  return out;
}

}  // namespace gm2
