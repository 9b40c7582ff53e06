#include <gm2/verify.hpp>

#include <gm2/char2.hpp>
#include <gm2/hall.hpp>
#include <gm2/lie_span.hpp>
#include <gm2/linalg.hpp>
#include <gm2/pairs.hpp>

#include <algorithm>
#include <random>
#include <utility>

namespace gm2 {

namespace {

template <class R>
Poly<R> neg(const Poly<R>& p) {
  return p.scaled(p.ring().from_long(-1));
}

template <class R>
Mat2<Poly<R>> scalar_of(const Mat2<Poly<R>>&, const Poly<R>& s) {
  return Mat2<Poly<R>>::scalar(s);
}

// The identities of the four lemma families on one concrete pair (a, b).
// general == true also checks the characteristic-independent forms; char2
// selects the signs that require 2 = 0.
template <class R>
bool comm_trace_expansion_char2(const Mat2<Poly<R>>& a, const Mat2<Poly<R>>& b) {
  auto lhs = lie_bracket(a, b);
  auto rhs = b.scaled(a.trace()) + a.scaled(b.trace()) +
             scalar_of(a, (a * b).trace() + a.trace() * b.trace());
  return lhs == rhs;
}

template <class R>
bool comm_iterate_char2(const Mat2<Poly<R>>& a, const Mat2<Poly<R>>& b) {
  auto c = lie_bracket(a, b);
  return lie_bracket(c, a) == c.scaled(a.trace());
}

template <class R>
bool anticomm_trace_expansion(const Mat2<Poly<R>>& a, const Mat2<Poly<R>>& b) {
  auto lhs = a * b + b * a;
  auto rhs = b.scaled(a.trace()) + a.scaled(b.trace()) +
             scalar_of(a, (a * b).trace() + neg(a.trace() * b.trace()));
  return lhs == rhs;
}

template <class R>
bool comm_iterate_general(const Mat2<Poly<R>>& a, const Mat2<Poly<R>>& b) {
  auto c = lie_bracket(a, b);
  auto ca = c * a;
  return lie_bracket(c, a) == c.scaled(neg(a.trace())) + ca + ca;
}

template <class R>
bool traceless_square_central(const Mat2<Poly<R>>& a, bool char2) {
  if (!a.trace().is_zero()) return false;
  auto d = a.det();
  return a * a == scalar_of(a, char2 ? d : neg(d));
}

template <class R>
bool comm_power_traces(const Mat2<Poly<R>>& a, const Mat2<Poly<R>>& b, unsigned max_n) {
  auto c = lie_bracket(a, b);
  for (unsigned n = 0; n <= max_n; ++n) {
    if (!c.trace().is_zero()) return false;
    c = c * b;
  }
  return true;
}

template <class R>
bool pseudo_square_absorption(const Mat2<Poly<R>>& x, const Mat2<Poly<R>>& y) {
  auto xy = x * y, yx = y * x;
  bool ok = x * x == x.scaled(x.trace());
  ok = ok && y * y == y.scaled(y.trace());
  ok = ok && xy * xy == xy.scaled(xy.trace());
  ok = ok && yx * yx == yx.scaled(xy.trace());
  return ok;
}

template <class R>
bool pseudo_sandwich(const Mat2<Poly<R>>& x, const Mat2<Poly<R>>& y) {
  auto vth = (x * y).trace();
  bool ok = x * y * x == x.scaled(vth);
  ok = ok && y * x * y == y.scaled(vth);
  return ok;
}

template <class R>
bool pseudo_bracket_square(const Mat2<Poly<R>>& x, const Mat2<Poly<R>>& y, bool char2) {
  auto c = lie_bracket(x, y);
  auto vth = (x * y).trace();
  auto mixed = x.trace() * y.trace() * vth;
  auto value = vth * vth + (char2 ? mixed : neg(mixed));
  return c * c == scalar_of(x, value);
}

// Random constant matrices over the ring, including the rank-one shapes.
template <class R, class Sampler>
struct ConstFrame {
  R ring;
  VarSetPtr vars;
  Sampler next;

  Poly<R> value() { return Poly<R>::constant(ring, vars, 2, next()); }
  Poly<R> zero() { return Poly<R>::zero(ring, vars, 2); }
  Mat2<Poly<R>> dense() { return Mat2<Poly<R>>(value(), value(), value(), value()); }
  Mat2<Poly<R>> traceless() {
    auto d = value();
    return Mat2<Poly<R>>(d, value(), value(), neg(d));
  }
  Mat2<Poly<R>> row() { return Mat2<Poly<R>>(value(), value(), zero(), zero()); }
  Mat2<Poly<R>> column() { return Mat2<Poly<R>>(value(), zero(), value(), zero()); }
};

struct Suite {
  std::string name;
  std::vector<CheckResult>* out;

  void add(std::string id, bool passed, std::string detail = "") {
    out->push_back({name, std::move(id), passed, std::move(detail)});
  }
};

template <class R, class Sampler>
void lemma_checks(Suite& suite, const std::string& prefix, R ring, unsigned cap, unsigned trials,
                  Sampler sampler, bool char2) {
  GenericPair<R> generic = make_generic8(ring, cap);
  GenericPair<R> pseudo = make_pseudo4(ring, cap);
  ConstFrame<R, Sampler> frame{ring, generic.alphabet, std::move(sampler)};
  const std::string scope = "symbolic cap " + std::to_string(cap) + " and " +
                            std::to_string(trials) + " random samples";

  auto run = [&](const std::string& id, auto&& symbolic, auto&& random) {
    bool ok = symbolic();
    for (unsigned t = 0; ok && t < trials; ++t) ok = random();
    suite.add(prefix + id, ok, scope);
  };

  const auto& a = generic.x;
  const auto& b = generic.y;
  const auto& px = pseudo.x;
  const auto& py = pseudo.y;

  if (char2) {
    run(
        "comm-trace-expansion", [&] { return comm_trace_expansion_char2(a, b); },
        [&] { return comm_trace_expansion_char2(frame.dense(), frame.dense()); });
    run(
        "comm-iterate-trace", [&] { return comm_iterate_char2(a, b); },
        [&] { return comm_iterate_char2(frame.dense(), frame.dense()); });
    run(
        "comm-power-trace", [&] { return comm_power_traces(a, b, 6); },
        [&] { return comm_power_traces(frame.dense(), frame.dense(), 6); });
  } else {
    run(
        "anticomm-trace-expansion", [&] { return anticomm_trace_expansion(a, b); },
        [&] { return anticomm_trace_expansion(frame.dense(), frame.dense()); });
    run(
        "comm-iterate-trace", [&] { return comm_iterate_general(a, b); },
        [&] { return comm_iterate_general(frame.dense(), frame.dense()); });
  }
  run(
      "traceless-square-central", [&] { return traceless_square_central(lie_bracket(a, b), char2); },
      [&] { return traceless_square_central(frame.traceless(), char2); });

  run(
      "pseudo-square-absorption", [&] { return pseudo_square_absorption(px, py); },
      [&] { return pseudo_square_absorption(frame.row(), frame.column()); });
  run(
      "pseudo-sandwich", [&] { return pseudo_sandwich(px, py); },
      [&] { return pseudo_sandwich(frame.row(), frame.column()); });
  run(
      "pseudo-bracket-square", [&] { return pseudo_bracket_square(px, py, char2); },
      [&] { return pseudo_bracket_square(frame.row(), frame.column(), char2); });
}

}  // namespace

std::vector<CheckResult> verify_trace_lemmas(LemmaRing ring, unsigned cap, unsigned trials,
                                             std::uint64_t seed) {
  if (cap < 4) throw range_error("verify_trace_lemmas: cap must be at least 4");
  if (trials < 1) throw range_error("verify_trace_lemmas: trials must be positive");
  std::vector<CheckResult> out;
  Suite suite{"trace-lemmas", &out};
  auto rng = std::make_shared<std::mt19937_64>(seed);

  switch (ring) {
    case LemmaRing::char2: {
      auto sample = [rng] { return static_cast<std::uint8_t>((*rng)() & 1); };
      lemma_checks(suite, "gf2-", GF2{}, cap, trials, sample, true);
      break;
    }
    case LemmaRing::rational: {
      auto sample = [rng] {
        mpq_class q(static_cast<long>((*rng)() % 19) - 9, static_cast<long>(1 + (*rng)() % 7));
        q.canonicalize();
        return q;
      };
      lemma_checks(suite, "rat-", RationalRing{}, cap, trials, sample, false);
      break;
    }
    case LemmaRing::modular: {
      ZmodPrimePower zk;
      zk.modulus = 9;
      auto sample = [rng, zk] { return zk.from_long(static_cast<long>((*rng)() % 9)); };
      lemma_checks(suite, "mod-", zk, cap, trials, sample, false);
      break;
    }
  }
  return out;
}

std::vector<CheckResult> verify_j_closure(unsigned trials, std::uint64_t seed) {
  std::vector<CheckResult> out;
  Suite suite{"j-closure", &out};
  Char2Context ctx(10);
  ClosureReport report = j_ideal_closure_check(ctx, trials, seed);
  for (std::size_t i = 0; i < report.rules.size(); ++i)
    suite.add("product-rule-" + std::to_string(i + 1), report.rules[i].second,
              report.rules[i].first);
  suite.add("random-closure", report.all_passed,
            std::to_string(report.random_products) + " random products decomposed");
  return out;
}

std::vector<CheckResult> verify_module_formulas() {
  std::vector<CheckResult> out;
  Suite suite{"module-formulas", &out};

  struct PairCase {
    const char* prefix;
    LieContext ctx;
  };
  std::vector<PairCase> cases;
  cases.push_back({"generic-", LieContext::generic(8)});
  cases.push_back({"pseudo-", LieContext::pseudo(8)});

  for (const auto& c : cases) {
    const auto& x = c.ctx.pair().x;
    const auto& y = c.ctx.pair().y;
    auto xy = c.ctx.br_xy();
    suite.add(std::string(c.prefix) + "bracket-xx",
              lie_bracket_left({x, y, x, x}) == xy.scaled(c.ctx.alpha()),
              "[x,y,x,x] equals alpha [x,y]");
    suite.add(std::string(c.prefix) + "bracket-xy",
              lie_bracket_left({x, y, x, y}) == xy.scaled(c.ctx.beta()),
              "[x,y,x,y] equals beta [x,y]");
    suite.add(std::string(c.prefix) + "bracket-yx",
              lie_bracket_left({x, y, y, x}) == xy.scaled(c.ctx.beta()),
              "[x,y,y,x] equals beta [x,y]");
    suite.add(std::string(c.prefix) + "bracket-yy",
              lie_bracket_left({x, y, y, y}) == xy.scaled(c.ctx.gamma()),
              "[x,y,y,y] equals gamma [x,y]");
  }
  return out;
}

std::vector<CheckResult> verify_shapes() {
  std::vector<CheckResult> out;
  Suite suite{"shapes", &out};
  Char2Context ctx(12);

  auto c = group_commutator(ctx.X(), ctx.Y());
  auto derived = commutator_shape_check(ctx, c, false);
  suite.add("derived-bracket-shape", derived.commutator_shape, derived.failure);

  auto cx = group_commutator(c, ctx.X());
  auto second = commutator_shape_check(ctx, group_commutator(c, cx), true);
  bool second_ok = second.commutator_shape && second.second_derived_in_J;
  second_ok = second_ok && second.n_of.has_value();
  suite.add("second-derived-ideal", second_ok, second.failure);

  HallBasis basis(2);
  GroupWord w{{{basis.at_weight(2).front(), mpz_class(1)}}};
  auto word = commutator_shape_check_word(ctx, basis, w, false);
  suite.add("word-evaluation-shape", word.commutator_shape, word.failure);
  return out;
}

std::vector<CheckResult> verify_transport_suite() {
  std::vector<CheckResult> out;
  Suite suite{"transport", &out};
  Char2Context ctx(28);

  auto c = group_commutator(ctx.X(), ctx.Y());
  auto h = phi_x(ctx, group_commutator(c, group_commutator(c, ctx.X())));
  auto a = h;
  for (int i = 0; i < 8; ++i) a = phi_y(ctx, a);
  std::vector<Unit<F2Poly>> catalog{h, a, psi(ctx, h)};
  TransportReport report = verify_transport(ctx, catalog);

  auto family = [&](const std::string& id, const char* tag) {
    bool ok = true;
    unsigned count = 0;
    std::string why;
    for (const auto& check : report.checks) {
      if (check.name.find(tag) == std::string::npos) continue;
      ++count;
      if (!check.passed && why.empty()) why = check.name + ": " + check.detail;
      ok = ok && check.passed;
    }
    suite.add(id, ok && count > 0,
              why.empty() ? std::to_string(count) + " checks on " +
                                std::to_string(report.elements) + " elements"
                          : why);
  };
  family("transport-phi-x", " phi_x ");
  family("transport-phi-y", " phi_y ");
  family("transport-psi", " psi ");

  bool additive = report.pairs == 1;
  std::string why;
  for (const auto& check : report.checks) {
    if (check.name.find('*') == std::string::npos) continue;
    if (!check.passed && why.empty()) why = check.name + ": " + check.detail;
    additive = additive && check.passed;
  }
  suite.add("transport-additivity", additive,
            why.empty() ? std::to_string(report.pairs) + " qualifying pair, " +
                              std::to_string(report.excluded_pairs) + " excluded"
                        : why);
  return out;
}

VerifyReport run_verification(const VerifyOptions& opts) {
  VerifyReport report;
  auto append = [&](std::vector<CheckResult> checks) {
    for (auto& c : checks) report.checks.push_back(std::move(c));
  };

  // Suites in suite-name order.
  append(verify_j_closure(opts.trials, opts.seed));
  append(verify_module_formulas());
  append(verify_shapes());
  append(verify_trace_lemmas(LemmaRing::char2, opts.cap, opts.trials, opts.seed));
  append(verify_trace_lemmas(LemmaRing::rational, opts.cap, opts.trials, opts.seed));
  append(verify_trace_lemmas(LemmaRing::modular, opts.cap, opts.trials, opts.seed));
  append(verify_transport_suite());

  if (!opts.inject_failure.empty()) {
    bool found = false;
    for (auto& c : report.checks)
      if (c.id == opts.inject_failure) {
        c.passed = false;
        c.detail = "forced failure (fixture)";
        found = true;
      }
    if (!found)
      throw range_error("run_verification: unknown check id: " + opts.inject_failure);
  }

  for (const auto& c : report.checks)
    if (!c.passed) ++report.failed;
  report.all_passed = report.failed == 0;
  return report;
}

}  // namespace gm2
