#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gm2/errors.hpp"
#include "gm2/rings.hpp"
#include "gm2/varset.hpp"

namespace gm2 {

// Truncated multivariate polynomial: an element of R[vars] / (degree > cap),
// i.e. homogeneous components of weighted degree <= cap are retained and all
// higher components are dropped. The cap is part of the value; binary
// operations require identical ring, variable set and cap. Terms are kept in
// increasing graded-lex order with no zero coefficients (canonical form).
template <class R>
class Poly {
 public:
  using Ring = R;
  using Value = typename R::Value;
  using Term = std::pair<Mono, Value>;

  Poly(R ring, VarSetPtr vars, unsigned cap)
      : ring_(std::move(ring)), vars_(std::move(vars)), cap_(cap) {}

  static Poly zero(R ring, VarSetPtr vars, unsigned cap) { return Poly(ring, vars, cap); }

  static Poly constant(R ring, VarSetPtr vars, unsigned cap, Value c) {
    Poly p(ring, vars, cap);
    if (!p.ring_.is_zero(c)) p.terms_.emplace_back(Mono::unit(), std::move(c));
    return p;
  }

  static Poly one(R ring, VarSetPtr vars, unsigned cap) {
    return constant(ring, vars, cap, ring.one());
  }

  static Poly variable(R ring, VarSetPtr vars, unsigned cap, std::size_t idx) {
    if (idx >= vars->arity()) throw range_error("Poly::variable: index out of range");
    return monomial(ring, vars, cap, Mono::var(idx), ring.one());
  }

  static Poly monomial(R ring, VarSetPtr vars, unsigned cap, const Mono& m, Value c) {
    Poly p(ring, vars, cap);
    if (!p.ring_.is_zero(c) && m.degree(*vars) <= cap) p.terms_.emplace_back(m, std::move(c));
    return p;
  }

  const R& ring() const { return ring_; }
  const VarSetPtr& vars() const { return vars_; }
  unsigned cap() const { return cap_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_[0].first.is_unit() && ring_.is_one(terms_[0].second);
  }

  Value coeff(const Mono& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [this](const Term& t, const Mono& k) {
      return mono_less(*vars_, t.first, k);
    });
    if (it != terms_.end() && it->first == m) return it->second;
    return ring_.zero();
  }

  Value constant_term() const { return coeff(Mono::unit()); }

  // Smallest / largest degree of a nonzero component; nullopt for the zero polynomial.
  std::optional<unsigned> min_degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.front().first.degree(*vars_);
  }
  std::optional<unsigned> max_degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.back().first.degree(*vars_);
  }

  bool operator==(const Poly& o) const {
    if (!compatible(o)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (!(terms_[i].first == o.terms_[i].first)) return false;
      if (!ring_.eq(terms_[i].second, o.terms_[i].second)) return false;
    }
    return true;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.second = ring_.neg(t.second);
    return r;
  }

  Poly operator+(const Poly& o) const {
    require_compatible(o, "+");
    Poly r(ring_, vars_, cap_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() ||
          (i < terms_.size() && mono_less(*vars_, terms_[i].first, o.terms_[j].first))) {
        r.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size() || mono_less(*vars_, o.terms_[j].first, terms_[i].first)) {
        r.terms_.push_back(o.terms_[j++]);
      } else {
        Value s = ring_.add(terms_[i].second, o.terms_[j].second);
        if (!ring_.is_zero(s)) r.terms_.emplace_back(terms_[i].first, std::move(s));
        ++i, ++j;
      }
    }
    return r;
  }

  Poly operator-(const Poly& o) const { return *this + (-o); }

  Poly operator*(const Poly& o) const {
    require_compatible(o, "*");
    std::unordered_map<Mono, Value, MonoHash> acc;
    for (const auto& [ma, ca] : terms_) {
      unsigned da = ma.degree(*vars_);
      for (const auto& [mb, cb] : o.terms_) {
        if (da + mb.degree(*vars_) > cap_) continue;
        Value prod = ring_.mul(ca, cb);
        if (ring_.is_zero(prod)) continue;
        auto [it, fresh] = acc.emplace(ma * mb, prod);
        if (!fresh) it->second = ring_.add(it->second, prod);
      }
    }
    return from_map(ring_, vars_, cap_, std::move(acc));
  }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const Value& c) const {
    Poly r(ring_, vars_, cap_);
    if (ring_.is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& [m, v] : terms_) {
      Value p = ring_.mul(v, c);
      if (!ring_.is_zero(p)) r.terms_.emplace_back(m, std::move(p));
    }
    return r;
  }

  Poly mul_monomial(const Mono& m, const Value& c) const {
    Poly r(ring_, vars_, cap_);
    if (ring_.is_zero(c)) return r;
    unsigned dm = m.degree(*vars_);
    r.terms_.reserve(terms_.size());
    for (const auto& [mm, v] : terms_) {
      if (mm.degree(*vars_) + dm > cap_) break;
      Value p = ring_.mul(v, c);
      if (!ring_.is_zero(p)) r.terms_.emplace_back(mm * m, std::move(p));
    }
    // Multiplying by a monomial preserves graded-lex order.
    return r;
  }

  Poly homogeneous_component(unsigned d) const {
    Poly r(ring_, vars_, cap_);
    if (d > cap_) throw range_error("homogeneous_component: degree above cap");
    for (const auto& t : terms_)
      if (t.first.degree(*vars_) == d) r.terms_.push_back(t);
    return r;
  }

  // Lower the cap (forget components of degree > new_cap).
  Poly truncated(unsigned new_cap) const {
    if (new_cap > cap_)
      throw structural_error("truncated: cannot raise the cap of a truncated class");
    Poly r(ring_, vars_, new_cap);
    for (const auto& t : terms_) {
      if (t.first.degree(*vars_) > new_cap) break;
      r.terms_.push_back(t);
    }
    return r;
  }

  // Reinterpret at a higher cap. Only sound when the value is known to be an
  // exact polynomial (every component above the old cap is genuinely zero).
  Poly lifted(unsigned new_cap) const {
    if (new_cap < cap_) return truncated(new_cap);
    Poly r(ring_, vars_, new_cap);
    r.terms_ = terms_;
    return r;
  }

  // Variable substitution into another alphabet: variable i maps to the
  // variable target_map[i] of target, or to 0 when target_map[i] is empty.
  Poly substituted(const VarSetPtr& target,
                   const std::vector<std::optional<std::size_t>>& target_map) const {
    if (target_map.size() != vars_->arity())
      throw structural_error("substituted: map arity mismatch");
    Poly r(ring_, target, cap_);
    std::unordered_map<Mono, Value, MonoHash> acc;
    for (const auto& [m, c] : terms_) {
      Mono img;
      bool dead = false;
      for (std::size_t i = 0; i < vars_->arity() && !dead; ++i) {
        if (m.e[i] == 0) continue;
        if (!target_map[i]) {
          dead = true;
        } else {
          std::size_t j = *target_map[i];
          unsigned s = unsigned(img.e[j]) + unsigned(m.e[i]);
          if (s > 255) throw range_error("substituted: exponent overflow");
          img.e[j] = static_cast<std::uint8_t>(s);
        }
      }
      if (dead || img.degree(*target) > cap_) continue;
      auto [it, fresh] = acc.emplace(img, c);
      if (!fresh) it->second = ring_.add(it->second, c);
    }
    return from_map(ring_, target, cap_, std::move(acc));
  }

  bool compatible(const Poly& o) const {
    return ring_ == o.ring_ && cap_ == o.cap_ &&
           (vars_ == o.vars_ || *vars_ == *o.vars_);
  }

  void require_compatible(const Poly& o, const char* op) const {
    if (!compatible(o))
      throw structural_error(std::string("Poly: operands of '") + op +
                             "' differ in ring, variables or cap");
  }

  static Poly from_map(const R& ring, const VarSetPtr& vars, unsigned cap,
                       std::unordered_map<Mono, Value, MonoHash>&& acc) {
    Poly r(ring, vars, cap);
    r.terms_.reserve(acc.size());
    for (auto& [m, v] : acc)
      if (!ring.is_zero(v)) r.terms_.emplace_back(m, std::move(v));
    std::sort(r.terms_.begin(), r.terms_.end(), [&](const Term& a, const Term& b) {
      return mono_less(*vars, a.first, b.first);
    });
    return r;
  }

  // Internal: add a single term, keeping canonical form.
  void add_term(const Mono& m, const Value& c) {
    if (ring_.is_zero(c) || m.degree(*vars_) > cap_) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [this](const Term& t, const Mono& k) {
      return mono_less(*vars_, t.first, k);
    });
    if (it != terms_.end() && it->first == m) {
      it->second = ring_.add(it->second, c);
      if (ring_.is_zero(it->second)) terms_.erase(it);
    } else {
      terms_.emplace(it, m, c);
    }
  }

 private:
  R ring_;
  VarSetPtr vars_;
  unsigned cap_;
  std::vector<Term> terms_;
};

// Multiplicative inverse of a unit (constant term invertible in R), as the
// truncated geometric series.
template <class R>
Poly<R> invert_unit(const Poly<R>& f) {
  const R& ring = f.ring();
  auto c = f.constant_term();
  if (!ring.is_unit(c)) throw unit_error("invert_unit: constant term is not a unit");
  auto ci = ring.inv(c);
  Poly<R> one = Poly<R>::one(ring, f.vars(), f.cap());
  Poly<R> u = one - f.scaled(ci);  // min degree >= 1
  if (u.is_zero()) return Poly<R>::constant(ring, f.vars(), f.cap(), ci);
  unsigned m = *u.min_degree();
  Poly<R> r = one;
  for (unsigned i = 0; i < f.cap() / m; ++i) r = one + u * r;
  return r.scaled(ci);
}

// Exact quotient q with f = q * g in R[vars] (no truncation effects: the
// division algorithm never leaves degree <= cap when deg f <= cap). Throws
// divisibility_error when no exact quotient exists.
template <class R>
Poly<R> exact_divide(const Poly<R>& f, const Poly<R>& g) {
  f.require_compatible(g, "exact_divide");
  const R& ring = f.ring();
  if (g.is_zero()) throw divisibility_error("exact_divide: division by zero");
  Poly<R> r = f;
  Poly<R> q(ring, f.vars(), f.cap());
  const Mono& lg = g.terms().back().first;
  const auto& cg = g.terms().back().second;
  if (!ring.is_unit(cg))
    throw divisibility_error("exact_divide: leading coefficient of divisor is not a unit");
  auto cgi = ring.inv(cg);
  while (!r.is_zero()) {
    const Mono& lr = r.terms().back().first;
    if (!lg.divides(lr))
      throw divisibility_error("exact_divide: not an exact multiple");
    Mono mq = lr / lg;
    auto cq = ring.mul(r.terms().back().second, cgi);
    q.add_term(mq, cq);
    r -= g.mul_monomial(mq, cq);
  }
  return q;
}

// Minimal p-adic valuation over all coefficients (rational coefficients).
// nullopt for the zero polynomial ("+infinity").
inline std::optional<long> min_valuation_padic(const Poly<RationalRing>& f, unsigned long prime) {
  std::optional<long> best;
  for (const auto& [m, c] : f.terms()) {
    long v = padic_valuation(c, prime);
    if (!best || v < *best) best = v;
  }
  return best;
}

inline std::optional<long> min_valuation_2adic(const Poly<RationalRing>& f) {
  return min_valuation_padic(f, 2);
}

using QPoly = Poly<RationalRing>;
using F2Poly = Poly<GF2>;
using ZkPoly = Poly<ZmodPrimePower>;

}  // namespace gm2
