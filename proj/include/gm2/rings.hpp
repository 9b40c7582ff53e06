#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "gm2/errors.hpp"

namespace gm2 {

// Coefficient rings. Each ring object supplies a Value type, constants, exact
// arithmetic on values, unit tests/inversion, and decimal/fraction text form.
// Ring objects compare equal iff they denote the same ring; polynomials carry
// their ring object so stateful rings (Z mod p^k) stay self-describing.

struct GF2 {
  using Value = std::uint8_t;

  Value zero() const { return 0; }
  Value one() const { return 1; }
  Value add(Value a, Value b) const { return a ^ b; }
  Value sub(Value a, Value b) const { return a ^ b; }
  Value neg(Value a) const { return a; }
  Value mul(Value a, Value b) const { return a & b; }
  bool is_zero(Value a) const { return a == 0; }
  bool is_one(Value a) const { return a == 1; }
  bool is_unit(Value a) const { return a == 1; }
  Value inv(Value a) const {
    if (a != 1) throw unit_error("GF(2): 0 has no inverse");
    return 1;
  }
  Value from_long(long v) const { return static_cast<Value>(v & 1); }
  Value from_mpz(const mpz_class& z) const { return static_cast<Value>(mpz_odd_p(z.get_mpz_t()) ? 1 : 0); }
  bool eq(Value a, Value b) const { return a == b; }
  std::string str(Value a) const { return a ? "1" : "0"; }
  Value parse(const std::string& s) const {
    if (s == "0") return 0;
    if (s == "1") return 1;
    throw domain_error("GF(2): cannot parse coefficient '" + s + "'");
  }
  std::string name() const { return "gf2"; }
  bool operator==(const GF2&) const = default;
};

struct RationalRing {
  using Value = mpq_class;

  Value zero() const { return Value(0); }
  Value one() const { return Value(1); }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value neg(const Value& a) const { return -a; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  bool is_zero(const Value& a) const { return sgn(a) == 0; }
  bool is_one(const Value& a) const { return a == 1; }
  bool is_unit(const Value& a) const { return sgn(a) != 0; }
  Value inv(const Value& a) const {
    if (sgn(a) == 0) throw unit_error("rationals: 0 has no inverse");
    return 1 / a;
  }
  Value from_long(long v) const { return Value(v); }
  Value from_mpz(const mpz_class& z) const { return Value(z); }
  bool eq(const Value& a, const Value& b) const { return a == b; }
  std::string str(const Value& a) const { return a.get_str(); }
  Value parse(const std::string& s) const {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw domain_error("rationals: cannot parse coefficient '" + s + "'");
    q.canonicalize();
    return q;
  }
  std::string name() const { return "rational"; }
  bool operator==(const RationalRing&) const = default;
};

// Z / p^k for a prime p. Values are canonical representatives in [0, p^k).
struct ZmodPrimePower {
  using Value = mpz_class;

  unsigned p = 2;
  unsigned k = 1;
  mpz_class modulus = 2;

  ZmodPrimePower() = default;
  ZmodPrimePower(unsigned prime, unsigned power) : p(prime), k(power) {
    if (prime < 2 || power < 1) throw range_error("Z mod p^k: need p >= 2, k >= 1");
    mpz_ui_pow_ui(modulus.get_mpz_t(), prime, power);
  }

  Value reduce(const mpz_class& a) const {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), modulus.get_mpz_t());
    return r;
  }
  Value zero() const { return 0; }
  Value one() const { return reduce(1); }
  Value add(const Value& a, const Value& b) const { return reduce(a + b); }
  Value sub(const Value& a, const Value& b) const { return reduce(a - b); }
  Value neg(const Value& a) const { return reduce(-a); }
  Value mul(const Value& a, const Value& b) const { return reduce(a * b); }
  bool is_zero(const Value& a) const { return sgn(a) == 0; }
  bool is_one(const Value& a) const { return a == one(); }
  bool is_unit(const Value& a) const { return mpz_divisible_ui_p(a.get_mpz_t(), p) == 0 && sgn(a) != 0; }
  Value inv(const Value& a) const {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), modulus.get_mpz_t()) == 0)
      throw unit_error("Z mod " + modulus.get_str() + ": " + a.get_str() + " has no inverse");
    return r;
  }
  Value from_long(long v) const { return reduce(mpz_class(v)); }
  Value from_mpz(const mpz_class& z) const { return reduce(z); }
  bool eq(const Value& a, const Value& b) const { return a == b; }
  std::string str(const Value& a) const { return a.get_str(); }
  Value parse(const std::string& s) const {
    mpz_class z;
    if (z.set_str(s, 10) != 0) throw domain_error("Z mod p^k: cannot parse coefficient '" + s + "'");
    return reduce(z);
  }
  std::string name() const { return "z/" + std::to_string(p) + "^" + std::to_string(k); }
  bool operator==(const ZmodPrimePower& o) const { return p == o.p && k == o.k; }
};

// p-adic valuation of an exact rational; q must be nonzero.
inline long padic_valuation(const mpq_class& q, unsigned long prime) {
  if (prime < 2) throw range_error("padic_valuation: prime must be >= 2");
  if (sgn(q) == 0) throw domain_error("padic_valuation: valuation of 0 is infinite");
  mpz_class pz(static_cast<unsigned long>(prime)), tmp;
  long vn = static_cast<long>(mpz_remove(tmp.get_mpz_t(), q.get_num().get_mpz_t(), pz.get_mpz_t()));
  long vd = static_cast<long>(mpz_remove(tmp.get_mpz_t(), q.get_den().get_mpz_t(), pz.get_mpz_t()));
  return vn - vd;
}

inline bool padic_integral(const mpq_class& q, unsigned long prime) {
  return sgn(q) == 0 || padic_valuation(q, prime) >= 0;
}

// Exact binomial coefficient C(e, j) for integer (possibly negative) e.
inline mpz_class binomial(const mpz_class& e, unsigned long j) {
  mpz_class num(1);
  for (unsigned long i = 0; i < j; ++i) num *= e - static_cast<long>(i);
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), j);
  mpz_class r;
  mpz_divexact(r.get_mpz_t(), num.get_mpz_t(), fact.get_mpz_t());
  return r;
}

// Exact binomial coefficient C(c, j) for rational c.
inline mpq_class binomial(const mpq_class& c, unsigned long j) {
  mpq_class num(1);
  for (unsigned long i = 0; i < j; ++i) num *= c - static_cast<long>(i);
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), j);
  return num / mpq_class(fact);
}

}  // namespace gm2
