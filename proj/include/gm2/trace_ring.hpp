#pragma once

#include <map>
#include <optional>

#include "gm2/poly.hpp"

namespace gm2 {

// The characteristic-2 trace ring T = GF(2)[t(x), t(y), t(xy)] of the
// determinant-zero pair. Values are kept in a normal form over the sform4
// alphabet (tx, ty, q, txy): q stands for the central scalar
// [x,y]^2 = txy^2 + tx ty txy (degree 4), and every monomial carries
// txy-exponent <= 1, via the rewriting txy^2 -> q + tx ty txy. This realizes
// T = S + txy S with S = GF(2)[tx, ty, q] free, and turns the tx-power
// filtration of T into a pure monomial grouping.
class TPoly {
 public:
  explicit TPoly(unsigned cap) : f_(GF2{}, sform4(), cap) {}

  static TPoly zero(unsigned cap) { return TPoly(cap); }
  static TPoly one(unsigned cap);
  static TPoly lambda(unsigned cap);    // t(x)
  static TPoly theta(unsigned cap);     // t(y)
  static TPoly vartheta(unsigned cap);  // t(xy)
  static TPoly delta(unsigned cap);     // [x,y]^2

  // Wraps a polynomial that is already in normal form; rejects others.
  static TPoly from_normal(F2Poly f);
  // Rewrites an arbitrary sform4 polynomial into normal form.
  static TPoly normalized(F2Poly f);
  // Converts from the free trace alphabet (tx, ty, txy).
  static TPoly from_trace3(const F2Poly& f);

  const F2Poly& normal() const { return f_; }
  unsigned cap() const { return f_.cap(); }
  bool is_zero() const { return f_.is_zero(); }
  bool is_one() const { return f_.is_one(); }
  bool operator==(const TPoly& o) const { return f_ == o.f_; }
  bool operator!=(const TPoly& o) const { return !(*this == o); }

  TPoly operator+(const TPoly& o) const { return TPoly(f_ + o.f_); }
  TPoly operator*(const TPoly& o) const { return normalized(f_ * o.f_); }
  TPoly& operator+=(const TPoly& o) { return *this = *this + o; }
  TPoly& operator*=(const TPoly& o) { return *this = *this * o; }

  std::optional<unsigned> min_degree() const { return f_.min_degree(); }
  std::optional<unsigned> max_degree() const { return f_.max_degree(); }
  TPoly homogeneous_component(unsigned d) const { return TPoly(f_.homogeneous_component(d)); }
  TPoly truncated(unsigned new_cap) const { return TPoly(f_.truncated(new_cap)); }
  TPoly lifted(unsigned new_cap) const { return TPoly(f_.lifted(new_cap)); }

  // Expansion into the free alphabet (tx, ty, txy), substituting
  // q -> txy^2 + tx ty txy.
  F2Poly to_trace3() const;

  // The S-module coordinates: value = s_even() + txy * s_odd(), both returned
  // over sform4 with txy-exponent 0 everywhere (elements of S).
  F2Poly s_even() const;
  F2Poly s_odd() const;

  // tx-power filtration. T decomposes as the direct sum over n >= 0 of
  // tx^n Tring, Tring = GF(2)[ty, q] + txy GF(2)[ty, q]; membership and layers
  // are read off the tx-exponents of the normal form.
  std::optional<unsigned> lambda_order() const;     // min tx-exponent; nullopt for 0
  bool in_lambda_power(unsigned n) const;           // member of tx^n T
  bool lambda_free() const;                         // tx-exponent 0 everywhere
  std::map<unsigned, TPoly> lambda_layers() const;  // n -> monomials with tx-exponent n
  TPoly lambda_shift(unsigned n) const;             // multiply by tx^n
  TPoly lambda_unshift(unsigned n) const;           // exact division by tx^n

 private:
  explicit TPoly(F2Poly f) : f_(std::move(f)) {}
  F2Poly f_;
};

// Exact division in T (a unique factorization domain); throws
// divisibility_error when g does not divide f.
TPoly t_exact_divide(const TPoly& f, const TPoly& g);

// Base-variable images over the determinant-zero pair in characteristic 2:
// tx -> x11, ty -> y11, txy -> x11 y11 + x12 y21.
F2Poly trace3_to_base(const F2Poly& f);
F2Poly t_to_base(const TPoly& f);

// Recognizes membership of a pseudo4 polynomial in T: possible exactly when
// every monomial carries equal x12 and y21 exponents. Throws domain_error
// otherwise. Inverse of t_to_base.
TPoly t_from_base(const F2Poly& f);

}  // namespace gm2
