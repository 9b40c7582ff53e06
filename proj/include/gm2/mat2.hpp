#pragma once

#include <array>
#include <optional>
#include <utility>

#include "gm2/errors.hpp"
#include "gm2/poly.hpp"

namespace gm2 {

// 2x2 matrix over a truncated polynomial type P. All operations are exact at
// the common cap; the Cayley-Hamilton identity a^2 - tr(a) a + det(a) = 0 is
// the single sign convention used everywhere (over GF(2) the same expression
// applies verbatim).
template <class P>
struct Mat2 {
  P e11, e12, e21, e22;

  Mat2(P a, P b, P c, P d)
      : e11(std::move(a)), e12(std::move(b)), e21(std::move(c)), e22(std::move(d)) {
    e11.require_compatible(e12, "Mat2");
    e11.require_compatible(e21, "Mat2");
    e11.require_compatible(e22, "Mat2");
  }

  static Mat2 zero(const P& like) {
    P z = P::zero(like.ring(), like.vars(), like.cap());
    return Mat2(z, z, z, z);
  }
  static Mat2 identity(const P& like) {
    P z = P::zero(like.ring(), like.vars(), like.cap());
    P o = P::one(like.ring(), like.vars(), like.cap());
    return Mat2(o, z, z, o);
  }
  static Mat2 scalar(const P& s) {
    P z = P::zero(s.ring(), s.vars(), s.cap());
    return Mat2(s, z, z, s);
  }

  const P& like() const { return e11; }

  bool is_zero() const { return e11.is_zero() && e12.is_zero() && e21.is_zero() && e22.is_zero(); }

  bool operator==(const Mat2& o) const {
    return e11 == o.e11 && e12 == o.e12 && e21 == o.e21 && e22 == o.e22;
  }
  bool operator!=(const Mat2& o) const { return !(*this == o); }

  Mat2 operator+(const Mat2& o) const {
    return Mat2(e11 + o.e11, e12 + o.e12, e21 + o.e21, e22 + o.e22);
  }
  Mat2 operator-(const Mat2& o) const {
    return Mat2(e11 - o.e11, e12 - o.e12, e21 - o.e21, e22 - o.e22);
  }
  Mat2 operator-() const { return Mat2(-e11, -e12, -e21, -e22); }

  Mat2 operator*(const Mat2& o) const {
    return Mat2(e11 * o.e11 + e12 * o.e21, e11 * o.e12 + e12 * o.e22,
                e21 * o.e11 + e22 * o.e21, e21 * o.e12 + e22 * o.e22);
  }

  Mat2 scaled(const P& s) const { return Mat2(e11 * s, e12 * s, e21 * s, e22 * s); }

  Mat2& operator+=(const Mat2& o) { return *this = *this + o; }
  Mat2& operator-=(const Mat2& o) { return *this = *this - o; }
  Mat2& operator*=(const Mat2& o) { return *this = *this * o; }

  P trace() const { return e11 + e22; }
  P det() const { return e11 * e22 - e12 * e21; }

  // adj(a) = tr(a) - a, so a * adj(a) = det(a).
  Mat2 adjugate() const { return Mat2(e22, -e12, -e21, e11); }

  Mat2 homogeneous_component(unsigned d) const {
    return Mat2(e11.homogeneous_component(d), e12.homogeneous_component(d),
                e21.homogeneous_component(d), e22.homogeneous_component(d));
  }

  Mat2 truncated(unsigned new_cap) const {
    return Mat2(e11.truncated(new_cap), e12.truncated(new_cap), e21.truncated(new_cap),
                e22.truncated(new_cap));
  }

  std::optional<unsigned> min_degree() const {
    std::optional<unsigned> best;
    for (const P* p : {&e11, &e12, &e21, &e22})
      if (auto d = p->min_degree(); d && (!best || *d < *best)) best = d;
    return best;
  }
};

template <class P>
Mat2<P> lie_bracket(const Mat2<P>& a, const Mat2<P>& b) {
  return a * b - b * a;
}

// Left-nested bracket [a1, a2, ..., an] = [[...[a1,a2],...], an].
template <class P>
Mat2<P> lie_bracket_left(std::initializer_list<Mat2<P>> ms) {
  auto it = ms.begin();
  Mat2<P> acc = *it++;
  for (; it != ms.end(); ++it) acc = lie_bracket(acc, *it);
  return acc;
}

// a^2 - tr(a) a + det(a); identically zero for 2x2 matrices.
template <class P>
Mat2<P> cayley_hamilton_residual(const Mat2<P>& a) {
  return a * a - a.scaled(a.trace()) + Mat2<P>::scalar(a.det());
}

// Invertible element 1 + delta with delta of positive minimal degree.
template <class P>
class Unit {
 public:
  explicit Unit(Mat2<P> value) : m_(std::move(value)) {
    Mat2<P> d = m_ - Mat2<P>::identity(m_.like());
    if (auto md = d.min_degree(); md && *md == 0)
      throw unit_error("Unit: value is not 1 + (degree >= 1)");
  }

  static Unit one(const P& like) { return Unit(Mat2<P>::identity(like)); }

  const Mat2<P>& value() const { return m_; }
  Mat2<P> delta() const { return m_ - Mat2<P>::identity(m_.like()); }
  bool is_one() const { return delta().is_zero(); }

  Unit operator*(const Unit& o) const { return Unit(m_ * o.m_); }
  Unit& operator*=(const Unit& o) { return *this = *this * o; }

  Unit inverse() const {
    Mat2<P> d = delta();
    Mat2<P> id = Mat2<P>::identity(m_.like());
    auto md = d.min_degree();
    if (!md) return *this;
    unsigned cap = m_.like().cap();
    Mat2<P> r = id;
    for (unsigned i = 0; i < cap / *md; ++i) r = id - d * r;
    return Unit(r);
  }

  // Binomial power (1 + d)^e = sum_j C(e, j) d^j, exact for any integer e.
  Unit pow(const mpz_class& e) const {
    Mat2<P> d = delta();
    auto md = d.min_degree();
    Mat2<P> acc = Mat2<P>::identity(m_.like());
    if (!md) return *this;
    unsigned cap = m_.like().cap();
    Mat2<P> dk = d;
    for (unsigned long j = 1; j * (*md) <= cap; ++j) {
      auto c = binomial(e, j);
      P cp = P::constant(m_.like().ring(), m_.like().vars(), cap,
                         m_.like().ring().from_mpz(c));
      acc += dk.scaled(cp);
      if ((j + 1) * (*md) <= cap) dk = dk * d;
    }
    return Unit(acc);
  }

 private:
  Mat2<P> m_;
};

template <class P>
Unit<P> group_commutator(const Unit<P>& g, const Unit<P>& h) {
  return g * h * g.inverse() * h.inverse();
}

// Lowest nonzero homogeneous component of g - 1 with its degree; nullopt when
// g is 1 at the cap.
template <class P>
std::optional<std::pair<unsigned, Mat2<P>>> min_component(const Unit<P>& g) {
  Mat2<P> d = g.delta();
  auto md = d.min_degree();
  if (!md) return std::nullopt;
  return std::make_pair(*md, d.homogeneous_component(*md));
}

// Rational-only: (1 + d)^c for p-integral rational exponents, via the exact
// binomial series; realizes the limit of integer powers degreewise.
inline Unit<QPoly> pow_binomial(const Unit<QPoly>& g, const mpq_class& c) {
  Mat2<QPoly> d = g.delta();
  auto md = d.min_degree();
  Mat2<QPoly> acc = Mat2<QPoly>::identity(g.value().like());
  if (!md) return g;
  unsigned cap = g.value().like().cap();
  Mat2<QPoly> dk = d;
  for (unsigned long j = 1; j * (*md) <= cap; ++j) {
    mpq_class cj = binomial(c, j);
    QPoly cp = QPoly::constant(RationalRing{}, g.value().like().vars(), cap, cj);
    acc += dk.scaled(cp);
    if ((j + 1) * (*md) <= cap) dk = dk * d;
  }
  return Unit<QPoly>(acc);
}

// exp of a matrix with entries of minimal degree >= 1 (rational coefficients).
inline Unit<QPoly> matrix_exp(const Mat2<QPoly>& a) {
  auto md = a.min_degree();
  Mat2<QPoly> acc = Mat2<QPoly>::identity(a.like());
  if (!md) return Unit<QPoly>(acc);
  if (*md == 0) throw domain_error("matrix_exp: argument must have minimal degree >= 1");
  unsigned cap = a.like().cap();
  Mat2<QPoly> ak = a;
  mpz_class fact(1);
  for (unsigned long k = 1; k * (*md) <= cap; ++k) {
    fact *= k;
    QPoly c = QPoly::constant(RationalRing{}, a.like().vars(), cap, mpq_class(1) / mpq_class(fact));
    acc += ak.scaled(c);
    if ((k + 1) * (*md) <= cap) ak = ak * a;
  }
  return Unit<QPoly>(acc);
}

// log(1 + d) for a unit (rational coefficients).
inline Mat2<QPoly> matrix_log(const Unit<QPoly>& g) {
  Mat2<QPoly> d = g.delta();
  auto md = d.min_degree();
  Mat2<QPoly> acc = Mat2<QPoly>::zero(g.value().like());
  if (!md) return acc;
  unsigned cap = g.value().like().cap();
  Mat2<QPoly> dk = d;
  for (unsigned long k = 1; k * (*md) <= cap; ++k) {
    mpq_class c = mpq_class(k % 2 ? 1 : -1) / mpq_class(static_cast<unsigned long>(k));
    acc += dk.scaled(QPoly::constant(RationalRing{}, d.like().vars(), cap, c));
    if ((k + 1) * (*md) <= cap) dk = dk * d;
  }
  return acc;
}

}  // namespace gm2
