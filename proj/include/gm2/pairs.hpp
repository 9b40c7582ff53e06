#pragma once

#include <optional>
#include <vector>

#include "gm2/mat2.hpp"
#include "gm2/poly.hpp"

namespace gm2 {

// The two standard generic-matrix pairs.
//
//   generic8: x = (x11 x12; x21 x22),  y = (y11 y12; y21 y22)
//   pseudo4:  x = (x11 x12; 0 0),      y = (y11 0; y21 0)     (det x = det y = 0)
//
// over any coefficient ring. The group generators are X = 1 + x, Y = 1 + y.
template <class R>
struct GenericPair {
  R ring;
  VarSetPtr alphabet;
  unsigned cap;
  Mat2<Poly<R>> x, y;

  Unit<Poly<R>> X() const { return Unit<Poly<R>>(Mat2<Poly<R>>::identity(x.like()) + x); }
  Unit<Poly<R>> Y() const { return Unit<Poly<R>>(Mat2<Poly<R>>::identity(x.like()) + y); }

  Poly<R> scalar(long v) const {
    return Poly<R>::constant(ring, alphabet, cap, ring.from_long(v));
  }
};

template <class R>
GenericPair<R> make_generic8(const R& ring, unsigned cap) {
  auto vs = generic8();
  auto v = [&](const char* n) { return Poly<R>::variable(ring, vs, cap, vs->index_of(n)); };
  Mat2<Poly<R>> x(v("x11"), v("x12"), v("x21"), v("x22"));
  Mat2<Poly<R>> y(v("y11"), v("y12"), v("y21"), v("y22"));
  return GenericPair<R>{ring, vs, cap, x, y};
}

template <class R>
GenericPair<R> make_pseudo4(const R& ring, unsigned cap) {
  auto vs = pseudo4();
  auto v = [&](const char* n) { return Poly<R>::variable(ring, vs, cap, vs->index_of(n)); };
  auto z = Poly<R>::zero(ring, vs, cap);
  Mat2<Poly<R>> x(v("x11"), v("x12"), z, z);
  Mat2<Poly<R>> y(v("y11"), z, v("y21"), z);
  return GenericPair<R>{ring, vs, cap, x, y};
}

// The specialization x21, x22, y12, y22 -> 0 from the eight-variable alphabet
// onto the determinant-zero pair; a ring homomorphism, so it commutes with
// every polynomial and matrix operation.
inline const std::vector<std::optional<std::size_t>>& specialization_map() {
  static const std::vector<std::optional<std::size_t>> m = [] {
    std::vector<std::optional<std::size_t>> v(8);
    v[generic8()->index_of("x11")] = pseudo4()->index_of("x11");
    v[generic8()->index_of("x12")] = pseudo4()->index_of("x12");
    v[generic8()->index_of("y11")] = pseudo4()->index_of("y11");
    v[generic8()->index_of("y21")] = pseudo4()->index_of("y21");
    return v;
  }();
  return m;
}

template <class R>
Poly<R> specialize(const Poly<R>& f) {
  return f.substituted(pseudo4(), specialization_map());
}

template <class R>
Mat2<Poly<R>> specialize(const Mat2<Poly<R>>& m) {
  return Mat2<Poly<R>>(specialize(m.e11), specialize(m.e12), specialize(m.e21),
                       specialize(m.e22));
}

// Trace coordinates of the pair. With t = trace and d = det:
//   alpha = t(x)^2 - 4 det(x), beta = 2 t(xy) - t(x) t(y), gamma = t(y)^2 - 4 det(y).
// On the determinant-zero pair these reduce to t(x)^2, 2t(xy) - t(x)t(y), t(y)^2.
template <class R>
struct TraceCoords {
  Poly<R> alpha, beta, gamma;
};

template <class R>
TraceCoords<R> trace_coords(const GenericPair<R>& P) {
  auto tx = P.x.trace();
  auto ty = P.y.trace();
  auto txy = (P.x * P.y).trace();
  auto four = P.scalar(4);
  auto two = P.scalar(2);
  return TraceCoords<R>{tx * tx - four * P.x.det(), two * txy - tx * ty,
                        ty * ty - four * P.y.det()};
}

}  // namespace gm2
