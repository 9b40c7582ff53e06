#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gm2/linalg.hpp"
#include "gm2/mat2.hpp"
#include "gm2/pairs.hpp"
#include "gm2/poly.hpp"

namespace gm2 {

// Shared state for computations in the graded Lie module of a generic pair:
// the brackets [x,y], [x,y,x], [x,y,y], the coordinate polynomials
// alpha = tr(x)^2 - 4 det(x), beta = 2 tr(xy) - tr(x) tr(y),
// gamma = tr(y)^2 - 4 det(y), and the central scalar q with [x,y]^2 = q * 1.
// The identity q = (beta^2 - alpha gamma) / 4 holds for every pair.
class LieContext {
 public:
  explicit LieContext(GenericPair<RationalRing> pair);

  static LieContext generic(unsigned cap) { return LieContext(make_generic8(RationalRing{}, cap)); }
  static LieContext pseudo(unsigned cap) { return LieContext(make_pseudo4(RationalRing{}, cap)); }

  const GenericPair<RationalRing>& pair() const { return pair_; }
  unsigned cap() const { return pair_.cap; }
  const QPoly& alpha() const { return coords_.alpha; }
  const QPoly& beta() const { return coords_.beta; }
  const QPoly& gamma() const { return coords_.gamma; }
  const Mat2<QPoly>& br_xy() const { return br_xy_; }
  const Mat2<QPoly>& br_xyx() const { return br_xyx_; }
  const Mat2<QPoly>& br_xyy() const { return br_xyy_; }
  const QPoly& q() const { return q_; }

  // Exact expansion of a homogeneous entry polynomial of degree 2d as a formal
  // polynomial of degree d in alpha, beta, gamma (variables of the abc3
  // alphabet). Returns nullopt when f is not such a combination.
  std::optional<QPoly> abc_expand(const QPoly& f, unsigned d) const;

  // Substitution inverse to abc_expand: evaluate a formal abc3 polynomial at
  // the coordinate polynomials of this pair, producing an entry polynomial
  // truncated at out_cap.
  QPoly abc_value(const QPoly& formal, unsigned out_cap) const;

 private:
  struct AbcFrame {
    std::vector<Mono> monos;    // abc3 monomials of degree d
    std::vector<QPoly> values;  // their values as entry polynomials (cap 2d)
    std::vector<Mono> support;  // union of value supports, canonical order
    Matrix<RationalRing> mat{RationalRing{}, 0, 0};  // support x monos coefficients
  };
  const AbcFrame& frame(unsigned d) const;

  GenericPair<RationalRing> pair_;
  TraceCoords<RationalRing> coords_;
  Mat2<QPoly> br_xy_, br_xyx_, br_xyy_;
  QPoly q_;
  mutable std::map<unsigned, AbcFrame> frames_;
};

// All abc3 monomials of total degree d, in a fixed deterministic order
// (descending alpha exponent, then descending beta exponent).
std::vector<Mono> abc_monomials(unsigned d);

// Coefficients of a formal abc3 polynomial on abc_monomials(d), in that order.
std::vector<mpq_class> abc_coefficient_vector(const QPoly& formal, unsigned d);

// Coefficient extraction against the module frame. For homogeneous a of even
// degree n, a = eps * [x,y] with eps = tr(a [x,y]) / (2q); for odd degree n,
// a = eps1 [x,y,x] + eps2 [x,y,y] with eps1 = tr(a y) / (2q) and
// eps2 = -tr(a x) / (2q). Both verify the reconstruction exactly and return
// nullopt when a is not of the stated shape.
std::optional<QPoly> lie_even_coefficient(const LieContext& ctx, const Mat2<QPoly>& a, unsigned n);
std::optional<std::pair<QPoly, QPoly>> lie_odd_coefficients(const LieContext& ctx,
                                                            const Mat2<QPoly>& a, unsigned n);

// Coordinates of a homogeneous degree-n element of the graded Lie module:
// formal abc3 polynomials c (even n, element c * [x,y]) or c1, c2 (odd n,
// element c1 * [x,y,x] + c2 * [x,y,y]).
struct LieCoordinates {
  unsigned n;
  bool odd;
  unsigned d;          // formal degree: (n-2)/2 even, (n-3)/2 odd
  QPoly even_coeff;    // even case
  QPoly odd_xyx;       // odd case
  QPoly odd_xyy;

  LieCoordinates(unsigned n_, bool odd_, unsigned d_)
      : n(n_),
        odd(odd_),
        d(d_),
        even_coeff(QPoly::zero(RationalRing{}, abc3(), d_)),
        odd_xyx(even_coeff),
        odd_xyy(even_coeff) {}

  // Coordinates on the free monomial basis: abc_monomials(d) for even n,
  // the xyx block followed by the xyy block for odd n.
  std::vector<mpq_class> basis_vector() const;
};

// Exact membership-with-certificate in the degree-n component of the module.
// Requires a homogeneous of degree n (zero allowed); returns nullopt when a is
// not in the component.
std::optional<LieCoordinates> lie_coordinates(const LieContext& ctx, const Mat2<QPoly>& a,
                                              unsigned n);

// Rebuild the matrix element from its coordinates, at the cap of ctx.
Mat2<QPoly> from_lie_coordinates(const LieContext& ctx, const LieCoordinates& c);

// Spanning family of the degree-n component: monomials alpha^r beta^s gamma^t
// of degree (n-2)/2 times [x,y] for even n, and of degree (n-3)/2 times each
// of [x,y,x], [x,y,y] for odd n, together with its rank over the rationals.
struct GradedLieComponent {
  unsigned n = 0;
  std::vector<Mat2<QPoly>> vectors;
  std::vector<std::string> names;
  unsigned long rank = 0;
};
GradedLieComponent L_n_spanning_set(const LieContext& ctx, unsigned n);

// Rank over the coefficient field of the span of 2x2 matrices with polynomial
// entries. All nonzero inputs must be homogeneous of one common degree.
template <class R>
unsigned long rank_of_span(const std::vector<Mat2<Poly<R>>>& vecs) {
  if (vecs.empty()) return 0;
  const auto& like = vecs.front().e11;
  std::optional<unsigned> deg;
  for (const auto& v : vecs) {
    v.e11.require_compatible(like, "rank_of_span");
    const Poly<R>* entries[4] = {&v.e11, &v.e12, &v.e21, &v.e22};
    for (const auto* e : entries) {
      if (e->is_zero()) continue;
      if (*e->min_degree() != *e->max_degree())
        throw domain_error("rank_of_span: entry is not homogeneous");
      if (deg && *deg != *e->min_degree())
        throw domain_error("rank_of_span: vectors of mixed degrees");
      deg = *e->min_degree();
    }
  }
  // Column index: (entry slot, monomial) pairs present in any vector.
  std::vector<std::pair<int, Mono>> cols;
  for (const auto& v : vecs) {
    const Poly<R>* entries[4] = {&v.e11, &v.e12, &v.e21, &v.e22};
    for (int s = 0; s < 4; ++s)
      for (const auto& [m, c] : entries[s]->terms()) cols.emplace_back(s, m);
  }
  std::sort(cols.begin(), cols.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return mono_less(*like.vars(), a.second, b.second);
  });
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  Matrix<R> m(like.ring(), vecs.size(), cols.size());
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    const Poly<R>* entries[4] = {&vecs[i].e11, &vecs[i].e12, &vecs[i].e21, &vecs[i].e22};
    for (std::size_t j = 0; j < cols.size(); ++j)
      m.at(i, j) = entries[cols[j].first]->coeff(cols[j].second);
  }
  return rank(std::move(m));
}

// Rank of the reduction mod p of rational matrix vectors (entries must be
// p-integral).
unsigned long rank_of_span_mod_p(const std::vector<Mat2<QPoly>>& vecs, unsigned long p);

// Membership of a degree-n module element in the 2-local lattice
//   S [x,y] + beta S [x,y]                                     (n even)
//   S [x,y,x] + S [x,y,y] + S (beta [x,y,x] + alpha [x,y,y])/2
//                         + S (gamma [x,y,x] + beta [x,y,y])/2 (n odd)
// where S is generated over the 2-local integers by alpha, gamma and
// delta = (beta^2 - alpha gamma)/4. Throws domain_error when v is not in the
// degree-n module component at all.
struct MembershipResult {
  bool member = false;
  std::vector<std::string> generator_names;
  std::vector<mpq_class> combination;       // 2-integral, set when member
  std::vector<mpq_class> free_coordinates;  // coordinates on the free monomial basis
  long min_valuation_2 = 0;                 // over free_coordinates; 0 for the zero vector
};
MembershipResult L_intersect_A_membership(const LieContext& ctx, const Mat2<QPoly>& v, unsigned n);

}  // namespace gm2
