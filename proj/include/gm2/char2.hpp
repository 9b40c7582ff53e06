#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gm2/hall.hpp"
#include "gm2/mat2.hpp"
#include "gm2/pairs.hpp"
#include "gm2/trace_ring.hpp"

namespace gm2 {

// Working context over the determinant-zero pair in characteristic 2: the
// pair at a fixed cap together with the standard derived matrices and traces.
struct Char2Context {
  GenericPair<GF2> pair;
  Mat2<F2Poly> u;            // [x,y]
  Mat2<F2Poly> ux, uy, uxy;  // [x,y]x, [x,y]y, [x,y]xy
  F2Poly lam, tht, vth;      // t(x), t(y), t(xy) in base variables
  F2Poly usq;                // the central scalar [x,y]^2 in base variables

  explicit Char2Context(unsigned cap);
  unsigned cap() const { return pair.cap; }
  Unit<F2Poly> X() const { return pair.X(); }
  Unit<F2Poly> Y() const { return pair.Y(); }
};

// Free T-module coordinates of R: value = c1 + cx x + cy y + cxy xy.
struct RElement {
  TPoly c1, cx, cy, cxy;
  bool is_zero() const { return c1.is_zero() && cx.is_zero() && cy.is_zero() && cxy.is_zero(); }
  bool operator==(const RElement& o) const {
    return c1 == o.c1 && cx == o.cx && cy == o.cy && cxy == o.cxy;
  }
};

// Free T-module coordinates of the two-sided ideal J:
// value = a [x,y]x + b [x,y]y + c [x,y]^2 + d [x,y]xy.
struct JElement {
  TPoly a, b, c, d;
  bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero(); }
  bool operator==(const JElement& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
  JElement operator+(const JElement& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  // t(value) = d * [x,y]^2: the trace sees exactly the [x,y]xy coordinate.
  TPoly trace() const;
};

// Evaluations back into matrices, at the cap of the coefficients.
Mat2<F2Poly> r_value(const RElement& a);
Mat2<F2Poly> j_value(const JElement& a);

// The unique T-module coordinates of a matrix in R (resp. J), recovered via
// trace formulas and exact division, then verified by recomposition. The
// input must be exact at its cap. Throws domain_error when the matrix does
// not lie in the module.
RElement to_R_coefficients(const Mat2<F2Poly>& a);
JElement to_J_coefficients(const Mat2<F2Poly>& a);

// One homogeneous block of the U/V/W decomposition at bidegree (n, i):
//   U = ux [x,y]x + uy [x,y]y,  V = v [x,y]^2,  W = w [x,y]xy,
// every coefficient monomial carrying tx-exponent exactly n, the encoded
// matrix homogeneous of degree i.
struct JBlock {
  TPoly ux, uy, v, w;
  bool u_zero() const { return ux.is_zero() && uy.is_zero(); }
  bool is_zero() const { return u_zero() && v.is_zero() && w.is_zero(); }
};

// The x-minimal part of an element: its lowest U block.
struct MinComponentX {
  unsigned n = 0;  // tx-power level
  unsigned i = 0;  // homogeneous degree
  TPoly cx, cy;    // value = cx [x,y]x + cy [x,y]y
  bool operator==(const MinComponentX& o) const {
    return n == o.n && i == o.i && cx == o.cx && cy == o.cy;
  }
  bool operator!=(const MinComponentX& o) const { return !(*this == o); }
};

struct JDecomposition {
  unsigned cap = 0;
  std::map<std::pair<unsigned, unsigned>, JBlock> blocks;  // (n, i) -> block

  std::optional<unsigned> n_of() const;   // least n over nonzero blocks
  std::optional<unsigned> nbar() const;   // least n over blocks with U != 0
  std::optional<unsigned> ibar() const;   // least i at nbar with U != 0
  std::optional<MinComponentX> min_x() const;
  bool in_level(unsigned n) const;        // every block at first index >= n
  JElement recomposed(unsigned degree) const;
};

// Splits homogeneous J elements by tx-power. Each input piece must be
// homogeneous (coordinates a, b of one degree, c, d four less plus one);
// zero pieces are skipped. Total on J.
JDecomposition decompose_UVW(const std::vector<JElement>& pieces);

// Degree of a homogeneous J element (the degree of the encoded matrix);
// throws domain_error when the coordinates are inhomogeneous or mismatched.
std::optional<unsigned> j_homogeneous_degree(const JElement& piece);

// Cap-relative filtration invariants of a unit, per the decomposition of
// g - 1. All quantities are read from the terms of degree <= cap: n_of and
// nbar are the observed minima, and absent nbar means no U block below cap.
struct GoodnessCertificate {
  unsigned cap = 0;
  unsigned n_of = 0;
  std::optional<unsigned> nbar, ibar;
  std::optional<MinComponentX> min_x;
  bool breve_member = false;  // all terms in level 3
  bool good = false;          // the transport shape (see below)
};

// Full decomposition of g - 1; throws domain_error when some homogeneous term
// fails to lie in J, or when g = 1 at cap.
JDecomposition decompose_unit(const Unit<F2Poly>& g);

// Certificate for g: minimal levels, the x-minimal part, and the goodness
// shape check: nbar finite, V blocks only at levels >= nbar - 1, W blocks
// only at levels >= nbar + 2, together with level-3 membership.
GoodnessCertificate invariants_of(const Unit<F2Poly>& g);

// The three transport operators. phi_x(g) = [(1+x)^4, g] with
// (1+x)^4 = 1 + t(x)^3 x; phi_y(g) = [1+y, g]; psi(g) = [([1+x,1+y])^2, g].
Unit<F2Poly> phi_x(const Char2Context& ctx, const Unit<F2Poly>& g);
Unit<F2Poly> phi_y(const Char2Context& ctx, const Unit<F2Poly>& g);
Unit<F2Poly> psi(const Char2Context& ctx, const Unit<F2Poly>& g);

// ([v, (1+x)^2])^(2^r) with (1+x)^2 = 1 + t(x)x; every term of the result
// lies in level 2^r.
Unit<F2Poly> breve_recipe(const Char2Context& ctx, const Unit<F2Poly>& v, unsigned r);

// Verifies the eight ideal product rules for the J generators against the
// matrices, and closure of random J elements under multiplication by random
// R elements (the product must again decompose).
struct ClosureReport {
  std::vector<std::pair<std::string, bool>> rules;
  unsigned random_products = 0;
  bool all_passed = true;
};
ClosureReport j_ideal_closure_check(const Char2Context& ctx, unsigned trials,
                                    std::uint64_t seed);

// Transport report: for every catalog element, phi_x multiplies the
// x-minimal part by t(x)^4 (level shift +4), phi_y by t(y) (level shift 0),
// psi by [x,y]^4 (level shift 0); for qualifying pairs (equal levels and
// degrees, distinct x-minimal parts), the product's x-minimal part is the
// sum. Requires every catalog element good with cap >= ibar + 8.
struct TransportCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};
struct TransportReport {
  std::vector<TransportCheck> checks;
  unsigned elements = 0;
  unsigned pairs = 0;
  unsigned excluded_pairs = 0;
  bool all_passed = true;
};
TransportReport verify_transport(const Char2Context& ctx,
                                 const std::vector<Unit<F2Poly>>& catalog);

// Shape checks for group words: every derived-subgroup element is
// 1 + [x,y] (series with homogeneous terms in R); second-derived elements
// have all terms in J. n_of reports the least observed level of the J terms.
struct ShapeReport {
  bool commutator_shape = false;
  bool second_derived_in_J = false;
  std::optional<unsigned> n_of;
  bool breve_member = false;
  std::string failure;
};
ShapeReport commutator_shape_check(const Char2Context& ctx, const Unit<F2Poly>& g,
                                   bool expect_second_derived);
ShapeReport commutator_shape_check_word(const Char2Context& ctx, const HallBasis& basis,
                                        const GroupWord& w, bool expect_second_derived);

// Builds good elements as phi_x images of random second-derived words
// (falling back to a second application of phi_x), filtered by the goodness
// certificate and the headroom requirement cap >= ibar + headroom.
struct CatalogOptions {
  unsigned count = 20;
  unsigned max_attempts = 400;
  unsigned headroom = 8;
  std::uint64_t seed = 1;
};
std::vector<Unit<F2Poly>> good_catalog(const Char2Context& ctx, const CatalogOptions& opts);

}  // namespace gm2
