#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gm2/errors.hpp"

namespace gm2 {

inline constexpr std::size_t kMaxVars = 8;

// An ordered, weighted variable alphabet. The monomial order used everywhere
// is graded lexicographic: weighted total degree first, then lex on the
// exponent vector in listed variable order.
struct VarSet {
  std::string label;
  std::vector<std::string> names;
  std::vector<unsigned> weights;

  VarSet(std::string label_, std::vector<std::string> names_, std::vector<unsigned> weights_ = {})
      : label(std::move(label_)), names(std::move(names_)), weights(std::move(weights_)) {
    if (names.size() > kMaxVars) throw range_error("VarSet: at most 8 variables supported");
    if (weights.empty()) weights.assign(names.size(), 1);
    if (weights.size() != names.size()) throw structural_error("VarSet: weights/names size mismatch");
  }

  std::size_t arity() const { return names.size(); }

  std::size_t index_of(const std::string& v) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == v) return i;
    throw range_error("VarSet '" + label + "': unknown variable '" + v + "'");
  }

  bool operator==(const VarSet& o) const {
    return label == o.label && names == o.names && weights == o.weights;
  }
};

using VarSetPtr = std::shared_ptr<const VarSet>;

// Two independent generic 2x2 matrices: x = (x11 x12; x21 x22), y likewise.
inline const VarSetPtr& generic8() {
  static const VarSetPtr vs = std::make_shared<VarSet>(
      "generic8",
      std::vector<std::string>{"x11", "x12", "x21", "x22", "y11", "y12", "y21", "y22"});
  return vs;
}

// Determinant-zero pair x = (x11 x12; 0 0), y = (y11 0; y21 0).
inline const VarSetPtr& pseudo4() {
  static const VarSetPtr vs = std::make_shared<VarSet>(
      "pseudo4", std::vector<std::string>{"x11", "x12", "y11", "y21"});
  return vs;
}

// Trace ring alphabet: tx = tr(x), ty = tr(y), txy = tr(xy); txy has degree 2.
inline const VarSetPtr& trace3() {
  static const VarSetPtr vs = std::make_shared<VarSet>(
      "trace3", std::vector<std::string>{"tx", "ty", "txy"}, std::vector<unsigned>{1, 1, 2});
  return vs;
}

// Trace ring with the central square q = tr(xy)^2 + tr(x)tr(y)tr(xy) adjoined
// as a variable of degree 4; used for the normal form with txy-exponent <= 1.
inline const VarSetPtr& sform4() {
  static const VarSetPtr vs = std::make_shared<VarSet>(
      "sform4", std::vector<std::string>{"tx", "ty", "q", "txy"},
      std::vector<unsigned>{1, 1, 4, 2});
  return vs;
}

// Formal coordinate alphabet for the graded Lie module: alpha = tr(x)^2 - 4 det(x),
// beta = 2 tr(xy) - tr(x) tr(y), gamma = tr(y)^2 - 4 det(y), each of formal degree 1.
inline const VarSetPtr& abc3() {
  static const VarSetPtr vs = std::make_shared<VarSet>(
      "abc3", std::vector<std::string>{"alpha", "beta", "gamma"});
  return vs;
}

struct Mono {
  std::array<std::uint8_t, kMaxVars> e{};

  static Mono unit() { return Mono{}; }
  static Mono var(std::size_t i, std::uint8_t deg = 1) {
    Mono m;
    m.e[i] = deg;
    return m;
  }

  unsigned degree(const VarSet& vs) const {
    unsigned d = 0;
    for (std::size_t i = 0; i < vs.arity(); ++i) d += vs.weights[i] * e[i];
    return d;
  }
  bool is_unit() const {
    for (auto x : e)
      if (x) return false;
    return true;
  }
  bool divides(const Mono& m) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] > m.e[i]) return false;
    return true;
  }
  Mono operator*(const Mono& m) const {
    Mono r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      unsigned s = unsigned(e[i]) + unsigned(m.e[i]);
      if (s > 255) throw range_error("Mono: exponent overflow");
      r.e[i] = static_cast<std::uint8_t>(s);
    }
    return r;
  }
  // Componentwise quotient; caller must have checked divisibility.
  Mono operator/(const Mono& m) const {
    Mono r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint8_t>(e[i] - m.e[i]);
    return r;
  }
  bool operator==(const Mono&) const = default;
};

// Graded lex: weighted degree first, then lexicographic on exponents.
inline bool mono_less(const VarSet& vs, const Mono& a, const Mono& b) {
  unsigned da = a.degree(vs), db = b.degree(vs);
  if (da != db) return da < db;
  return a.e < b.e;
}

struct MonoHash {
  std::size_t operator()(const Mono& m) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : m.e) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace gm2
