#pragma once

#include <cstdint>
#include <random>

#include "gm2/poly.hpp"

namespace gm2 {

// Deterministic RNG used by property tests and the CLI. All randomized
// reports are reproducible from the seed alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [lo, hi] inclusive.
  long uniform(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(eng_);
  }

  bool coin() { return uniform(0, 1) == 1; }

  template <class R>
  typename R::Value value(const R& ring, long lo = -4, long hi = 4) {
    return ring.from_long(uniform(lo, hi));
  }

  template <class R>
  typename R::Value nonzero_value(const R& ring, long lo = -4, long hi = 4) {
    for (;;) {
      auto v = value(ring, lo, hi);
      if (!ring.is_zero(v)) return v;
    }
  }

  Mono mono(const VarSet& vs, unsigned max_deg) {
    for (;;) {
      Mono m;
      for (std::size_t i = 0; i < vs.arity(); ++i)
        m.e[i] = static_cast<std::uint8_t>(uniform(0, 2));
      if (m.degree(vs) <= max_deg) return m;
    }
  }

  template <class R>
  Poly<R> poly(const R& ring, const VarSetPtr& vs, unsigned cap, unsigned max_deg,
               unsigned max_terms = 4) {
    Poly<R> f(ring, vs, cap);
    unsigned n = static_cast<unsigned>(uniform(0, long(max_terms)));
    for (unsigned i = 0; i < n; ++i) f.add_term(mono(*vs, max_deg), value(ring));
    return f;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gm2
