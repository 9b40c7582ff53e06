#pragma once

#include <optional>
#include <vector>

#include "gm2/errors.hpp"
#include "gm2/rings.hpp"

namespace gm2 {

// Dense exact matrix over a coefficient ring that is a field for the
// operations used (rationals, GF(2), GF(p) via ZmodPrimePower with k = 1).
template <class F>
struct Matrix {
  using Value = typename F::Value;

  F ring;
  std::size_t rows = 0, cols = 0;
  std::vector<Value> a;

  Matrix(F ring_, std::size_t r, std::size_t c)
      : ring(std::move(ring_)), rows(r), cols(c), a(r * c, ring.zero()) {}

  Value& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Value& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// In-place row reduction to reduced row echelon form; returns pivot columns.
template <class F>
std::vector<std::size_t> rref(Matrix<F>& m) {
  const F& K = m.ring;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t sel = r;
    while (sel < m.rows && K.is_zero(m.at(sel, c))) ++sel;
    if (sel == m.rows) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
    auto inv = K.inv(m.at(r, c));
    for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) = K.mul(m.at(r, j), inv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || K.is_zero(m.at(i, c))) continue;
      auto f = m.at(i, c);
      for (std::size_t j = c; j < m.cols; ++j)
        m.at(i, j) = K.sub(m.at(i, j), K.mul(f, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
std::size_t rank(Matrix<F> m) {
  return rref(m).size();
}

// Basis of the right kernel {v : M v = 0}, one vector per free column,
// in increasing free-column order (deterministic).
template <class F>
std::vector<std::vector<typename F::Value>> kernel_basis(Matrix<F> m) {
  const F& K = m.ring;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<typename F::Value>> basis;
  for (std::size_t fc = 0; fc < m.cols; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<typename F::Value> v(m.cols, K.zero());
    v[fc] = K.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = K.neg(m.at(r, fc));
    basis.push_back(std::move(v));
  }
  return basis;
}

// Any exact solution of M v = b over the field, free variables set to zero;
// nullopt when inconsistent.
template <class F>
std::optional<std::vector<typename F::Value>> solve(Matrix<F> m,
                                                    std::vector<typename F::Value> b) {
  const F& K = m.ring;
  if (b.size() != m.rows) throw structural_error("solve: rhs size mismatch");
  Matrix<F> aug(K, m.rows, m.cols + 1);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;
  std::vector<typename F::Value> v(m.cols, K.zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = aug.at(r, m.cols);
  return v;
}

enum class LocalSolveStatus { ok, inconsistent, not_integral };

struct LocalSolveResult {
  LocalSolveStatus status = LocalSolveStatus::inconsistent;
  std::vector<mpq_class> solution;  // valid when status == ok; p-integral entries
};

// Solve A s = b over the rationals subject to every entry of s having p-adic
// valuation >= 0, i.e. solvability over the localization of Z at p. Smith-style
// elimination with minimal-valuation pivots: the row/column transforms then use
// only p-integral multipliers, so they are invertible over the localization and
// integrality of the diagonal system is equivalent to integrality of the
// original one. Free variables are set to zero; fully deterministic.
inline LocalSolveResult solve_p_integral(Matrix<RationalRing> A, std::vector<mpq_class> b,
                                         unsigned long prime) {
  if (b.size() != A.rows) throw structural_error("solve_p_integral: rhs size mismatch");
  const std::size_t m = A.rows, n = A.cols;
  // Column transform accumulator: s = V t.
  Matrix<RationalRing> V(A.ring, n, n);
  for (std::size_t i = 0; i < n; ++i) V.at(i, i) = 1;

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    bool found = false;
    long best = 0;
    std::size_t bi = t, bj = t;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        const auto& x = A.at(i, j);
        if (sgn(x) == 0) continue;
        long v = padic_valuation(x, prime);
        if (!found || v < best) {
          found = true;
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (!found) break;
    if (bi != t) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A.at(bi, j), A.at(t, j));
      std::swap(b[bi], b[t]);
    }
    if (bj != t) {
      for (std::size_t i = 0; i < m; ++i) std::swap(A.at(i, bj), A.at(i, t));
      for (std::size_t i = 0; i < n; ++i) std::swap(V.at(i, bj), V.at(i, t));
    }
    const mpq_class piv = A.at(t, t);
    for (std::size_t i = t + 1; i < m; ++i) {
      if (sgn(A.at(i, t)) == 0) continue;
      mpq_class f = A.at(i, t) / piv;
      for (std::size_t j = t; j < n; ++j) A.at(i, j) -= f * A.at(t, j);
      b[i] -= f * b[t];
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      if (sgn(A.at(t, j)) == 0) continue;
      mpq_class g = A.at(t, j) / piv;
      for (std::size_t i = t; i < m; ++i) A.at(i, j) -= g * A.at(i, t);
      for (std::size_t i = 0; i < n; ++i) V.at(i, j) -= g * V.at(i, t);
    }
  }
  for (std::size_t i = t; i < m; ++i)
    if (sgn(b[i]) != 0) return {LocalSolveStatus::inconsistent, {}};
  std::vector<mpq_class> tt(n, mpq_class(0));
  for (std::size_t i = 0; i < t; ++i) {
    if (sgn(b[i]) == 0) continue;
    mpq_class ti = b[i] / A.at(i, i);
    if (!padic_integral(ti, prime)) return {LocalSolveStatus::not_integral, {}};
    tt[i] = ti;
  }
  std::vector<mpq_class> s(n, mpq_class(0));
  for (std::size_t i = 0; i < n; ++i) {
    mpq_class acc(0);
    for (std::size_t j = 0; j < t; ++j)
      if (sgn(tt[j]) != 0) acc += V.at(i, j) * tt[j];
    s[i] = acc;
  }
  return {LocalSolveStatus::ok, std::move(s)};
}

// Rank of the mod-p reduction; every entry must be p-integral.
inline std::size_t rank_mod_p(const Matrix<RationalRing>& A, unsigned p) {
  ZmodPrimePower Fp(p, 1);
  Matrix<ZmodPrimePower> B(Fp, A.rows, A.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j) {
      const mpq_class& q = A.at(i, j);
      if (!padic_integral(q, p))
        throw domain_error("rank_mod_p: entry is not p-integral");
      mpz_class den_inv;
      if (mpz_invert(den_inv.get_mpz_t(), q.get_den().get_mpz_t(), Fp.modulus.get_mpz_t()) == 0)
        throw domain_error("rank_mod_p: denominator not invertible");
      B.at(i, j) = Fp.reduce(q.get_num() * den_inv);
    }
  return rank(std::move(B));
}

// Scale a rational vector to a primitive integer vector (content 1).
inline std::vector<mpz_class> primitive_integer_vector(const std::vector<mpq_class>& v) {
  mpz_class l(1);
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  std::vector<mpz_class> w;
  w.reserve(v.size());
  mpz_class g(0);
  for (const auto& q : v) {
    mpz_class z = q.get_num() * (l / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    w.push_back(std::move(z));
  }
  if (sgn(g) != 0)
    for (auto& z : w) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
  return w;
}

}  // namespace gm2
