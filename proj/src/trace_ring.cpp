#include "gm2/trace_ring.hpp"

#include <vector>

namespace gm2 {

namespace {

const std::size_t kTx = 0, kTy = 1, kQ = 2, kTxy = 3;  // sform4 indices
const std::size_t kTx3 = 0, kTy3 = 1, kTxy3 = 2;       // trace3 indices
const std::size_t kX11 = 0, kX12 = 1, kY11 = 2, kY21 = 3;  // pseudo4 indices

F2Poly sform_monomial(unsigned cap, const Mono& m) {
  return F2Poly::monomial(GF2{}, sform4(), cap, m, 1);
}

bool mono_is_normal(const Mono& m) { return m.e[kTxy] <= 1; }

}  // namespace

TPoly TPoly::one(unsigned cap) { return TPoly(F2Poly::one(GF2{}, sform4(), cap)); }

TPoly TPoly::lambda(unsigned cap) {
  return TPoly(F2Poly::variable(GF2{}, sform4(), cap, kTx));
}

TPoly TPoly::theta(unsigned cap) {
  return TPoly(F2Poly::variable(GF2{}, sform4(), cap, kTy));
}

TPoly TPoly::vartheta(unsigned cap) {
  return TPoly(F2Poly::variable(GF2{}, sform4(), cap, kTxy));
}

TPoly TPoly::delta(unsigned cap) {
  return TPoly(F2Poly::variable(GF2{}, sform4(), cap, kQ));
}

TPoly TPoly::from_normal(F2Poly f) {
  if (!(*f.vars() == *sform4()))
    throw structural_error("TPoly::from_normal: expected the sform4 alphabet");
  for (const auto& [m, c] : f.terms())
    if (!mono_is_normal(m))
      throw structural_error("TPoly::from_normal: monomial with txy-exponent >= 2");
  return TPoly(std::move(f));
}

TPoly TPoly::normalized(F2Poly f) {
  if (!(*f.vars() == *sform4()))
    throw structural_error("TPoly::normalized: expected the sform4 alphabet");
  unsigned cap = f.cap();
  // txy^2 -> q + tx ty txy, applied until every monomial is reduced. Each pass
  // lowers the maximal txy-exponent, and the rule preserves weighted degree.
  F2Poly rule = sform_monomial(cap, Mono::var(kQ)) +
                sform_monomial(cap, Mono::var(kTx) * Mono::var(kTy) * Mono::var(kTxy));
  for (;;) {
    F2Poly done = F2Poly::zero(GF2{}, sform4(), cap);
    F2Poly pending = F2Poly::zero(GF2{}, sform4(), cap);
    Mono txy2 = Mono::var(kTxy, 2);
    for (const auto& [m, c] : f.terms()) {
      if (mono_is_normal(m))
        done.add_term(m, c);
      else
        pending.add_term(m / txy2, c);
    }
    if (pending.is_zero()) return TPoly(std::move(done));
    f = done + pending * rule;
  }
}

TPoly TPoly::from_trace3(const F2Poly& f) {
  if (!(*f.vars() == *trace3()))
    throw structural_error("TPoly::from_trace3: expected the trace3 alphabet");
  unsigned cap = f.cap();
  TPoly vth = vartheta(cap);
  std::vector<TPoly> vth_pow{one(cap)};
  TPoly res = zero(cap);
  for (const auto& [m, c] : f.terms()) {
    unsigned k = m.e[kTxy3];
    while (vth_pow.size() <= k) vth_pow.push_back(vth_pow.back() * vth);
    Mono rest = Mono::var(kTx, m.e[kTx3]) * Mono::var(kTy, m.e[kTy3]);
    res += TPoly(vth_pow[k].f_.mul_monomial(rest, c));
  }
  return res;
}

F2Poly TPoly::to_trace3() const {
  unsigned cap = f_.cap();
  F2Poly q3 = F2Poly::monomial(GF2{}, trace3(), cap, Mono::var(kTxy3, 2), 1) +
              F2Poly::monomial(GF2{}, trace3(), cap,
                               Mono::var(kTx3) * Mono::var(kTy3) * Mono::var(kTxy3), 1);
  std::vector<F2Poly> q_pow{F2Poly::one(GF2{}, trace3(), cap)};
  F2Poly res = F2Poly::zero(GF2{}, trace3(), cap);
  for (const auto& [m, c] : f_.terms()) {
    unsigned k = m.e[kQ];
    while (q_pow.size() <= k) q_pow.push_back(q_pow.back() * q3);
    Mono rest = Mono::var(kTx3, m.e[kTx]) * Mono::var(kTy3, m.e[kTy]) *
                Mono::var(kTxy3, m.e[kTxy]);
    res += q_pow[k].mul_monomial(rest, c);
  }
  return res;
}

F2Poly TPoly::s_even() const {
  F2Poly res = F2Poly::zero(GF2{}, sform4(), f_.cap());
  for (const auto& [m, c] : f_.terms())
    if (m.e[kTxy] == 0) res.add_term(m, c);
  return res;
}

F2Poly TPoly::s_odd() const {
  F2Poly res = F2Poly::zero(GF2{}, sform4(), f_.cap());
  Mono txy = Mono::var(kTxy);
  for (const auto& [m, c] : f_.terms())
    if (m.e[kTxy] == 1) res.add_term(m / txy, c);
  return res;
}

std::optional<unsigned> TPoly::lambda_order() const {
  std::optional<unsigned> best;
  for (const auto& [m, c] : f_.terms())
    if (!best || m.e[kTx] < *best) best = m.e[kTx];
  return best;
}

bool TPoly::in_lambda_power(unsigned n) const {
  for (const auto& [m, c] : f_.terms())
    if (m.e[kTx] < n) return false;
  return true;
}

bool TPoly::lambda_free() const {
  for (const auto& [m, c] : f_.terms())
    if (m.e[kTx] != 0) return false;
  return true;
}

std::map<unsigned, TPoly> TPoly::lambda_layers() const {
  std::map<unsigned, TPoly> layers;
  for (const auto& [m, c] : f_.terms()) {
    auto [it, fresh] = layers.try_emplace(m.e[kTx], f_.cap());
    it->second.f_.add_term(m, c);
  }
  return layers;
}

TPoly TPoly::lambda_shift(unsigned n) const {
  return TPoly(f_.mul_monomial(Mono::var(kTx, static_cast<std::uint8_t>(n)), 1));
}

TPoly TPoly::lambda_unshift(unsigned n) const {
  Mono txn = Mono::var(kTx, static_cast<std::uint8_t>(n));
  F2Poly res = F2Poly::zero(GF2{}, sform4(), f_.cap());
  for (const auto& [m, c] : f_.terms()) {
    if (m.e[kTx] < n)
      throw divisibility_error("TPoly::lambda_unshift: monomial below the tx power");
    res.add_term(m / txn, c);
  }
  return TPoly(std::move(res));
}

TPoly t_exact_divide(const TPoly& f, const TPoly& g) {
  return TPoly::from_trace3(exact_divide(f.to_trace3(), g.to_trace3()));
}

F2Poly trace3_to_base(const F2Poly& f) {
  if (!(*f.vars() == *trace3()))
    throw structural_error("trace3_to_base: expected the trace3 alphabet");
  unsigned cap = f.cap();
  F2Poly vth_base =
      F2Poly::monomial(GF2{}, pseudo4(), cap, Mono::var(kX11) * Mono::var(kY11), 1) +
      F2Poly::monomial(GF2{}, pseudo4(), cap, Mono::var(kX12) * Mono::var(kY21), 1);
  std::vector<F2Poly> vth_pow{F2Poly::one(GF2{}, pseudo4(), cap)};
  F2Poly res = F2Poly::zero(GF2{}, pseudo4(), cap);
  for (const auto& [m, c] : f.terms()) {
    unsigned k = m.e[kTxy3];
    while (vth_pow.size() <= k) vth_pow.push_back(vth_pow.back() * vth_base);
    Mono rest = Mono::var(kX11, m.e[kTx3]) * Mono::var(kY11, m.e[kTy3]);
    res += vth_pow[k].mul_monomial(rest, c);
  }
  return res;
}

F2Poly t_to_base(const TPoly& f) { return trace3_to_base(f.to_trace3()); }

TPoly t_from_base(const F2Poly& f) {
  if (!(*f.vars() == *pseudo4()))
    throw structural_error("t_from_base: expected the pseudo4 alphabet");
  unsigned cap = f.cap();
  // The image of T in the base alphabet is spanned by the monomials with
  // equal x12 and y21 exponents; on those, x11 -> tx, y11 -> ty and
  // x12 y21 -> txy + tx ty invert the trace substitution exactly.
  F2Poly z_pre = F2Poly::variable(GF2{}, trace3(), cap, kTxy3) +
                 F2Poly::monomial(GF2{}, trace3(), cap, Mono::var(kTx3) * Mono::var(kTy3), 1);
  std::vector<F2Poly> z_pow{F2Poly::one(GF2{}, trace3(), cap)};
  F2Poly res = F2Poly::zero(GF2{}, trace3(), cap);
  for (const auto& [m, c] : f.terms()) {
    if (m.e[kX12] != m.e[kY21])
      throw domain_error("t_from_base: not in the trace ring (x12/y21 exponent mismatch)");
    unsigned k = m.e[kX12];
    while (z_pow.size() <= k) z_pow.push_back(z_pow.back() * z_pre);
    Mono rest = Mono::var(kTx3, m.e[kX11]) * Mono::var(kTy3, m.e[kY11]);
    res += z_pow[k].mul_monomial(rest, c);
  }
  return TPoly::from_trace3(res);
}

}  // namespace gm2
