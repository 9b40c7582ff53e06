#pragma once

#include <sstream>
#include <string>

#include "json.hpp"

#include "gm2/poly.hpp"

namespace gm2 {

// Canonical text form: terms in decreasing graded-lex order, '+'-separated,
// each term "coeff*v1^e1*v2^e2" with unit coefficients and exponents omitted.
template <class R>
std::string to_string(const Poly<R>& f) {
  if (f.is_zero()) return "0";
  const auto& vs = *f.vars();
  std::ostringstream out;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    if (!first) out << " + ";
    first = false;
    std::string cs = f.ring().str(c);
    bool unitc = f.ring().is_one(c);
    if (m.is_unit()) {
      out << cs;
      continue;
    }
    bool wrote = false;
    if (!unitc) {
      out << cs;
      wrote = true;
    }
    for (std::size_t i = 0; i < vs.arity(); ++i) {
      if (!m.e[i]) continue;
      if (wrote) out << "*";
      out << vs.names[i];
      if (m.e[i] > 1) out << "^" << unsigned(m.e[i]);
      wrote = true;
    }
  }
  return out.str();
}

inline nlohmann::json ring_to_json(const GF2&) { return {{"kind", "gf2"}}; }
inline nlohmann::json ring_to_json(const RationalRing&) { return {{"kind", "rational"}}; }
inline nlohmann::json ring_to_json(const ZmodPrimePower& r) {
  return {{"kind", "zmod_prime_power"}, {"p", r.p}, {"k", r.k}};
}

template <class R>
R ring_from_json(const nlohmann::json& j);

template <>
inline GF2 ring_from_json<GF2>(const nlohmann::json& j) {
  if (j.at("kind") != "gf2") throw structural_error("ring_from_json: expected gf2");
  return GF2{};
}
template <>
inline RationalRing ring_from_json<RationalRing>(const nlohmann::json& j) {
  if (j.at("kind") != "rational") throw structural_error("ring_from_json: expected rational");
  return RationalRing{};
}
template <>
inline ZmodPrimePower ring_from_json<ZmodPrimePower>(const nlohmann::json& j) {
  if (j.at("kind") != "zmod_prime_power")
    throw structural_error("ring_from_json: expected zmod_prime_power");
  return ZmodPrimePower(j.at("p").get<unsigned>(), j.at("k").get<unsigned>());
}

inline constexpr const char* kSchema = "gm2/1";

template <class R>
nlohmann::json to_json(const Poly<R>& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    nlohmann::json exps = nlohmann::json::array();
    for (std::size_t i = 0; i < f.vars()->arity(); ++i) exps.push_back(m.e[i]);
    terms.push_back(nlohmann::json::array({exps, f.ring().str(c)}));
  }
  return {{"schema", kSchema},
          {"ring", ring_to_json(f.ring())},
          {"vars", f.vars()->names},
          {"weights", f.vars()->weights},
          {"cap", f.cap()},
          {"terms", terms}};
}

template <class R>
Poly<R> poly_from_json(const nlohmann::json& j, const VarSetPtr& expect_vars = nullptr) {
  if (j.at("schema") != kSchema) throw structural_error("poly_from_json: unknown schema");
  R ring = ring_from_json<R>(j.at("ring"));
  auto names = j.at("vars").get<std::vector<std::string>>();
  std::vector<unsigned> weights = j.contains("weights")
                                      ? j.at("weights").get<std::vector<unsigned>>()
                                      : std::vector<unsigned>(names.size(), 1);
  VarSetPtr vars;
  if (expect_vars) {
    if (names != expect_vars->names || weights != expect_vars->weights)
      throw structural_error("poly_from_json: variable set mismatch");
    vars = expect_vars;
  } else {
    vars = std::make_shared<VarSet>("custom", names, weights);
  }
  unsigned cap = j.at("cap").get<unsigned>();
  Poly<R> f(ring, vars, cap);
  for (const auto& t : j.at("terms")) {
    auto exps = t.at(0).get<std::vector<unsigned>>();
    if (exps.size() != vars->arity()) throw structural_error("poly_from_json: exponent arity");
    Mono m;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] > 255) throw range_error("poly_from_json: exponent too large");
      m.e[i] = static_cast<std::uint8_t>(exps[i]);
    }
    f.add_term(m, ring.parse(t.at(1).get<std::string>()));
  }
  return f;
}

}  // namespace gm2
