#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "gm2/char2.hpp"
#include "gm2/dichotomy.hpp"
#include "gm2/identity.hpp"
#include "gm2/poly_io.hpp"
#include "gm2/verify.hpp"

namespace gm2 {

// 2x2 matrix as {schema, entries: [e11, e12, e21, e22]} of polynomial
// encodings.
template <class R>
nlohmann::json mat2_to_json(const Mat2<Poly<R>>& m) {
  return {{"schema", kSchema},
          {"entries", nlohmann::json::array(
                          {to_json(m.e11), to_json(m.e12), to_json(m.e21), to_json(m.e22)})}};
}

template <class R>
Mat2<Poly<R>> mat2_from_json(const nlohmann::json& j, const VarSetPtr& expect_vars = nullptr) {
  if (j.at("schema") != kSchema) throw structural_error("mat2_from_json: unknown schema");
  const auto& e = j.at("entries");
  if (!e.is_array() || e.size() != 4)
    throw structural_error("mat2_from_json: expected 4 entries");
  Poly<R> e11 = poly_from_json<R>(e.at(0), expect_vars);
  Poly<R> e12 = poly_from_json<R>(e.at(1), e11.vars());
  Poly<R> e21 = poly_from_json<R>(e.at(2), e11.vars());
  Poly<R> e22 = poly_from_json<R>(e.at(3), e11.vars());
  return Mat2<Poly<R>>(std::move(e11), std::move(e12), std::move(e21), std::move(e22));
}

// Canonical text of a trace-ring value (its normal form over tx, ty, q, txy).
std::string to_string(const TPoly& t);

// Module coordinates as quadruples of canonical coefficient strings.
nlohmann::json to_json(const RElement& a);
nlohmann::json to_json(const JElement& a);

// Sparse (n, i)-indexed block list with the filtration summary.
nlohmann::json to_json(const JDecomposition& d);

// {p, target_degree, modulus_exponent, seed, corrections} plus the rendered
// bracket expression.
nlohmann::json to_json(const HallBasis& basis, const IdentityWord& w);

// Every check by suite and stable id.
nlohmann::json to_json(const VerifyReport& r);

// Rank table rows; reduction_rank appears only where it was computed.
nlohmann::json to_json(const std::vector<RankRow>& rows);

// Witness coordinates and certificates as exact fraction strings.
nlohmann::json to_json(const TorsionWitness& w);
nlohmann::json to_json(const TorsionReport& r);

}  // namespace gm2
