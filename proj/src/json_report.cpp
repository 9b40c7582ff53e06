#include <gm2/json_report.hpp>

namespace gm2 {

namespace {

nlohmann::json fraction_list(const std::vector<mpq_class>& qs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& q : qs) out.push_back(q.get_str());
  return out;
}

nlohmann::json integer_list(const std::vector<mpz_class>& zs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& z : zs) out.push_back(z.get_str());
  return out;
}

nlohmann::json optional_unsigned(const std::optional<unsigned>& v) {
  if (v) return *v;
  return nullptr;
}

}  // namespace

std::string to_string(const TPoly& t) { return to_string(t.normal()); }

nlohmann::json to_json(const RElement& a) {
  return {{"schema", kSchema},
          {"kind", "r_element"},
          {"cap", a.c1.cap()},
          {"c1", to_string(a.c1)},
          {"cx", to_string(a.cx)},
          {"cy", to_string(a.cy)},
          {"cxy", to_string(a.cxy)}};
}

nlohmann::json to_json(const JElement& a) {
  return {{"schema", kSchema},
          {"kind", "j_element"},
          {"cap", a.a.cap()},
          {"a", to_string(a.a)},
          {"b", to_string(a.b)},
          {"c", to_string(a.c)},
          {"d", to_string(a.d)}};
}

nlohmann::json to_json(const JDecomposition& d) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& [key, block] : d.blocks) {
    blocks.push_back({{"n", key.first},
                      {"i", key.second},
                      {"ux", to_string(block.ux)},
                      {"uy", to_string(block.uy)},
                      {"v", to_string(block.v)},
                      {"w", to_string(block.w)}});
  }
  nlohmann::json min = nullptr;
  if (auto m = d.min_x()) {
    min = {{"n", m->n}, {"i", m->i}, {"cx", to_string(m->cx)}, {"cy", to_string(m->cy)}};
  }
  return {{"schema", kSchema},
          {"kind", "uvw_decomposition"},
          {"cap", d.cap},
          {"n_of", optional_unsigned(d.n_of())},
          {"nbar", optional_unsigned(d.nbar())},
          {"ibar", optional_unsigned(d.ibar())},
          {"min_x", min},
          {"blocks", blocks}};
}

nlohmann::json to_json(const HallBasis& basis, const IdentityWord& w) {
  nlohmann::json seed = nlohmann::json::array();
  for (const auto& [id, e] : w.seed.letters)
    seed.push_back({{"letter", basis.name(id)}, {"exponent", e.get_str()}});
  nlohmann::json corrections = nlohmann::json::array();
  for (const auto& c : w.corrections) {
    nlohmann::json letters = nlohmann::json::array();
    for (int id : c.letters) letters.push_back(basis.name(id));
    corrections.push_back({{"n", c.n},
                           {"letters", letters},
                           {"exact", fraction_list(c.exact)},
                           {"reduced", integer_list(c.reduced)}});
  }
  return {{"schema", kSchema},
          {"kind", "identity_word"},
          {"p", w.p},
          {"target_degree", w.target_degree},
          {"modulus_exponent", w.modulus_exponent},
          {"seed", seed},
          {"corrections", corrections},
          {"text", identity_word_text(basis, w)}};
}

nlohmann::json to_json(const VerifyReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back(
        {{"suite", c.suite}, {"id", c.id}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"schema", kSchema},
          {"kind", "verification"},
          {"checks", checks},
          {"failed", r.failed},
          {"all_passed", r.all_passed}};
}

nlohmann::json to_json(const std::vector<RankRow>& rows) {
  nlohmann::json body = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json r = {{"n", row.n},
                        {"l2", row.l2},
                        {"m", row.m},
                        {"omega_lower", row.omega_lower}};
    if (row.reduction_rank) r["reduction_rank"] = *row.reduction_rank;
    body.push_back(std::move(r));
  }
  return {{"schema", kSchema},
          {"kind", "rank_table"},
          {"p", rows.empty() ? nlohmann::json(nullptr) : nlohmann::json(rows.front().p)},
          {"rows", body}};
}

nlohmann::json to_json(const TorsionWitness& w) {
  return {{"word", w.word},
          {"min_degree", w.min_degree},
          {"coordinates", fraction_list(w.coords)},
          {"closed_form", fraction_list(w.closed_form)},
          {"matches_closed_form", w.matches_closed_form},
          {"min_valuation", w.min_valuation},
          {"doubled_integral", w.doubled_integral},
          {"bch_agrees", w.bch_agrees},
          {"log_agrees", w.log_agrees}};
}

nlohmann::json to_json(const TorsionReport& r) {
  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& w : r.witnesses) witnesses.push_back(to_json(w));
  return {{"schema", kSchema},
          {"kind", "torsion_certificate"},
          {"witnesses", witnesses},
          {"all_order_two", r.all_order_two},
          {"closed_forms_match", r.closed_forms_match},
          {"bch_agrees", r.bch_agrees},
          {"gf2_rank", r.gf2_rank},
          {"torsion_rank_three", r.torsion_rank_three}};
}

}  // namespace gm2
