#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <gm2/json_report.hpp>

namespace {

using namespace gm2;
using nlohmann::json;

bool prime_p(unsigned long p) {
  mpz_class z(static_cast<long>(p));
  return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open " << out_path << " for writing\n";
    return 2;
  }
  f << text;
  return 0;
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

struct Config {
  unsigned long p = 3;
  unsigned cap = 0;  // 0: command default
  std::uint64_t seed = 1;
  unsigned trials = 200;
  bool json_out = false;
  std::string out_path;

  json header(const char* command) const {
    return {{"command", command}, {"seed", seed}, {"trials", trials}};
  }
};

int cmd_verify(const Config& cfg, const std::string& inject) {
  VerifyOptions opts;
  opts.cap = cfg.cap ? cfg.cap : 10;
  opts.trials = cfg.trials;
  opts.seed = cfg.seed;
  opts.inject_failure = inject;
  VerifyReport report = run_verification(opts);

  if (cfg.json_out) {
    json j = to_json(report);
    j.update(cfg.header("verify"));
    j["cap"] = opts.cap;
    int rc = emit(render(j), cfg.out_path);
    if (rc) return rc;
  } else {
    std::ostringstream out;
    for (const auto& c : report.checks)
      out << (c.passed ? "PASS  " : "FAIL  ") << c.suite << "/" << c.id
          << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
    out << report.checks.size() << " checks, " << report.failed << " failed\n";
    if (!report.all_passed) {
      out << "failing:";
      for (const auto& c : report.checks)
        if (!c.passed) out << " " << c.id;
      out << "\n";
    }
    int rc = emit(out.str(), cfg.out_path);
    if (rc) return rc;
  }
  return report.all_passed ? 0 : 1;
}

int cmd_ranks(const Config& cfg, unsigned max_n) {
  auto rows = rank_table(cfg.p, max_n);
  if (cfg.json_out) {
    json j = to_json(rows);
    j.update(cfg.header("ranks"));
    return emit(render(j), cfg.out_path);
  }
  std::ostringstream out;
  bool diag = rows.front().reduction_rank.has_value();
  out << fmt::format("{:>3}  {:>6}  {:>6}  {:>11}", "n", "l2", "m", "omega_lower");
  if (diag) out << fmt::format("  {:>14}", "reduction_rank");
  out << "\n";
  for (const auto& r : rows) {
    out << fmt::format("{:>3}  {:>6}  {:>6}  {:>11}", r.n, r.l2, r.m, r.omega_lower);
    if (r.reduction_rank) out << fmt::format("  {:>14}", *r.reduction_rank);
    out << "\n";
  }
  return emit(out.str(), cfg.out_path);
}

int cmd_build_identity(const Config& cfg, unsigned degree, unsigned mod_exp) {
  if (degree < 7) {
    std::cerr << "error: --degree must be at least 7; the seed kills degrees up to 6 and "
                 "corrections start at 7\n";
    return 2;
  }
  IdentityWord w = build_identity(cfg.p, degree, mod_exp);
  HallBasis basis(degree - 1);

  auto pair = make_pseudo4(RationalRing{}, degree - 1);
  auto u = evaluate_identity_word(basis, pair, w, false);
  bool trivial = u.delta().is_zero();

  if (cfg.json_out) {
    json j = to_json(basis, w);
    j.update(cfg.header("build-identity"));
    j["p"] = cfg.p;
    j["certificate"] = {{"pair", "determinant-zero rational"},
                        {"evaluated_cap", degree - 1},
                        {"trivial_mod_degree", degree},
                        {"verified", trivial}};
    int rc = emit(render(j), cfg.out_path);
    if (rc) return rc;
  } else {
    std::ostringstream out;
    out << identity_word_text(basis, w) << "\n";
    out << "evaluation == 1 mod degree " << degree
        << " (determinant-zero rational pair): " << (trivial ? "verified" : "FAILED") << "\n";
    int rc = emit(out.str(), cfg.out_path);
    if (rc) return rc;
  }
  return trivial ? 0 : 1;
}

int cmd_dichotomy(const Config& cfg) {
  unsigned cap = cfg.cap ? cfg.cap : 8;
  if (cap < 8) {
    std::cerr << "error: cap " << cap
              << " cannot see the degree-7 minimal parts; increase --cap to at least 8\n";
    return 2;
  }
  auto witnesses = torsion_witnesses(cap);
  TorsionReport report = torsion_group_check(witnesses);
  bool ok = report.all_order_two && report.closed_forms_match && report.bch_agrees;
  ok = ok && report.torsion_rank_three;

  if (cfg.json_out) {
    json j = to_json(report);
    j.update(cfg.header("dichotomy"));
    j["cap"] = cap;
    int rc = emit(render(j), cfg.out_path);
    if (rc) return rc;
  } else {
    std::ostringstream out;
    for (const auto& w : report.witnesses) {
      out << w.word << "\n";
      out << fmt::format(
          "  min degree {}, least 2-adic valuation {}, closed form {}, doubles into "
          "degree >= 8: {}, exp route {}, log route {}\n",
          w.min_degree, w.min_valuation, w.matches_closed_form ? "matched" : "MISSED",
          w.doubled_integral ? "yes" : "NO", w.bch_agrees ? "agrees" : "DISAGREES",
          w.log_agrees ? "agrees" : "DISAGREES");
    }
    out << fmt::format("independent classes mod 2: rank {}\n", report.gf2_rank);
    out << (report.torsion_rank_three
                ? "torsion subgroup certificate: (Z/2Z)^3\n"
                : "torsion subgroup certificate: FAILED\n");
    int rc = emit(out.str(), cfg.out_path);
    if (rc) return rc;
  }
  return ok ? 0 : 1;
}

int cmd_decompose(const Config& cfg, const std::string& in_path) {
  json j;
  try {
    if (in_path == "-") {
      j = json::parse(std::cin);
    } else {
      std::ifstream f(in_path, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot open " << in_path << "\n";
        return 2;
      }
      j = json::parse(f);
    }
  } catch (const json::parse_error& e) {
    std::cerr << "error: invalid JSON: " << e.what() << "\n";
    return 2;
  }

  unsigned cap = j.at("entries").at(0).at("cap").get<unsigned>();
  Char2Context ctx(cap);
  Mat2<F2Poly> m = mat2_from_json<GF2>(j, ctx.pair.alphabet);

  RElement r = to_R_coefficients(m);

  json out = cfg.header("decompose");
  out["r_coefficients"] = to_json(r);
  std::ostringstream text;
  text << "coordinates over the trace ring (1, x, y, xy):\n";
  text << "  c1  = " << to_string(r.c1) << "\n  cx  = " << to_string(r.cx)
       << "\n  cy  = " << to_string(r.cy) << "\n  cxy = " << to_string(r.cxy) << "\n";

  try {
    JElement je = to_J_coefficients(m);
    std::vector<JElement> pieces;
    for (unsigned d = 0; d <= cap; ++d) {
      auto h = m.homogeneous_component(d);
      if (!h.is_zero()) pieces.push_back(to_J_coefficients(h));
    }
    JDecomposition dec = decompose_UVW(pieces);
    out["j_coefficients"] = to_json(je);
    out["uvw"] = to_json(dec);
    text << "ideal coordinates ([x,y]x, [x,y]y, [x,y]^2, [x,y]xy):\n";
    text << "  a = " << to_string(je.a) << "\n  b = " << to_string(je.b)
         << "\n  c = " << to_string(je.c) << "\n  d = " << to_string(je.d) << "\n";
    text << "blocks (n, i):\n";
    for (const auto& [key, block] : dec.blocks) {
      text << fmt::format("  ({}, {}):", key.first, key.second);
      if (!block.ux.is_zero()) text << " ux = " << to_string(block.ux);
      if (!block.uy.is_zero()) text << " uy = " << to_string(block.uy);
      if (!block.v.is_zero()) text << " v = " << to_string(block.v);
      if (!block.w.is_zero()) text << " w = " << to_string(block.w);
      text << "\n";
    }
  } catch (const domain_error& e) {
    out["j_coefficients"] = nullptr;
    out["uvw"] = nullptr;
    out["note"] = std::string("not in the ideal: ") + e.what();
    text << "not in the ideal: " << e.what() << "\n";
  }

  return emit(cfg.json_out ? render(out) : text.str(), cfg.out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact computations with generic 2x2 matrices: trace-identity verification, graded "
      "module ranks, identity words, torsion witnesses, module decompositions."};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  app.add_option("--p", cfg.p, "prime modulus context (default 3)");
  app.add_option("--cap", cfg.cap, "polynomial degree cap (command-specific default)");
  app.add_option("--seed", cfg.seed, "seed for every random draw (default 1)");
  app.add_option("--trials", cfg.trials, "random trial count (default 200)");
  app.add_flag("--json", cfg.json_out, "emit the JSON report instead of text");
  app.add_option("--out", cfg.out_path, "write the report to this file instead of stdout");

  auto* sc_verify = app.add_subcommand("verify", "run every identity verification suite");
  std::string inject;
  sc_verify->add_option("--inject-failure", inject,
                        "force the named check to fail (harness self-test)");

  auto* sc_ranks =
      app.add_subcommand("ranks", "filtration ranks against the lower central series");
  unsigned max_n = 10;
  sc_ranks->add_option("--max-n", max_n, "largest degree row (default 10)")
      ->check(CLI::Range(1u, 12u));

  auto* sc_build =
      app.add_subcommand("build-identity", "construct a word trivial below a target degree");
  unsigned degree = 12;
  unsigned mod_exp = 0;
  sc_build->add_option("--degree", degree, "target degree N (default 12, minimum 7)");
  sc_build->add_option("--modulus-exponent", mod_exp,
                       "exponent k for the p^k integer representatives (0: automatic)");

  auto* sc_dich =
      app.add_subcommand("dichotomy", "torsion witnesses and the order-two certificate");

  auto* sc_dec =
      app.add_subcommand("decompose", "module coordinates of a matrix read from JSON");
  std::string in_path;
  sc_dec->add_option("input", in_path, "matrix JSON file (- for stdin)")->required();

  CLI11_PARSE(app, argc, argv);

  if (!prime_p(cfg.p)) {
    std::cerr << "error: --p must be prime, got " << cfg.p << "\n";
    return 2;
  }
  if (cfg.trials < 1) {
    std::cerr << "error: --trials must be at least 1\n";
    return 2;
  }
  if (cfg.cap == 1) {
    std::cerr << "error: --cap must be at least 2\n";
    return 2;
  }

  try {
    if (sc_verify->parsed()) return cmd_verify(cfg, inject);
    if (sc_ranks->parsed()) return cmd_ranks(cfg, max_n);
    if (sc_build->parsed()) return cmd_build_identity(cfg, degree, mod_exp);
    if (sc_dich->parsed()) return cmd_dichotomy(cfg);
    if (sc_dec->parsed()) return cmd_decompose(cfg, in_path);
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
