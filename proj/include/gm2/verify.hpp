#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gm2 {

// One named check. Ids are stable across releases and are the unit of
// reporting for the command-line verify run.
struct CheckResult {
  std::string suite;
  std::string id;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  unsigned cap = 10;            // symbolic cap for the lemma suites
  unsigned trials = 200;        // random samples per coefficient ring
  std::uint64_t seed = 1;
  std::string inject_failure;   // force the named check to fail (exit-path fixture)
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  unsigned failed = 0;
  bool all_passed = false;
};

// The coefficient-ring flavor a trace-lemma run is carried out over.
enum class LemmaRing { char2, rational, modular };

// The four trace-lemma families over one ring flavor: symbolic equalities on
// the generic and the rank-one pairs at the given cap, plus random samples.
std::vector<CheckResult> verify_trace_lemmas(LemmaRing ring, unsigned cap, unsigned trials,
                                             std::uint64_t seed);

// The eight ideal product rules and random product closure, at cap 10.
std::vector<CheckResult> verify_j_closure(unsigned trials, std::uint64_t seed);

// The bracket reduction formulas [x,y,x,x] = alpha [x,y], [x,y,x,y] =
// [x,y,y,x] = beta [x,y], [x,y,y,y] = gamma [x,y], symbolically at cap 8 on
// both the generic and the rank-one pair.
std::vector<CheckResult> verify_module_formulas();

// Shape of derived- and second-derived-subgroup elements over GF(2).
std::vector<CheckResult> verify_shapes();

// Level transport on a fixed three-element catalog: a base good element h
// together with phi_y^8(h) and psi(h), whose equal invariants make the one
// qualifying pair for the product-additivity check.
std::vector<CheckResult> verify_transport_suite();

// Runs every suite, ordered by suite name, and applies the failure fixture.
VerifyReport run_verification(const VerifyOptions& opts = {});

}  // namespace gm2
