#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gm2/char2.hpp"
#include "gm2/hall.hpp"
#include "gm2/lie_span.hpp"
#include "gm2/mat2.hpp"

namespace gm2 {

// A correction layer: weight-n basic commutators raised to p-integral
// rational exponents, together with their integer representatives modulo
// p^k. The rational exponents give the exact degreewise evaluation; the
// integer ones give an honest group word congruent to it modulo p^k.
struct Correction {
  unsigned n = 0;
  std::vector<int> letters;        // basic commutators of weight n, ascending id
  std::vector<mpq_class> exact;    // aligned with letters, p-integral
  std::vector<mpz_class> reduced;  // representatives in [0, p^k)

  bool trivial() const { return letters.empty(); }
};

// A word in the group generated by X = 1 + x and Y = 1 + y whose evaluation
// is trivial modulo degree N: an integer seed on the weight-6 commutators
// followed by one correction layer per degree 7 .. N-1.
struct IdentityWord {
  unsigned long p = 0;
  unsigned target_degree = 0;   // N
  unsigned modulus_exponent = 0;  // k
  GroupWord seed;
  std::vector<Correction> corrections;
};

struct SeedReport {
  unsigned long kernel_dimension = 0;
  GroupWord word;
  // Minimal degree of the evaluation minus one at the probe cap; nullopt when
  // the evaluation is trivial at the cap. Always >= 7 on success.
  std::optional<unsigned> residual_degree;
};

struct CorrectionStepReport {
  unsigned n = 0;
  bool trivial = false;  // the residual already lives above degree n
  std::size_t rows = 0;
  std::size_t columns = 0;
  unsigned long rank = 0;
  bool redundant = false;  // dependent columns; free coefficients set to zero
  std::vector<std::string> letters;
  std::vector<mpq_class> exact;
  std::vector<mpz_class> reduced;
  std::optional<unsigned> residual_after;  // nullopt: trivial at the cap
  std::string note;
};

// Smallest k with p^k > N, plus two guard digits.
unsigned default_modulus_exponent(unsigned long p, unsigned target_degree);

// Integer word on the weight-6 basic commutators whose evaluation is trivial
// to degree 6 inclusive: a primitive integer vector in the kernel of the map
// from formal weight-6 combinations onto the degree-6 module component. The
// exponents are coprime, so they are never all divisible by p. Requires p an
// odd prime; p = 2 is refused (see correction_step).
SeedReport find_seed_report(const HallBasis& basis, unsigned long p, unsigned cap = 8);
GroupWord find_seed(const HallBasis& basis, unsigned long p, unsigned cap = 8);

// Builds an identity word degree by degree: after the seed, the correction at
// degree n expresses the negated minimal component of the running evaluation
// in the weight-n commutator images and multiplies the matching word in. The
// coefficient system is solved over the localization of Z at p; a solution
// with a non-p-integral coordinate is a hard error, since integrality is
// exactly what fails for p = 2.
class IdentityBuilder {
 public:
  IdentityBuilder(unsigned long p, unsigned target_degree, unsigned modulus_exponent = 0);

  const IdentityWord& word() const { return word_; }
  const HallBasis& basis() const { return basis_; }
  const LieContext& context() const { return ctx_; }
  const Unit<QPoly>& evaluation() const { return current_; }
  const std::vector<CorrectionStepReport>& reports() const { return reports_; }
  unsigned next_degree() const { return next_n_; }
  bool finished() const { return next_n_ >= word_.target_degree; }

  CorrectionStepReport step();
  IdentityWord build();

 private:
  HallBasis basis_;
  LieContext ctx_;
  HallGroupEval<QPoly> group_;
  HallLieEval<QPoly> lie_;
  IdentityWord word_;
  Unit<QPoly> current_;
  unsigned next_n_ = 7;
  std::vector<CorrectionStepReport> reports_;
};

IdentityWord build_identity(unsigned long p, unsigned target_degree,
                            unsigned modulus_exponent = 0);

// Evaluates the word at an arbitrary pair over the rationals; with reduced
// set, the integer representatives are used instead of the exact exponents.
Unit<QPoly> evaluate_identity_word(const HallBasis& basis, const GenericPair<RationalRing>& pair,
                                   const IdentityWord& w, bool reduced);

// Human-readable rendering: the seed word followed by the correction layers
// with their exact exponents.
std::string identity_word_text(const HallBasis& basis, const IdentityWord& w);

// Characteristic 2: one bounded correction step. Searches products
// psi^w phi_y^v phi_x^u (catalog[j]) with target_weight <= u + v + w <=
// exponent_bound whose x-minimal parts, shifted by t(x)^8, sum to the
// x-minimal part of phi_x(g), assembles h as the phi_x image of their
// product, and machine-checks that the transport of g h is strictly deeper
// than the transport of g. "Not found" is an expected outcome: the catalog
// is a best-effort stand-in for a generating set that is known to exist but
// is not effectively constructible.
struct Char2SearchFactor {
  std::size_t index = 0;  // catalog position
  unsigned u = 0, v = 0, w = 0;
};

struct Char2SearchOutcome {
  bool found = false;
  std::vector<Char2SearchFactor> factors;
  std::optional<Unit<F2Poly>> correction;
  GoodnessCertificate before;                // of phi_x(g)
  std::optional<GoodnessCertificate> after;  // of phi_x(g h); nullopt if trivial at cap
  bool postcondition = false;
  std::string note;
};

Char2SearchOutcome char2_correction_search(const Char2Context& ctx, const Unit<F2Poly>& g,
                                           unsigned target_weight,
                                           const std::vector<Unit<F2Poly>>& catalog,
                                           unsigned exponent_bound = 6);

}  // namespace gm2
