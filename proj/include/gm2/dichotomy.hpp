#pragma once

#include <gm2/lie_span.hpp>
#include <gm2/mat2.hpp>
#include <gm2/poly.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gm2 {

// One row of the graded rank table at a prime p. omega_lower is the rank over
// the rationals of the span of the minimal components of the weight-n basic
// commutators in the pseudo pair; it is a lower bound for the rank of the n-th
// graded quotient that does not depend on p. For p = 2 the GF(2) rank of the
// mod-2 reductions is kept alongside as a reduction diagnostic; it can drop
// strictly below omega_lower.
struct RankRow {
  unsigned n = 0;
  unsigned long l2 = 0;           // Witt rank of the free Lie algebra layer
  unsigned long m = 0;            // module rank of the degree-n component
  unsigned long omega_lower = 0;  // rank of the minimal-component span
  unsigned long p = 0;
  std::optional<unsigned long> reduction_rank;  // set when p = 2
};

// Degree one carries the two generators themselves and is reported with
// m = 2; the bracket module starts at degree two.
std::vector<RankRow> rank_table(unsigned long p, unsigned n_max);

// A weight-six iterated group commutator in 1+x and 1+y whose minimal
// component sits in degree seven with half-integral module coordinates.
struct TorsionWitness {
  explicit TorsionWitness(Mat2<QPoly> minimal) : min7(std::move(minimal)) {}

  std::string word;                    // commutator expression in 1+x, 1+y
  unsigned min_degree = 0;             // degree of the minimal component
  Mat2<QPoly> min7;                    // the minimal component itself
  std::vector<mpq_class> coords;       // free-basis coordinates, 12 entries
  std::vector<mpq_class> closed_form;  // expected value mod the integral lattice
  bool matches_closed_form = false;    // coords - closed_form lies in the lattice
  long min_valuation = 0;              // least 2-adic valuation over coords
  bool doubled_integral = false;       // 2 * coords has all valuations >= 0
  bool bch_agrees = false;             // the e^x route reproduces min7 exactly
  bool log_agrees = false;             // degree-7 part of log equals min7
};

std::vector<TorsionWitness> torsion_witnesses(unsigned cap = 8);

// Certificate that the three witness classes generate (Z/2Z)^3 in the
// quotient of the degree-7 module lattice by its integral sublattice.
struct TorsionReport {
  std::vector<TorsionWitness> witnesses;
  bool all_order_two = false;       // valuation -1 present and doubling integral
  bool closed_forms_match = false;  // every witness matches its closed form
  bool bch_agrees = false;          // both cross-checks hold for every witness
  unsigned long gf2_rank = 0;       // rank of the doubled coordinate classes mod 2
  bool torsion_rank_three = false;  // gf2_rank == 3
};

TorsionReport torsion_group_check(const std::vector<TorsionWitness>& witnesses);

// Property check for the two-local lattice description of the integral part
// of the degree-n module component: elements assembled from the stated
// generating families have integer matrix entries, and integer-entry module
// elements decompose with 2-integral lattice coefficients.
struct RoundtripReport {
  unsigned n = 0;
  unsigned trials = 0;
  unsigned family_checked = 0;           // direction (a) samples
  unsigned family_integral = 0;          // samples with all-integer entries
  unsigned decompositions = 0;           // direction (b) samples
  unsigned decompositions_integral = 0;  // members with 2-integral certificates
  bool passed = false;
};

RoundtripReport prop_minimal_roundtrip(unsigned n, unsigned trials, std::uint64_t seed = 1);

}  // namespace gm2
