#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gm2/hall.hpp"
#include "gm2/pairs.hpp"

using namespace gm2;

TEST_CASE("parsing generator words") {
  HallBasis basis(4);
  auto P = make_generic8(RationalRing{}, 5);
  HallGroupEval<QPoly> eval(basis, P.X(), P.Y());

  auto w = parse_generator_word(basis, "X Y X^-1 Y^-1");
  CHECK(eval.evaluate(w).value() == group_commutator(P.X(), P.Y()).value());

  auto cube = parse_generator_word(basis, "X^3");
  CHECK(eval.evaluate(cube).value() == (P.X() * P.X() * P.X()).value());

  auto mixed = parse_generator_word(basis, "x^+2 y^-2");
  CHECK(eval.evaluate(mixed).value() ==
        (P.X() * P.X() * P.Y().inverse() * P.Y().inverse()).value());

  CHECK(eval.evaluate(parse_generator_word(basis, "")).is_one());
  CHECK(eval.evaluate(parse_generator_word(basis, "X^0 Y^0")).is_one());

  CHECK_THROWS_AS(parse_generator_word(basis, "Z"), structural_error);
  CHECK_THROWS_AS(parse_generator_word(basis, "X^"), structural_error);
  CHECK_THROWS_AS(parse_generator_word(basis, "X^2a"), structural_error);
  CHECK_THROWS_AS(parse_generator_word(basis, "X^-"), structural_error);
}

TEST_CASE("word rendering round-trips") {
  HallBasis basis(4);
  auto P = make_generic8(RationalRing{}, 4);
  HallGroupEval<QPoly> eval(basis, P.X(), P.Y());
  std::string text = "X Y^-3 X^2";
  auto w = parse_generator_word(basis, text);
  CHECK(word_to_text(basis, w) == text);
  auto w2 = parse_generator_word(basis, word_to_text(basis, w));
  CHECK(eval.evaluate(w2).value() == eval.evaluate(w).value());

  GroupWord cw;
  cw.letters.emplace_back(basis.at_weight(2)[0], mpz_class(3));
  cw.letters.emplace_back(basis.leaf(0), mpz_class(-1));
  CHECK(word_to_text(basis, cw) == "[x,y]^3 X^-1");
}

TEST_CASE("group evaluation matches nested commutators") {
  HallBasis basis(4);
  auto P = make_generic8(RationalRing{}, 5);
  HallGroupEval<QPoly> eval(basis, P.X(), P.Y());
  int c2 = basis.at_weight(2)[0];
  CHECK(eval.at(c2).value() == group_commutator(P.X(), P.Y()).value());
  for (int id : basis.at_weight(3)) {
    const HallNode& n = basis.node(id);
    CHECK(eval.at(id).value() == group_commutator(eval.at(n.left), eval.at(n.right)).value());
  }
}

TEST_CASE("minimal components of basic commutators are their brackets") {
  HallBasis basis(6);
  auto P = make_generic8(RationalRing{}, 6);
  HallGroupEval<QPoly> geval(basis, P.X(), P.Y());
  HallLieEval<QPoly> leval(basis, P.x, P.y);
  for (unsigned w = 2; w <= 6; ++w) {
    for (int id : basis.at_weight(w)) {
      auto mc = min_component(geval.at(id));
      if (leval.at(id).is_zero()) {
        // The bracket can die under evaluation; then the group element sits
        // deeper in the filtration.
        CHECK((!mc || mc->first > w));
      } else {
        REQUIRE(mc.has_value());
        CHECK(mc->first == w);
        CHECK(mc->second == leval.at(id));
      }
    }
  }
}

TEST_CASE("evaluation with substituted unit images") {
  HallBasis basis(3);
  auto P = make_generic8(RationalRing{}, 5);
  auto ex = matrix_exp(P.x);
  auto ey = matrix_exp(P.y);
  HallGroupEval<QPoly> eval(basis, ex, ey);
  auto w = parse_generator_word(basis, "X Y X^-1 Y^-1");
  CHECK(eval.evaluate(w).value() == group_commutator(ex, ey).value());
  auto mc = min_component(eval.evaluate(w));
  REQUIRE(mc.has_value());
  CHECK(mc->first == 2);
  CHECK(mc->second == lie_bracket(P.x, P.y));
}

TEST_CASE("rational exponents evaluate through binomial series") {
  HallBasis basis(3);
  auto P = make_generic8(RationalRing{}, 5);
  HallGroupEval<QPoly> eval(basis, P.X(), P.Y());
  RationalWord w{{basis.leaf(0), mpq_class(1, 2)}};
  CHECK(evaluate_rational_word(eval, w).value() == pow_binomial(P.X(), mpq_class(1, 2)).value());
  RationalWord sum{{basis.leaf(0), mpq_class(1, 3)}, {basis.leaf(0), mpq_class(2, 3)}};
  CHECK(evaluate_rational_word(eval, sum).value() == P.X().value());
  CHECK(evaluate_rational_word(eval, {}).is_one());
}
