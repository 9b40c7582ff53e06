#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "gm2/errors.hpp"
#include "gm2/mat2.hpp"

namespace gm2 {

// Number of basic commutators of weight n on two generators:
// (1/n) sum_{d|n} mu(d) 2^(n/d).
unsigned long witt_l2(unsigned n);

// Rank of the degree-n component of the Lie module cut out by the trace
// relations: n(n+2)/8 for even n, (n-1)(n+1)/4 for odd n. Defined for n >= 2.
unsigned long zubkov_m(unsigned n);

struct HallNode {
  int left = -1;
  int right = -1;
  unsigned gen = 0;  // meaningful for leaves only: 0 = x, 1 = y
  unsigned weight = 1;
  bool is_leaf() const { return left < 0; }
};

// All basic commutators of weight <= max_weight on two generators, in Hall
// order: node ids are assigned in increasing order, weight first. The leaves
// are ordered y < x, which makes the composite elements come out as [x,y],
// [x,y,y], [x,y,x], ... (left-normed chains in low weight).
class HallBasis {
 public:
  explicit HallBasis(unsigned max_weight);

  unsigned max_weight() const { return max_weight_; }
  std::size_t size() const { return nodes_.size(); }
  const HallNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  const std::vector<int>& at_weight(unsigned w) const;
  int leaf(unsigned gen) const { return gen ? leaf_y_ : leaf_x_; }
  std::string name(int id) const;

 private:
  unsigned max_weight_;
  std::vector<HallNode> nodes_;
  std::vector<std::vector<int>> by_weight_;
  int leaf_y_ = 0;
  int leaf_x_ = 1;
};

// A word in the group generated by the images of the basis elements: a
// product of letters c^e with c a basic commutator (possibly a generator)
// and e a nonzero integer.
struct GroupWord {
  std::vector<std::pair<int, mpz_class>> letters;
};

// Parses words in the two generators, e.g. "X Y X^-1 Y^-1" or "X^3 Y^-2".
GroupWord parse_generator_word(const HallBasis& basis, const std::string& text);

// Renders a word; generators print as X, Y, composite letters by their
// bracket name, exponents as ^e when e != 1.
std::string word_to_text(const HallBasis& basis, const GroupWord& word);

// Evaluates basic commutators as nested group commutators of the two unit
// images, memoized across the basis.
template <class P>
class HallGroupEval {
 public:
  HallGroupEval(const HallBasis& basis, Unit<P> image_x, Unit<P> image_y)
      : basis_(&basis), memo_(basis.size()) {
    memo_[static_cast<std::size_t>(basis.leaf(0))] = std::move(image_x);
    memo_[static_cast<std::size_t>(basis.leaf(1))] = std::move(image_y);
  }

  const Unit<P>& at(int id) {
    auto& slot = memo_.at(static_cast<std::size_t>(id));
    if (!slot) {
      const HallNode& n = basis_->node(id);
      const Unit<P>& a = at(n.left);
      const Unit<P>& b = at(n.right);
      slot = group_commutator(a, b);
    }
    return *slot;
  }

  Unit<P> evaluate(const GroupWord& w) {
    Unit<P> acc = Unit<P>::one(like());
    for (const auto& [id, e] : w.letters) acc *= at(id).pow(e);
    return acc;
  }

  const P& like() const { return memo_[0]->value().like(); }

 private:
  const HallBasis* basis_;
  std::vector<std::optional<Unit<P>>> memo_;
};

// Evaluates basic commutators as nested Lie brackets of the two matrix
// images, memoized across the basis.
template <class P>
class HallLieEval {
 public:
  HallLieEval(const HallBasis& basis, Mat2<P> image_x, Mat2<P> image_y)
      : basis_(&basis), memo_(basis.size()) {
    memo_[static_cast<std::size_t>(basis.leaf(0))] = std::move(image_x);
    memo_[static_cast<std::size_t>(basis.leaf(1))] = std::move(image_y);
  }

  const Mat2<P>& at(int id) {
    auto& slot = memo_.at(static_cast<std::size_t>(id));
    if (!slot) {
      const HallNode& n = basis_->node(id);
      const Mat2<P>& a = at(n.left);
      const Mat2<P>& b = at(n.right);
      slot = lie_bracket(a, b);
    }
    return *slot;
  }

 private:
  const HallBasis* basis_;
  std::vector<std::optional<Mat2<P>>> memo_;
};

// Word with rational exponents, evaluated through the exact binomial series.
using RationalWord = std::vector<std::pair<int, mpq_class>>;

inline Unit<QPoly> evaluate_rational_word(HallGroupEval<QPoly>& eval, const RationalWord& w) {
  Unit<QPoly> acc = Unit<QPoly>::one(eval.like());
  for (const auto& [id, e] : w) acc *= pow_binomial(eval.at(id), e);
  return acc;
}

}  // namespace gm2
