#include "gm2/hall.hpp"

#include <cctype>
#include <sstream>

namespace gm2 {

namespace {

int mobius(unsigned n) {
  int mu = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

}  // namespace

unsigned long witt_l2(unsigned n) {
  if (n == 0) throw range_error("witt_l2: weight must be >= 1");
  mpz_class total = 0;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d) continue;
    int mu = mobius(d);
    if (!mu) continue;
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), 2, n / d);
    total += mu * pw;
  }
  total /= n;
  return total.get_ui();
}

unsigned long zubkov_m(unsigned n) {
  if (n < 2) throw range_error("zubkov_m: defined for n >= 2");
  unsigned long m = n;
  return n % 2 ? (m - 1) * (m + 1) / 4 : m * (m + 2) / 8;
}

HallBasis::HallBasis(unsigned max_weight) : max_weight_(max_weight) {
  if (max_weight == 0) throw range_error("HallBasis: max weight must be >= 1");
  by_weight_.assign(max_weight + 1, {});
  auto add = [&](HallNode n) {
    nodes_.push_back(n);
    by_weight_[n.weight].push_back(static_cast<int>(nodes_.size()) - 1);
  };
  add({-1, -1, 1, 1});  // y: id 0
  add({-1, -1, 0, 1});  // x: id 1
  for (unsigned w = 2; w <= max_weight; ++w) {
    for (unsigned wb = 1; wb <= w - wb; ++wb) {
      unsigned wa = w - wb;
      for (int b : by_weight_[wb]) {
        for (int a : by_weight_[wa]) {
          if (wa == wb && a <= b) continue;
          const HallNode& na = nodes_[static_cast<std::size_t>(a)];
          if (!na.is_leaf() && na.right > b) continue;
          add({a, b, 0, w});
        }
      }
    }
  }
}

const std::vector<int>& HallBasis::at_weight(unsigned w) const {
  if (w == 0 || w > max_weight_) throw range_error("HallBasis::at_weight: weight out of range");
  return by_weight_[w];
}

std::string HallBasis::name(int id) const {
  const HallNode& n = node(id);
  if (n.is_leaf()) return n.gen ? "y" : "x";
  // Left-normed chains print flattened: [x,y,y,x].
  bool chain = true;
  for (int c = id; !nodes_[static_cast<std::size_t>(c)].is_leaf();
       c = nodes_[static_cast<std::size_t>(c)].left)
    if (!nodes_[static_cast<std::size_t>(nodes_[static_cast<std::size_t>(c)].right)].is_leaf()) {
      chain = false;
      break;
    }
  if (chain) {
    std::vector<std::string> parts;
    int c = id;
    while (!nodes_[static_cast<std::size_t>(c)].is_leaf()) {
      parts.push_back(name(nodes_[static_cast<std::size_t>(c)].right));
      c = nodes_[static_cast<std::size_t>(c)].left;
    }
    parts.push_back(name(c));
    std::string out = "[";
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
      if (it != parts.rbegin()) out += ",";
      out += *it;
    }
    return out + "]";
  }
  return "[" + name(n.left) + "," + name(n.right) + "]";
}

GroupWord parse_generator_word(const HallBasis& basis, const std::string& text) {
  GroupWord w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    std::string base = tok;
    mpz_class exp = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      base = tok.substr(0, caret);
      std::string es = tok.substr(caret + 1);
      bool ok = !es.empty();
      for (std::size_t i = 0; i < es.size(); ++i)
        if (!(std::isdigit(static_cast<unsigned char>(es[i])) || (i == 0 && (es[i] == '-' || es[i] == '+'))))
          ok = false;
      if (!ok || es == "-" || es == "+")
        throw structural_error("parse_generator_word: bad exponent in '" + tok + "'");
      exp = mpz_class(es[0] == '+' ? es.substr(1) : es);
    }
    int id;
    if (base == "X" || base == "x")
      id = basis.leaf(0);
    else if (base == "Y" || base == "y")
      id = basis.leaf(1);
    else
      throw structural_error("parse_generator_word: unknown generator '" + tok + "'");
    if (exp != 0) w.letters.emplace_back(id, exp);
  }
  return w;
}

std::string word_to_text(const HallBasis& basis, const GroupWord& word) {
  std::string out;
  for (const auto& [id, e] : word.letters) {
    if (!out.empty()) out += " ";
    const HallNode& n = basis.node(id);
    out += n.is_leaf() ? (n.gen ? std::string("Y") : std::string("X")) : basis.name(id);
    if (e != 1) out += "^" + e.get_str();
  }
  return out;
}

}  // namespace gm2
