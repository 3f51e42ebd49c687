#pragma once

#include <string>
#include <vector>

#include "wordtensor/group.hpp"

namespace wt {

enum class Letter { A, B, AInv, BInv };

// A word over {a, b, a^-1, b^-1}, stored fully expanded. Grammar accepts
// positive exponents as sugar (a^2b == aab) and -1 as the only negative
// exponent, marking the inverse letter.
struct Word {
  std::vector<Letter> letters;
  std::string text;  // original spelling

  int length() const { return static_cast<int>(letters.size()); }
  int n_a() const;
  int n_b() const;
  std::string canonical() const;  // expanded spelling, e.g. "aaba^-1"
};

Word parse_word(const std::string& text);

Element eval_word(const FiniteGroup& g, const Word& w, Element a, Element b);

}  // namespace wt
