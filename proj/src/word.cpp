#include "wordtensor/word.hpp"

#include <cctype>
#include <stdexcept>

namespace wt {

int Word::n_a() const {
  int c = 0;
  for (Letter l : letters)
    if (l == Letter::A || l == Letter::AInv) ++c;
  return c;
}

int Word::n_b() const { return length() - n_a(); }

std::string Word::canonical() const {
  std::string out;
  for (Letter l : letters) {
    switch (l) {
      case Letter::A: out += "a"; break;
      case Letter::B: out += "b"; break;
      case Letter::AInv: out += "a^-1"; break;
      case Letter::BInv: out += "b^-1"; break;
    }
  }
  return out;
}

Word parse_word(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("word: empty string");
  Word w;
  w.text = text;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c != 'a' && c != 'b')
      throw std::invalid_argument("word: unexpected character '" +
                                  std::string(1, c) + "' at position " +
                                  std::to_string(i));
    bool is_a = c == 'a';
    ++i;
    long exponent = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      bool neg = false;
      if (i < text.size() && text[i] == '-') {
        neg = true;
        ++i;
      }
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("word: malformed exponent in '" + text + "'");
      size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        ++i;
      exponent = std::stol(text.substr(start, i - start));
      if (neg) {
        if (exponent != 1)
          throw std::invalid_argument(
              "word: only -1 is allowed as a negative exponent");
        exponent = -1;
      }
    }
    if (exponent == -1) {
      w.letters.push_back(is_a ? Letter::AInv : Letter::BInv);
    } else {
      for (long k = 0; k < exponent; ++k)
        w.letters.push_back(is_a ? Letter::A : Letter::B);
    }
  }
  if (w.letters.empty())
    throw std::invalid_argument("word: expansion is empty (words are non-empty)");
  return w;
}

Element eval_word(const FiniteGroup& g, const Word& w, Element a, Element b) {
  if (a < 0 || a >= g.order() || b < 0 || b >= g.order())
    throw std::out_of_range("eval_word: element index out of range");
  Element acc = g.identity();
  for (Letter l : w.letters) {
    Element x;
    switch (l) {
      case Letter::A: x = a; break;
      case Letter::B: x = b; break;
      case Letter::AInv: x = g.inv(a); break;
      default: x = g.inv(b); break;
    }
    acc = g.mult(acc, x);
  }
  return acc;
}

}  // namespace wt
