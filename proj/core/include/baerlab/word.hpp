#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "baerlab/errors.hpp"

namespace baerlab {

// One syllable of a free-group word: generator name with a nonzero exponent.
struct Letter {
  std::string gen;
  mpz_class exp;

  friend bool operator==(const Letter&, const Letter&) = default;
};

// Freely reduced word over named generators. The empty word is the identity.
// Adjacent letters always carry distinct generator names.
class Word {
 public:
  Word() = default;

  // Free reduction; drops zero exponents, merges adjacent equal generators.
  static Word reduce(std::vector<Letter> raw);

  static Word generator(std::string name, mpz_class exp = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }

  // Number of generator occurrences counted with |exponent|.
  mpz_class length() const;

  Word inverse() const;
  Word operator*(const Word& rhs) const;
  Word pow(const mpz_class& n) const;

  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

// [a,b] = a^-1 b^-1 a b.
Word commutator(const Word& a, const Word& b);

// Left-normed [w1,...,wn] = [[w1,...,w_{n-1}],wn]. Requires n >= 2.
Word commutator(const std::vector<Word>& ws);

// a^b = b^-1 a b.
Word conjugate(const Word& a, const Word& b);

// Grammar:
//   word := term {term}
//   term := atom ['^' int]
//   atom := name | '(' word ')' | '[' word {',' word} ']'
// Juxtaposition is product, '[a,b,c]' is left-normed, int may be negative,
// zero exponents are rejected. Whitespace-only input is the identity.
Word parse_word(std::string_view text, const std::vector<std::string>& gens);

}  // namespace baerlab
