#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "baerlab/word.hpp"

namespace baerlab {

// Finite presentation <generators | relators>. F is free on the generators,
// R the normal closure of the relators.
struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  int rank() const { return static_cast<int>(generators.size()); }

  // Validates that every relator only uses declared generators.
  void validate() const;
};

// File format, one directive per line ('#' starts a comment):
//   gens: x y
//   rel: x^2
//   rel: x y x y
Presentation parse_presentation(std::istream& in);
Presentation parse_presentation_text(const std::string& text);
Presentation load_presentation(const std::string& path);

// <x1,...,xr | xi^di, [xi,xj]> for the abelian group Z/d1 x ... x Z/dr;
// di = 0 contributes a free factor.
Presentation abelian_presentation(const std::vector<long>& orders);

// Direct product: disjoint union of generators and relators plus all
// cross commutators [g,h]. Clashing generator names on the right get a
// trailing apostrophe-free suffix "_b".
Presentation direct_product_presentation(const Presentation& a,
                                         const Presentation& b);

}  // namespace baerlab
