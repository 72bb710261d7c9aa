#include <algorithm>
#include <vector>

#include "baerlab/hall.hpp"
#include "baerlab/word.hpp"
#include "doctest.h"

using namespace baerlab;

namespace {

// Oracle: count Lyndon words of length w over `rank` letters by checking the
// defining property (strictly smaller than every proper rotation) on every
// string.
long lyndon_count(int rank, int w) {
  std::vector<int> s(w, 0);
  long count = 0;
  auto is_lyndon = [&] {
    for (int r = 1; r < w; ++r) {
      std::vector<int> rot(s.begin() + r, s.end());
      rot.insert(rot.end(), s.begin(), s.begin() + r);
      if (!(s < rot)) return false;
    }
    return true;
  };
  while (true) {
    if (is_lyndon()) ++count;
    int i = w - 1;
    while (i >= 0 && s[i] == rank - 1) s[i--] = 0;
    if (i < 0) break;
    ++s[i];
  }
  return count;
}

Word tree_word(const CommTree& t, const std::vector<Word>& gens) {
  if (t.gen >= 0) return gens[t.gen];
  return commutator(tree_word(*t.left, gens), tree_word(*t.right, gens));
}

}  // namespace

TEST_CASE("rank-2 layer sizes match Witt numbers and brute-force Lyndon counts") {
  auto basis = HallBasis::get(2, 7);
  std::vector<long> expected{2, 1, 2, 3, 6, 9, 18};
  for (int w = 1; w <= 7; ++w) {
    CHECK(basis->layer_size(w) == expected[w - 1]);
    CHECK(HallBasis::witt_number(2, w) == expected[w - 1]);
    CHECK(lyndon_count(2, w) == expected[w - 1]);
  }
}

TEST_CASE("rank-3 layer sizes match Witt numbers") {
  auto basis = HallBasis::get(3, 5);
  for (int w = 1; w <= 5; ++w) {
    CHECK(basis->layer_size(w) == HallBasis::witt_number(3, w));
    CHECK(basis->layer_size(w) == lyndon_count(3, w));
  }
}

TEST_CASE("entries are Lyndon words with unit leading coefficient") {
  auto basis = HallBasis::get(2, 6);
  for (int w = 1; w <= 6; ++w) {
    std::vector<std::vector<std::uint8_t>> seen;
    for (const auto& e : basis->layer(w)) {
      CHECK(static_cast<int>(e.lyndon.size()) == w);
      // The lexicographically least monomial of the expansion is the Lyndon
      // word itself with coefficient 1.
      REQUIRE(!e.expansion.empty());
      CHECK(e.expansion.begin()->first == e.lyndon);
      CHECK(e.expansion.begin()->second == 1);
      seen.push_back(e.lyndon);
    }
    // Distinct and sorted.
    CHECK(std::is_sorted(seen.begin(), seen.end()));
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
  }
}

TEST_CASE("lie coordinates of basic commutator group words are unit vectors") {
  auto basis = HallBasis::get(2, 5);
  auto ctx = NilContext::get(2, 6);
  std::vector<std::string> names{"x", "y"};
  std::vector<Word> gens{Word::generator("x"), Word::generator("y")};
  for (int w = 1; w <= 5; ++w) {
    const auto& layer = basis->layer(w);
    for (std::size_t i = 0; i < layer.size(); ++i) {
      Word g = tree_word(layer[i].tree, gens);
      NilElement e = embed(g, ctx, names);
      LieCoords lc = lie_coordinates(e, *basis);
      CHECK(lc.weight == w);
      for (std::size_t j = 0; j < lc.coords.size(); ++j)
        CHECK(lc.coords[j] == (j == i ? 1 : 0));
    }
  }
}

TEST_CASE("tree strings name the bracketing") {
  auto basis = HallBasis::get(2, 3);
  CHECK(basis->layer(1)[0].tree.str({"x", "y"}) == "x");
  CHECK(basis->layer(2)[0].tree.str({"x", "y"}) == "[x,y]");
  // Weight 3 over {x,y}: [[x,y],y] and [x,[x,y]] in some bracket convention.
  for (const auto& e : basis->layer(3)) {
    std::string s = e.tree.str({"x", "y"});
    CHECK(s.find('[') != std::string::npos);
    CHECK(s.size() > 5);
  }
}
