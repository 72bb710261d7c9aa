#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "baerlab/magnus.hpp"

namespace baerlab {

// Basic commutator: a binary bracket tree over generator indices.
struct CommTree {
  int gen = -1;  // >= 0 for leaves
  std::shared_ptr<const CommTree> left, right;

  std::string str(const std::vector<std::string>& gen_names) const;
};

// Graded basis of the free Lie algebra on `rank` letters, one layer per
// weight. Layers are indexed by Lyndon words over the declared generator
// order; the bracketing is the standard (right) Lyndon factorization, and the
// expansion of each bracketing in the free associative algebra has the Lyndon
// word itself as its lexicographically least monomial with coefficient 1.
class HallBasis {
 public:
  struct Entry {
    std::vector<std::uint8_t> lyndon;  // digits, length = weight
    CommTree tree;
    // Homogeneous expansion: monomial digits -> coefficient.
    std::map<std::vector<std::uint8_t>, coeff_t> expansion;
  };

  static std::shared_ptr<const HallBasis> get(int rank, int max_weight);

  int rank() const { return rank_; }
  int max_weight() const { return max_weight_; }

  const std::vector<Entry>& layer(int weight) const {
    if (weight < 1 || weight > max_weight_)
      throw ArgumentError("weight out of range");
    return layers_[weight - 1];
  }
  int layer_size(int weight) const {
    return static_cast<int>(layer(weight).size());
  }

  // Witt's formula (1/w) sum_{d|w} mu(d) rank^{w/d}.
  static long witt_number(int rank, int weight);

 private:
  HallBasis(int rank, int max_weight);
  int rank_;
  int max_weight_;
  std::vector<std::vector<Entry>> layers_;
};

// Coordinates of the leading homogeneous part in the Hall basis layer of that
// weight. Only defined for non-identity elements; a leading part that is not
// a Lie element signals an engine bug.
struct LieCoords {
  int weight = 0;
  std::vector<coeff_t> coords;

  int first_nonzero() const;  // position, or -1
};

LieCoords lie_coordinates(const NilElement& e, const HallBasis& basis);

}  // namespace baerlab
