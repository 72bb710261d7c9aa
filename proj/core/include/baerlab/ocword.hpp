#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "baerlab/errors.hpp"
#include "baerlab/word.hpp"

namespace baerlab {

// Outer commutator word: a bracket tree over distinct variables x1, x2, ...
// Weight = number of leaves.
class OcWord {
 public:
  static OcWord variable(int index);
  static OcWord bracket(const OcWord& left, const OcWord& right);

  // Left-normed gamma_{c+1} word [x1,...,x_{c+1}] (weight c+1 >= 1).
  static OcWord lower_central_word(int weight);

  bool is_variable() const { return node_->var > 0; }
  int var_index() const { return node_->var; }
  OcWord left() const { return OcWord(node_->left); }
  OcWord right() const { return OcWord(node_->right); }
  int weight() const { return node_->weight; }
  int max_var_index() const { return node_->max_var; }

  // Variable indices in leaf order.
  std::vector<int> variables() const;

  std::string str() const;

  bool operator==(const OcWord& other) const;

 private:
  struct Node {
    int var = 0;  // > 0 for leaves
    std::shared_ptr<const Node> left, right;
    int weight = 1;
    int max_var = 0;
  };
  explicit OcWord(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Grammar: ocword := 'x'digits | '[' ocword {',' ocword} ']' (left-normed).
// Repeated variables are rejected ("not an outer commutator word").
OcWord parse_oc_word(std::string_view text);

// Substitutes disjoint variable blocks of v into u; weight multiplies.
// Leaves of u are taken in index-sorted order; the i-th leaf receives a copy
// of v over variables (i-1)*t+1 ... i*t.
OcWord compose(const OcWord& u, const OcWord& v);

// Recursive evaluation in any group: leaves index into args (1-based),
// brackets become commutators via the supplied operations.
template <class T, class MulFn, class InvFn>
T evaluate(const OcWord& w, const std::vector<T>& args, MulFn mul, InvFn inv) {
  if (w.is_variable()) {
    int i = w.var_index();
    if (i > static_cast<int>(args.size()))
      throw ArgumentError("evaluate: missing argument x" + std::to_string(i));
    return args[i - 1];
  }
  T a = evaluate(w.left(), args, mul, inv);
  T b = evaluate(w.right(), args, mul, inv);
  return mul(mul(inv(a), inv(b)), mul(a, b));
}

// Evaluation to a free-group Word with args as Words.
Word evaluate_word(const OcWord& w, const std::vector<Word>& args);

}  // namespace baerlab
