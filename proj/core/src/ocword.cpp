#include "baerlab/ocword.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace baerlab {

OcWord OcWord::variable(int index) {
  if (index <= 0) throw ArgumentError("variable index must be positive");
  auto n = std::make_shared<Node>();
  n->var = index;
  n->weight = 1;
  n->max_var = index;
  return OcWord(std::move(n));
}

OcWord OcWord::bracket(const OcWord& left, const OcWord& right) {
  auto lv = left.variables();
  auto rv = right.variables();
  for (int v : rv)
    if (std::find(lv.begin(), lv.end(), v) != lv.end())
      throw ParseError("not an outer commutator word: repeated variable x" +
                           std::to_string(v),
                       0);
  auto n = std::make_shared<Node>();
  n->left = left.node_;
  n->right = right.node_;
  n->weight = left.weight() + right.weight();
  n->max_var = std::max(left.max_var_index(), right.max_var_index());
  return OcWord(std::move(n));
}

OcWord OcWord::lower_central_word(int weight) {
  if (weight < 1) throw ArgumentError("weight must be >= 1");
  OcWord w = variable(1);
  for (int i = 2; i <= weight; ++i) w = bracket(w, variable(i));
  return w;
}

std::vector<int> OcWord::variables() const {
  std::vector<int> out;
  auto walk = [&](auto&& self, const Node& n) -> void {
    if (n.var > 0) {
      out.push_back(n.var);
      return;
    }
    self(self, *n.left);
    self(self, *n.right);
  };
  walk(walk, *node_);
  return out;
}

std::string OcWord::str() const {
  if (is_variable()) return "x" + std::to_string(var_index());
  return "[" + left().str() + "," + right().str() + "]";
}

bool OcWord::operator==(const OcWord& other) const {
  if (is_variable() != other.is_variable()) return false;
  if (is_variable()) return var_index() == other.var_index();
  return left() == other.left() && right() == other.right();
}

namespace {

struct OcParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  OcWord parse_full() {
    OcWord w = parse_node();
    skip_ws();
    if (pos < text.size()) throw ParseError("trailing input", pos);
    return w;
  }

  OcWord parse_node() {
    skip_ws();
    if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
    if (text[pos] == '[') {
      ++pos;
      OcWord w = parse_node();
      skip_ws();
      if (pos >= text.size() || text[pos] != ',')
        throw ParseError("expected ','", pos);
      while (pos < text.size() && text[pos] == ',') {
        ++pos;
        w = OcWord::bracket(w, parse_node());
      }
      skip_ws();
      if (pos >= text.size() || text[pos] != ']')
        throw ParseError("expected ']'", pos);
      ++pos;
      return w;
    }
    if (text[pos] == 'x') {
      ++pos;
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start) throw ParseError("expected variable index", pos);
      int idx = std::stoi(std::string(text.substr(start, pos - start)));
      return OcWord::variable(idx);
    }
    throw ParseError("expected 'x<digits>' or '['", pos);
  }
};

OcWord shift_renumber(const OcWord& w, const std::map<int, int>& remap) {
  if (w.is_variable()) return OcWord::variable(remap.at(w.var_index()));
  return OcWord::bracket(shift_renumber(w.left(), remap),
                         shift_renumber(w.right(), remap));
}

// Replace variables of w by fresh indices offset+1..offset+weight, in
// index-sorted order.
OcWord renumber_from(const OcWord& w, int offset) {
  auto vars = w.variables();
  std::sort(vars.begin(), vars.end());
  std::map<int, int> remap;
  for (std::size_t i = 0; i < vars.size(); ++i)
    remap[vars[i]] = offset + static_cast<int>(i) + 1;
  return shift_renumber(w, remap);
}

OcWord substitute(const OcWord& u, const std::map<int, OcWord>& blocks) {
  if (u.is_variable()) return blocks.at(u.var_index());
  return OcWord::bracket(substitute(u.left(), blocks),
                         substitute(u.right(), blocks));
}

}  // namespace

OcWord parse_oc_word(std::string_view text) {
  OcParser p{text};
  return p.parse_full();
}

OcWord compose(const OcWord& u, const OcWord& v) {
  auto uvars = u.variables();
  std::sort(uvars.begin(), uvars.end());
  int t = v.weight();
  std::map<int, OcWord> blocks;
  for (std::size_t i = 0; i < uvars.size(); ++i)
    blocks.emplace(uvars[i], renumber_from(v, static_cast<int>(i) * t));
  return substitute(u, blocks);
}

Word evaluate_word(const OcWord& w, const std::vector<Word>& args) {
  return evaluate(
      w, args, [](const Word& a, const Word& b) { return a * b; },
      [](const Word& a) { return a.inverse(); });
}

}  // namespace baerlab
