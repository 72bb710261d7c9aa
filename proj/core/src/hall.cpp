#include "baerlab/hall.hpp"

#include <algorithm>
#include <mutex>

#include "baerlab/errors.hpp"

namespace baerlab {

namespace {

using Digits = std::vector<std::uint8_t>;

bool is_lyndon(const Digits& w) {
  // Strictly smaller than all of its proper rotations <=> strictly smaller
  // than every proper suffix.
  for (std::size_t i = 1; i < w.size(); ++i) {
    Digits suffix(w.begin() + i, w.end());
    if (!std::lexicographical_compare(w.begin(), w.end(), suffix.begin(),
                                      suffix.end()))
      return false;
  }
  return true;
}

// Longest proper Lyndon suffix, the standard factorization split point.
std::size_t lyndon_split(const Digits& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    Digits suffix(w.begin() + i, w.end());
    if (is_lyndon(suffix)) return i;
  }
  throw InternalError("no Lyndon factorization");
}

CommTree bracketing(const Digits& w) {
  if (w.size() == 1) return CommTree{w[0], nullptr, nullptr};
  std::size_t s = lyndon_split(w);
  Digits u(w.begin(), w.begin() + s), v(w.begin() + s, w.end());
  return CommTree{-1, std::make_shared<CommTree>(bracketing(u)),
                  std::make_shared<CommTree>(bracketing(v))};
}

using Expansion = std::map<Digits, coeff_t>;

Expansion expand(const CommTree& t) {
  if (t.gen >= 0) return {{Digits{static_cast<std::uint8_t>(t.gen)}, 1}};
  Expansion a = expand(*t.left);
  Expansion b = expand(*t.right);
  Expansion out;
  auto acc = [&out](const Digits& x, const Digits& y, coeff_t c) {
    Digits m = x;
    m.insert(m.end(), y.begin(), y.end());
    out[m] += c;
  };
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      coeff_t c = checked_mul(ca, cb);
      acc(ma, mb, c);
      acc(mb, ma, -c);
    }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace

std::string CommTree::str(const std::vector<std::string>& gen_names) const {
  if (gen >= 0) return gen_names[gen];
  return "[" + left->str(gen_names) + "," + right->str(gen_names) + "]";
}

HallBasis::HallBasis(int rank, int max_weight)
    : rank_(rank), max_weight_(max_weight) {
  if (rank < 1 || max_weight < 1) throw ArgumentError("bad HallBasis parameters");
  layers_.resize(max_weight);
  for (int w = 1; w <= max_weight; ++w) {
    // Enumerate Lyndon words of length w in lexicographic order.
    Digits cur(w, 0);
    std::uint64_t count = 1;
    for (int i = 0; i < w; ++i) count *= rank;
    for (std::uint64_t v = 0; v < count; ++v) {
      std::uint64_t x = v;
      for (int i = w - 1; i >= 0; --i) {
        cur[i] = static_cast<std::uint8_t>(x % rank);
        x /= rank;
      }
      if (!is_lyndon(cur)) continue;
      Entry e;
      e.lyndon = cur;
      e.tree = bracketing(cur);
      e.expansion = expand(e.tree);
      layers_[w - 1].push_back(std::move(e));
    }
    long expect = witt_number(rank, w);
    if (expect != static_cast<long>(layers_[w - 1].size()))
      throw InternalError("Lyndon layer size disagrees with Witt's formula");
  }
}

std::shared_ptr<const HallBasis> HallBasis::get(int rank, int max_weight) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const HallBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{rank, max_weight}];
  if (!slot) slot.reset(new HallBasis(rank, max_weight));
  return slot;
}

long HallBasis::witt_number(int rank, int weight) {
  auto mobius = [](int n) {
    int m = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      n /= p;
      if (n % p == 0) return 0;
      m = -m;
    }
    if (n > 1) m = -m;
    return m;
  };
  long total = 0;
  for (int d = 1; d <= weight; ++d) {
    if (weight % d) continue;
    long pw = 1;
    for (int i = 0; i < weight / d; ++i) pw *= rank;
    total += mobius(d) * pw;
  }
  return total / weight;
}

int LieCoords::first_nonzero() const {
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != 0) return static_cast<int>(i);
  return -1;
}

LieCoords lie_coordinates(const NilElement& e, const HallBasis& basis) {
  int w = e.leading_weight();
  if (w == 0) throw ArgumentError("lie_coordinates of the identity");
  if (w > basis.max_weight())
    throw ArgumentError("HallBasis max_weight too small");
  const NilContext& cx = e.ctx();
  if (cx.rank() != basis.rank()) throw ArgumentError("rank mismatch");

  // Copy the leading homogeneous block; block ids ascend lexicographically.
  int begin = cx.block_begin(w), end = cx.block_end(w);
  std::vector<coeff_t> block(end - begin);
  for (int id = begin; id < end; ++id) block[id - begin] = e.coeff(id);

  const auto& layer = basis.layer(w);
  std::map<Digits, int> positions;
  for (std::size_t i = 0; i < layer.size(); ++i)
    positions[layer[i].lyndon] = static_cast<int>(i);

  LieCoords out;
  out.weight = w;
  out.coords.assign(layer.size(), 0);
  for (int off = 0; off < end - begin; ++off) {
    if (block[off] == 0) continue;
    Digits mon = cx.digits(begin + off);
    auto it = positions.find(mon);
    if (it == positions.end())
      throw InternalError(
          "leading part is not a Lie element (least monomial not Lyndon)");
    coeff_t c = block[off];
    out.coords[it->second] = c;
    for (const auto& [m, k] : layer[it->second].expansion) {
      int id = cx.monomial_id(m);
      block[id - begin] = checked_add(block[id - begin], checked_mul(-c, k));
    }
  }
  return out;
}

}  // namespace baerlab
