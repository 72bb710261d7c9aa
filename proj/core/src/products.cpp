#include "baerlab/products.hpp"

#include <algorithm>

#include "baerlab/baer.hpp"
#include "baerlab/errors.hpp"
#include "baerlab/hall.hpp"

namespace baerlab {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

bool product_c_supported(int c) { return c >= 1 && (is_prime(c + 1) || c == 3); }

TensorReport tensor_T(const FinAbGroup& g2ab, const FinAbGroup& g1ab, int c) {
  if (c < 1 || !is_prime(c + 1))
    throw ArgumentError("tensor_T requires c+1 prime; use that4 for c = 3");
  auto basis = HallBasis::get(2, c + 1);
  TensorReport rep;
  rep.total = FinAbGroup::trivial();
  // Every Lyndon word of length >= 2 on two letters uses both letters, so the
  // whole layer contributes; letter a (digit 0) -> G1, b (digit 1) -> G2.
  for (const auto& entry : basis->layer(c + 1)) {
    TensorSummand s;
    s.commutator = entry.tree.str({"a", "b"});
    s.value = entry.lyndon[0] == 0 ? g1ab : g2ab;
    for (std::size_t i = 1; i < entry.lyndon.size(); ++i)
      s.value = s.value.tensor(entry.lyndon[i] == 0 ? g1ab : g2ab);
    rep.total = rep.total.direct_sum(s.value);
    rep.summands.push_back(std::move(s));
  }
  return rep;
}

FinAbGroup that4(const FinAbGroup& g2ab, const FinAbGroup& g1ab) {
  FinAbGroup t21 = g2ab.tensor(g1ab);
  FinAbGroup out = t21.tensor(g1ab).tensor(g1ab);             // G2 x G1 x G1 x G1
  out = out.direct_sum(t21.tensor(g1ab).tensor(g1ab));        // i = 1
  out = out.direct_sum(t21.tensor(g2ab).tensor(g1ab));        // i = 2
  out = out.direct_sum(t21.exterior_square());                // (G2 (x) G1) ^ 2
  return out;
}

FinAbGroup direct_product_baer(const FinAbGroup& b1, const FinAbGroup& b2,
                               const FinAbGroup& g1ab, const FinAbGroup& g2ab,
                               int c) {
  if (!product_c_supported(c))
    throw ArgumentError(
        "direct product formula needs c+1 prime or c = 3 (c in {1,2,3,4,6,...})");
  FinAbGroup cross =
      c == 3 ? that4(g2ab, g1ab) : tensor_T(g2ab, g1ab, c).total;
  return b1.direct_sum(b2).direct_sum(cross);
}

bool Thm43Report::pass() const {
  if (!combined_match) return false;
  return std::all_of(parts.begin(), parts.end(),
                     [](const Part& p) { return p.match; });
}

Thm43Report verify_thm43(const std::vector<SylowFactor>& factors, int c,
                         bool attempt_combined) {
  if (factors.empty()) throw ArgumentError("no Sylow factors");
  Thm43Report rep;
  FinAbGroup assembled;
  FinAbGroup ab_so_far;
  std::optional<Presentation> combined;
  int max_class = 1;
  for (const auto& f : factors) {
    BaerResult r =
        baer_invariant(f.pres, c, f.class_bound + c + 1, f.class_bound);
    if (!r.exact) throw InternalError("per-Sylow computation should be exact");
    FinAbGroup ab = abelianization(f.pres);
    if (combined) {
      assembled = direct_product_baer(assembled, r.value, ab_so_far, ab, c);
      combined = direct_product_presentation(*combined, f.pres);
    } else {
      assembled = r.value;
      combined = f.pres;
    }
    ab_so_far = ab_so_far.direct_sum(ab);
    max_class = std::max(max_class, f.class_bound);
    Thm43Report::Part part;
    part.p = f.p;
    part.sylow_invariant = r.value;
    rep.parts.push_back(std::move(part));
  }
  rep.assembled = assembled;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    rep.parts[i].assembled_primary = assembled.primary_part(factors[i].p);
    rep.parts[i].match =
        rep.parts[i].assembled_primary == rep.parts[i].sylow_invariant;
  }
  if (attempt_combined) {
    int k = max_class + c + 1;
    // Feasibility: the Magnus context is rank^k monomials.
    double monomials = 1;
    for (int i = 0; i < k; ++i) monomials *= combined->rank();
    if (monomials <= 300'000) {
      BaerResult r = baer_invariant(*combined, c, k, max_class);
      rep.combined_exact = r.value;
      rep.combined_match = r.value == assembled;
    }
  }
  return rep;
}

Cor44Report verify_cor44(const std::vector<SylowFactor>& factors, int c) {
  Thm43Report rep = verify_thm43(factors, c, false);
  Cor44Report out;
  out.premise = std::all_of(
      rep.parts.begin(), rep.parts.end(),
      [](const Thm43Report::Part& p) { return p.sylow_invariant.is_trivial(); });
  out.conclusion = rep.assembled.is_trivial();
  return out;
}

}  // namespace baerlab
