#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "baerlab/abelian.hpp"
#include "baerlab/ocword.hpp"

namespace baerlab {

// Concrete finite group on elements 0..n-1 with 0 = identity and a full
// multiplication table. Immutable after construction; everything downstream
// is brute force with explicit caps.
class FiniteGroup {
 public:
  static constexpr int kOrderCap = 128;

  // Permutations are given as image vectors over 0..degree-1; the element
  // list is the closure of the generators.
  static FiniteGroup from_permutations(int degree,
                                       const std::vector<std::vector<int>>& gens);
  // table[a][b] = a*b; closure/associativity/identity/inverses are verified.
  static FiniteGroup from_table(std::vector<std::vector<int>> table);

  // File format, one directive per line ('#' starts a comment):
  //   degree: 4
  //   gen: (1 2 3 4)
  //   gen: (1 3)
  // or, alternatively, "table:" followed by |G| whitespace-separated rows of
  // 0-based element indices.
  static FiniteGroup parse(std::istream& in);
  static FiniteGroup parse_text(const std::string& text);
  static FiniteGroup load(const std::string& path);

  int order() const { return n_; }
  int identity() const { return 0; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inv_[a]; }
  int conj(int a, int b) const;                // b^-1 a b
  int comm(int a, int b) const;                // [a,b]
  int power(int a, long e) const;
  int element_order(int a) const;
  bool is_abelian() const;

  // Indices of the construction generators.
  const std::vector<int>& generators() const { return gens_; }

  // Cycle notation for permutation-built groups, "#k" otherwise.
  std::string element_str(int a) const;

 private:
  FiniteGroup() = default;
  void finish();  // inverses + element orders

  int n_ = 0;
  std::vector<std::vector<int>> table_;
  std::vector<int> inv_;
  std::vector<int> gens_;
  std::vector<std::vector<int>> perms_;  // empty for table-built groups
};

// Subgroup as a sorted element list; always contains the identity.
struct Subgroup {
  std::vector<int> elements;
  std::vector<int> generators;

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(int g) const;
};

Subgroup subgroup(const FiniteGroup& g, std::vector<int> gens);
Subgroup full_subgroup(const FiniteGroup& g);
int subgroup_index(const FiniteGroup& g, const Subgroup& b);
bool is_normal(const FiniteGroup& g, const Subgroup& b);

// Right transversal {t_1..t_n} with t_1 = identity; coset_of[g] is the index
// i with B t_i = B g.
struct Transversal {
  std::vector<int> reps;
  std::vector<int> coset_of;
};

Transversal right_transversal(const FiniteGroup& g, const Subgroup& b);

struct SylowResult {
  Subgroup subgroup;
  bool prime_divides = false;  // false: p does not divide |G|, subgroup trivial
};

SylowResult sylow(const FiniteGroup& g, long p);

// Subgroup generated by all values of w with arguments from `domain`
// (the whole group by default). Enumerates |domain|^r tuples.
Subgroup verbal_subgroup(const FiniteGroup& g, const OcWord& w,
                         const Subgroup& domain);
Subgroup verbal_subgroup(const FiniteGroup& g, const OcWord& w);

// gamma_1 = G down to (and including) the first stable term.
std::vector<Subgroup> lower_central_series(const FiniteGroup& g);
Subgroup center(const FiniteGroup& g);
// Z_0 = 1 up to the stable term.
std::vector<Subgroup> upper_central_series(const FiniteGroup& g);
// Least c with gamma_{c+1} = 1, or nullopt for non-nilpotent groups.
std::optional<int> nilpotency_class(const FiniteGroup& g);

// All g such that inserting g into any one argument of v never changes a
// value of v. Enumerates |G|^(weight+1) * weight combinations, capped.
Subgroup marginal_subgroup(const FiniteGroup& g, const OcWord& v,
                           std::uint64_t tuple_cap = 50'000'000);

// Quotient by a normal subgroup; elem_to_coset (if non-null) receives the
// projection map onto the new element indices.
FiniteGroup quotient(const FiniteGroup& g, const Subgroup& normal,
                     std::vector<int>* elem_to_coset = nullptr);

// Invariant factors of an abelian group/subgroup via element-order counts.
FinAbGroup abelian_invariants(const FiniteGroup& g);
FinAbGroup abelian_invariants(const FiniteGroup& g, const Subgroup& s);

// Generalized transfer for the variety defined by v = [w, x_{r+1}, x_{r+2}]:
// tau(x) = prod_i [w(ys), t_i x t_{ix}^-1] as a coset of V(B) in B, with
// V(B) the v-verbal subgroup of B. Cosets are canonicalized to their least
// element index.
struct TransferContext {
  Subgroup b;
  Subgroup vb;                 // V(B), normal in B
  std::vector<int> coset_rep;  // per group element of B: least element of gV(B)
};

TransferContext transfer_context(const FiniteGroup& e, const Subgroup& b,
                                 const OcWord& w);
// ys are elements of B, one per variable of w.
int transfer(const FiniteGroup& e, const TransferContext& ctx,
             const Transversal& t, const OcWord& w, const std::vector<int>& ys,
             int x);

struct Prop34Report {
  bool homomorphism = false;
  bool transversal_independent = false;
  bool marginal_formula = false;
  long tuples_checked = 0;
  long transversals_checked = 0;
  bool transversals_sampled = false;
  unsigned seed = 0;  // recorded when sampling
  bool pass() const {
    return homomorphism && transversal_independent && marginal_formula;
  }
};

// Checks, over all ys-tuples and all x, x' in E: (a) tau(xx') = tau(x)tau(x'),
// (b) tau agrees across all transversals (all of them when |B|^n <= 10^4,
// else 100 fixed-seed samples), (c) tau(x) = [w(ys), x^n]V(B) for x in the
// brute-forced marginal subgroup of v.
Prop34Report verify_prop34(const FiniteGroup& e, const Subgroup& b,
                           const OcWord& w);

// Lemma 3.5 instance: [w(ys), x^n] in V(B) for every x in V*(E) n V(E) and
// every ys-tuple in B.
bool verify_lemma35(const FiniteGroup& e, const Subgroup& b, const OcWord& w);

struct Lemma31Report {
  bool premise_ok = false;   // A <= Z_c(H) and A normal
  bool section_abelian = false;  // V(H) n A abelian (it always should be here)
  bool quotient_abelian = false;  // H/A abelian (required by the exact oracle)
  FinAbGroup vh_cap_a;
  FinAbGroup multiplier;  // exact N_cM(H/A)
  bool surjection = false;   // multiplier ->> V(H) n A       (Lemma 3.1)
  bool embedding = false;    // V(H) n A  <-> sub(multiplier)  (Corollary 3.2)
  bool pass() const { return premise_ok && surjection && embedding; }
};

// V = gamma_{c+1}; the Baer-invariant oracle requires H/A abelian so the
// exact nilpotent computation applies (class bound 1).
Lemma31Report verify_lemma31(const FiniteGroup& h, const Subgroup& a, int c);

}  // namespace baerlab
