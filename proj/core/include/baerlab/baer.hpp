#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "baerlab/echelon.hpp"

namespace baerlab {

// Lower bound (exact under the nilpotency threshold) for
// R ∩ gamma_{c+1}(F) / [R,_cF] computed modulo gamma_k.
struct BaerResult {
  FinAbGroup value;
  bool exact = false;
  int bound_used = 0;
  std::optional<int> class_bound;
  // A relator-subgroup word exhibiting non-triviality, with its leading
  // weight; present whenever value is non-trivial.
  std::optional<std::pair<Word, int>> witness;

  // Trivial at a non-exact bound proves nothing either way.
  bool inconclusive() const { return !exact && value.is_trivial(); }
};

// pre: c >= 1, k >= c + 2. exact iff m is supplied and k >= m + c + 1.
// Soundness: a non-trivial value certifies a non-trivial invariant of the
// presented group; a trivial non-exact value is inconclusive.
BaerResult baer_invariant(const Presentation& p, int c, int k,
                          std::optional<int> m = std::nullopt);

// c = 1 specialization.
BaerResult schur_multiplier(const Presentation& p, int k,
                            std::optional<int> m = std::nullopt);

// true iff every prime dividing |result.value| divides n (finite value only).
bool divisibility_check(const BaerResult& result, const mpz_class& n);

// One factor of a family template: a left-normed commutator
// [args..., t_1, ..., t_n]^exponent whose tail letters t_i range over the
// family alphabet with n >= 1 when `tailed` (n = 0 otherwise). args of size
// one is the bare word. `weight` is the commutator weight of the head.
struct FamilyFactor {
  std::vector<Word> args;
  int weight = 0;
  bool tailed = false;
  long exponent = 1;
};

// A normal-generating family given by finitely many product templates whose
// tails range over the alphabet. Instantiation enumerates every tail
// assignment visible below the weight bound; factors pushed to or beyond the
// bound degenerate to the identity, which stays inside the family modulo
// gamma_k.
struct GeneratorFamily {
  std::string name;
  std::vector<std::string> alphabet;
  std::vector<std::vector<FamilyFactor>> templates;

  std::vector<Word> instantiate(int bound) const;
};

// The three relator-commutator families of the S3 = <x,y | x^2, y^3, xyxy>
// computation, over the alphabet {x, y}.
GeneratorFamily t1_family();
GeneratorFamily t2_family();
GeneratorFamily t3_family();

// true iff lhs * rhs^-1 lies in the normal closure of the instantiated
// families modulo gamma_k. One-sided: true certifies the congruence modulo
// the families' closure times gamma_k; false is inconclusive at this bound.
bool check_congruence(const Word& lhs, const Word& rhs,
                      const std::vector<GeneratorFamily>& fams,
                      const std::vector<std::string>& gens, int k);

Presentation s3_presentation();

// Full counterexample pipeline at bound k: the class-2 invariant of S3, the
// (trivial, exact) invariants of its cyclic Sylow images, and the direct
// witness certificate for [y,x,x,[y,x]].
struct S3Report {
  int bound_used = 0;
  BaerResult invariant;                  // c = 2 for S3
  BaerResult part2, part3;               // Z2 and Z3 at c = 2, exact
  bool witness_in_r_gamma3 = false;      // embed([y,x,x,[y,x]]) in R*gamma_k ∩ gamma_3
  bool witness_in_rff = false;           // ... in [R,F,F]*gamma_k
  bool witness_in_t3 = false;            // ... in the instantiated T3 closure
  // Lemma-style memberships in [R,F,F]*gamma_k, reported word by word.
  std::vector<std::pair<std::string, bool>> rff_memberships;
  bool nontrivial = false;               // theorem-grade conclusion
  bool inconclusive = false;
  std::string verdict;
};

// pre: k >= 5.
S3Report s3_counterexample(int k);

}  // namespace baerlab
