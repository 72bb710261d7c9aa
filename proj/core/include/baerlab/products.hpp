#pragma once

#include <optional>
#include <string>
#include <vector>

#include "baerlab/abelian.hpp"
#include "baerlab/presentation.hpp"

namespace baerlab {

// Direct-product decompositions of nilpotent Baer-invariants and the Sylow
// assembly built on them. Supported class parameters: c+1 prime, or c = 3.
bool product_c_supported(int c);

// One tensor summand of T(G2,G1)_{c+1}: a basic commutator of weight c+1 on
// the letters a, b with a -> G1ab and b -> G2ab occurrence-wise.
struct TensorSummand {
  std::string commutator;
  FinAbGroup value;
};

struct TensorReport {
  std::vector<TensorSummand> summands;
  FinAbGroup total;
};

// pre: c + 1 prime.
TensorReport tensor_T(const FinAbGroup& g2ab, const FinAbGroup& g1ab, int c);

// The displayed three-part c = 3 formula: one 4-fold tensor, two mixed
// 4-fold tensors, and the wedge square of G2 (x) G1.
FinAbGroup that4(const FinAbGroup& g2ab, const FinAbGroup& g1ab);

// N_cM(G1 x G2) = B1 + B2 + T(G2,G1)_{c+1} (or That4 when c = 3), with Bi
// the factor invariants and Giab the factor abelianizations.
FinAbGroup direct_product_baer(const FinAbGroup& b1, const FinAbGroup& b2,
                               const FinAbGroup& g1ab, const FinAbGroup& g2ab,
                               int c);

// A Sylow factor: a presentation of a p-group together with its nilpotency
// class (for exactness of the per-factor computation).
struct SylowFactor {
  long p = 0;
  Presentation pres;
  int class_bound = 1;
};

struct Thm43Report {
  struct Part {
    long p = 0;
    FinAbGroup sylow_invariant;    // exact N_cM(G_p)
    FinAbGroup assembled_primary;  // p-primary part of the assembled invariant
    bool match = false;
  };
  std::vector<Part> parts;
  FinAbGroup assembled;  // iterated direct_product_baer over the factors
  // Exact invariant of the combined direct-product presentation, when the
  // total bound is feasible.
  std::optional<FinAbGroup> combined_exact;
  bool combined_match = true;

  bool pass() const;
};

// pre: distinct primes, each presentation a p-group of the stated class,
// c supported. Assembles N_cM(prod G_p) by iterated Theorem 2.3 and compares
// primary parts against the per-Sylow exact invariants.
Thm43Report verify_thm43(const std::vector<SylowFactor>& factors, int c,
                         bool attempt_combined = true);

struct Cor44Report {
  bool premise = false;     // all Sylow invariants trivial
  bool conclusion = false;  // assembled invariant trivial
  // Vacuously true when the premise fails.
  bool pass() const { return !premise || conclusion; }
};

Cor44Report verify_cor44(const std::vector<SylowFactor>& factors, int c);

}  // namespace baerlab
