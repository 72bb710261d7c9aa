#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "baerlab/errors.hpp"
#include "baerlab/presentation.hpp"

namespace baerlab {

// Dense integer matrix, row-major.
struct IntMat {
  int rows = 0;
  int cols = 0;
  std::vector<mpz_class> a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  mpz_class& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const mpz_class& at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }

  static IntMat identity(int n);
  IntMat operator*(const IntMat& rhs) const;
  // Fraction-free determinant (square matrices only).
  mpz_class det() const;
  friend bool operator==(const IntMat&, const IntMat&) = default;
};

// u * m * v = d, with u and v unimodular and d diagonal with the
// divisibility chain d1 | d2 | ... (nonnegative entries).
struct SnfResult {
  IntMat d, u, v;
  std::vector<mpz_class> diagonal() const;
};

SnfResult smith_normal_form(const IntMat& m);

// Finitely generated abelian group in invariant-factor form:
// Z^free_rank x Z/d1 x Z/d2 x ... with 2 <= d1 | d2 | ...
class FinAbGroup {
 public:
  FinAbGroup() = default;  // trivial group

  static FinAbGroup trivial() { return FinAbGroup(); }
  static FinAbGroup free_abelian(int rank);
  static FinAbGroup cyclic(const mpz_class& n);  // n = 0 gives Z
  // Canonicalizes an arbitrary direct sum of cyclic groups (0 = Z).
  static FinAbGroup from_orders(std::vector<mpz_class> orders);
  // Z^ngens modulo the row span of the relation matrix.
  static FinAbGroup cokernel(const IntMat& relations, int ngens);

  int free_rank() const { return free_rank_; }
  const std::vector<mpz_class>& invariant_factors() const { return invs_; }

  bool is_trivial() const { return free_rank_ == 0 && invs_.empty(); }
  bool is_finite() const { return free_rank_ == 0; }
  mpz_class order() const;     // finite only
  mpz_class exponent() const;  // finite only; trivial group has exponent 1

  FinAbGroup direct_sum(const FinAbGroup& other) const;
  FinAbGroup tensor(const FinAbGroup& other) const;
  FinAbGroup exterior_square() const;

  FinAbGroup power_subgroup(long n) const;      // A^n = {a^n}
  FinAbGroup torsion_subgroup(long n) const;    // A[n] = {a : a^n = 1}
  FinAbGroup primary_part(long p) const;        // finite only
  FinAbGroup coprime_part(long n) const;        // A^[n], finite only

  // Epimorphism existence by invariant-factor domination.
  bool surjects_onto(const FinAbGroup& other) const;
  // Subgroup-embedding existence (finite groups only).
  bool embeds_into(const FinAbGroup& other) const;

  std::string str() const;

  friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;

 private:
  int free_rank_ = 0;
  std::vector<mpz_class> invs_;  // ascending divisibility chain, all >= 2
};

// Accepts the str() format: "1", "Z", "Z^2", "Z/4 x Z/2", any order.
FinAbGroup parse_ab_group(const std::string& text);

FinAbGroup abelianization(const Presentation& p);

}  // namespace baerlab
