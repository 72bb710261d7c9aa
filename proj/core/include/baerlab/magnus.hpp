#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "baerlab/errors.hpp"
#include "baerlab/word.hpp"

namespace baerlab {

// Coefficients are arbitrary-precision: echelon reduction exponents compound
// multiplicatively across reduction steps and overflow any fixed width.
using coeff_t = mpz_class;

inline const mpz_class& to_mpz(const coeff_t& v) { return v; }

inline std::string coeff_str(const coeff_t& v) { return v.get_str(); }

inline coeff_t checked_add(const coeff_t& a, const coeff_t& b) { return a + b; }
inline coeff_t checked_mul(const coeff_t& a, const coeff_t& b) { return a * b; }

// Indexing tables for noncommutative monomials over `rank` letters of degree
// < `bound`. Monomial ids enumerate degrees ascending; within a degree they
// are ordered lexicographically, which is what the Hall/Lyndon coordinate
// extraction relies on.
class NilContext {
 public:
  static std::shared_ptr<const NilContext> get(int rank, int bound);

  int rank() const { return rank_; }
  int bound() const { return bound_; }
  int size() const { return static_cast<int>(len_.size()); }

  int degree(int id) const { return len_[id]; }
  int block_begin(int deg) const { return offsets_[deg]; }
  int block_end(int deg) const { return offsets_[deg + 1]; }

  // Concatenation id, or -1 when the degree reaches the bound.
  int concat(int a, int b) const {
    int l = len_[a] + len_[b];
    if (l >= bound_) return -1;
    return offsets_[l] + static_cast<int>(val_[a] * pow_[len_[b]] + val_[b]);
  }

  int monomial_id(const std::vector<std::uint8_t>& digits) const;
  std::vector<std::uint8_t> digits(int id) const;

 private:
  NilContext(int rank, int bound);
  int rank_;
  int bound_;
  std::vector<std::uint8_t> len_;
  std::vector<std::uint64_t> val_;
  std::vector<std::uint64_t> pow_;
  std::vector<int> offsets_;
};

// Group-like element of F/gamma_k(F): a truncated Magnus series with
// constant term 1. Generator x_i maps to 1 + X_i.
class NilElement {
 public:
  explicit NilElement(std::shared_ptr<const NilContext> ctx);

  static NilElement one(std::shared_ptr<const NilContext> ctx);
  static NilElement generator(std::shared_ptr<const NilContext> ctx, int i);

  const NilContext& ctx() const { return *ctx_; }
  std::shared_ptr<const NilContext> ctx_ptr() const { return ctx_; }

  coeff_t coeff(int id) const { return c_[id]; }

  NilElement operator*(const NilElement& rhs) const;
  NilElement inverse() const;
  NilElement pow(const mpz_class& n) const;
  NilElement conj(const NilElement& by) const;  // by^-1 * this * by

  bool is_identity() const;
  // Smallest degree >= 1 with a nonzero homogeneous part; 0 for the identity.
  int leading_weight() const;

  friend bool operator==(const NilElement& a, const NilElement& b) {
    return a.c_ == b.c_;
  }

  std::string str(const std::vector<std::string>& gen_names) const;

 private:
  std::shared_ptr<const NilContext> ctx_;
  std::vector<coeff_t> c_;
};

NilElement nil_commutator(const NilElement& a, const NilElement& b);

// Formal logarithm, dense by monomial id (constant term 0). For group
// elements the result is a Lie series with rational coefficients (Friedrichs),
// which is what layer-wise coordinate reduction relies on.
std::vector<mpq_class> log_series(const NilElement& e);

// Multiplicative embedding of a free word; gen names index into `gens`.
NilElement embed(const Word& w, std::shared_ptr<const NilContext> ctx,
                 const std::vector<std::string>& gens);

}  // namespace baerlab
