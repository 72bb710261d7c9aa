#pragma once

#include <optional>
#include <string>
#include <vector>

#include "baerlab/abelian.hpp"
#include "baerlab/hall.hpp"
#include "baerlab/magnus.hpp"
#include "baerlab/presentation.hpp"

namespace baerlab {

// Weight-graded echelonized generating sequence of a subgroup of F/gamma_k.
// Rows are sorted by (leading weight, Hall position); pivots are positive and
// no two rows share a slot. Membership reduction is greedy along that order.
class EchelonSubgroup {
 public:
  struct Row {
    NilElement elem;
    std::optional<Word> label;  // word in the ambient generators, if tracked
    int weight = 0;
    int position = 0;
    coeff_t pivot = 0;
    std::uint64_t serial = 0;
  };

  struct TraceStep {
    int row_index;
    coeff_t exponent;
  };
  // e = rows[s0.row]^e0 * rows[s1.row]^e1 * ... as an ordered product.
  using Trace = std::vector<TraceStep>;

  static EchelonSubgroup trivial(std::vector<std::string> gen_names, int bound);
  // The whole ambient group F/gamma_k.
  static EchelonSubgroup full(std::vector<std::string> gen_names, int bound);
  // Subgroup generated by the given words.
  static EchelonSubgroup span(std::vector<std::string> gen_names, int bound,
                              const std::vector<Word>& gens);
  // Normal closure <gens>^F.
  static EchelonSubgroup normal_closure(std::vector<std::string> gen_names,
                                        int bound,
                                        const std::vector<Word>& gens);
  static EchelonSubgroup normal_closure(const Presentation& p, int bound);

  int rank() const { return ctx_->rank(); }
  int bound() const { return ctx_->bound(); }
  const std::vector<std::string>& gen_names() const { return gen_names_; }
  std::shared_ptr<const NilContext> ctx_ptr() const { return ctx_; }
  const std::vector<Row>& rows() const { return rows_; }
  bool is_normal_closed() const { return normal_closed_; }

  NilElement embed_word(const Word& w) const;

  // Subgroup generated by the current rows plus e.
  EchelonSubgroup with_element(const NilElement& e,
                               std::optional<Word> label) const;

  // [this, K]: closure of all row commutators, normal in <this, K>.
  EchelonSubgroup commutator_with(const EchelonSubgroup& k) const;

  // Rows of leading weight >= i generate H intersect gamma_i.
  EchelonSubgroup intersect_gamma(int i) const;

  std::optional<Trace> membership(const NilElement& e) const;
  bool contains(const NilElement& e) const { return membership(e).has_value(); }
  bool contains_word(const Word& w) const { return contains(embed_word(w)); }

  // Reconstructs the ordered product of a trace; used for soundness checks.
  NilElement evaluate_trace(const Trace& t) const;

  // U/T for U = this, T <= U with [U,U] <= T (both checked).
  FinAbGroup abelian_quotient(const EchelonSubgroup& t) const;

  // Product of all pivots when every basis slot below the bound is covered;
  // nullopt (infinite index) otherwise.
  std::optional<mpz_class> lattice_index() const;

  // One row per line: "w=<weight> p=<position> pivot=<n> poly=<mon:coeff,...>".
  std::string dump() const;

 private:
  EchelonSubgroup(std::vector<std::string> gen_names, int bound);

  int find_row(int weight, int position) const;
  // Reduces and installs an element; returns true if the row set changed.
  bool insert(NilElement e, std::optional<Word> label);
  // Fixpoint under pairwise row commutators (and conjugation by the ambient
  // generators when `normal`).
  void close(bool normal);
  // Size-reduces a row's deeper layers against covered slots: the logarithm
  // coordinate at every deeper pivot is brought into [0, pivot). Keeps the
  // coefficient swell of echelon reduction polynomial instead of exponential.
  void tail_reduce(Row& r, bool force);
  // Full deepest-first tail reduction of every row.
  void normalize_layers();

  std::vector<std::string> gen_names_;
  std::shared_ptr<const NilContext> ctx_;
  std::shared_ptr<const HallBasis> basis_;
  std::vector<Row> rows_;
  bool normal_closed_ = false;
  std::uint64_t next_serial_ = 1;
};

}  // namespace baerlab
