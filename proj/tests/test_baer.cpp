#include <array>
#include <set>
#include <vector>

#include "baerlab/baer.hpp"
#include "baerlab/echelon.hpp"
#include "baerlab/presentation.hpp"
#include "baerlab/word.hpp"
#include "doctest.h"

using namespace baerlab;

namespace {

// Independent oracle: evaluate a word in S3 as permutations, x = (12),
// y = (123). Words in R must evaluate to the identity.
using Perm = std::array<int, 3>;

Perm pmul(Perm a, Perm b) {
  Perm c;
  for (int i = 0; i < 3; ++i) c[i] = b[a[i]];
  return c;
}

Perm pinv(Perm a) {
  Perm c;
  for (int i = 0; i < 3; ++i) c[a[i]] = i;
  return c;
}

Perm eval_s3(const Word& w) {
  Perm x{1, 0, 2}, y{1, 2, 0}, out{0, 1, 2};
  for (const auto& l : w.letters()) {
    Perm g = l.gen == "x" ? x : y;
    mpz_class n = l.exp;
    Perm gp = n < 0 ? pinv(g) : g;
    mpz_class k = abs(n) % 6;
    for (mpz_class i = 0; i < k; ++i) out = pmul(out, gp);
  }
  return out;
}

BaerResult abelian_baer(const std::vector<long>& orders, int c) {
  return baer_invariant(abelian_presentation(orders), c, c + 2, 1);
}

}  // namespace

TEST_CASE("cyclic groups have trivial invariants at every class") {
  for (long n : {2L, 3L, 4L, 5L, 8L, 9L}) {
    for (int c = 1; c <= 4; ++c) {
      BaerResult r = abelian_baer({n}, c);
      CHECK(r.exact);
      CHECK(r.value.is_trivial());
      CHECK(!r.inconclusive());
      CHECK(!r.witness.has_value());
    }
  }
}

TEST_CASE("Schur multipliers of abelian groups match the exterior square") {
  // Lambda^2 oracle computed directly from the invariant factors.
  std::vector<std::vector<long>> cases = {{2, 2},    {3, 3},    {2, 4},
                                          {4, 4},    {2, 2, 2}, {3, 9},
                                          {2, 4, 8}, {6, 6}};
  for (const auto& orders : cases) {
    BaerResult r = abelian_baer(orders, 1);
    CHECK(r.exact);
    FinAbGroup g = abelianization(abelian_presentation(orders));
    CHECK(r.value == g.exterior_square());
    if (!r.value.is_trivial()) {
      REQUIRE(r.witness.has_value());
      CHECK(r.witness->second >= 2);
    }
  }
}

TEST_CASE("class-2 invariants of elementary abelian rank 2") {
  // N_2M(Z_p^2) is the weight-3 Lie layer tensored with Z_p: rank 2 over Z_p.
  CHECK(abelian_baer({2, 2}, 2).value == parse_ab_group("Z/2 x Z/2"));
  CHECK(abelian_baer({3, 3}, 2).value == parse_ab_group("Z/3 x Z/3"));
  CHECK(abelian_baer({2, 2}, 2).exact);
  // Schur multipliers.
  CHECK(abelian_baer({2, 2}, 1).value == parse_ab_group("Z/2"));
  CHECK(abelian_baer({3, 3}, 1).value == parse_ab_group("Z/3"));
  CHECK(abelian_baer({4}, 1).value.is_trivial());
}

TEST_CASE("schur_multiplier is the c = 1 specialization") {
  Presentation klein = abelian_presentation({2, 2});
  CHECK(schur_multiplier(klein, 3, 1).value ==
        baer_invariant(klein, 1, 3, 1).value);
}

TEST_CASE("bound preconditions") {
  Presentation p = s3_presentation();
  CHECK_THROWS_AS(baer_invariant(p, 2, 3), ArgumentError);
  CHECK_THROWS_AS(baer_invariant(p, 0, 4), ArgumentError);
}

TEST_CASE("divisibility check (Lemma 2.2 shape)") {
  BaerResult r = abelian_baer({2, 2}, 2);  // Z/2 x Z/2
  CHECK(divisibility_check(r, 2));
  CHECK(divisibility_check(r, 6));
  CHECK(!divisibility_check(r, 3));
  BaerResult t = abelian_baer({5}, 1);  // trivial
  CHECK(divisibility_check(t, 1));
}

TEST_CASE("exactness bookkeeping") {
  Presentation p = s3_presentation();
  // No class bound: never exact; trivial value must read as inconclusive.
  BaerResult r = baer_invariant(p, 1, 4);
  CHECK(!r.exact);
  if (r.value.is_trivial()) CHECK(r.inconclusive());
  // Class bound that the bound k does not reach: still not exact.
  BaerResult low = baer_invariant(abelian_presentation({2, 2}), 2, 4, 2);
  CHECK(!low.exact);
}

TEST_CASE("M(S3) is trivial at accessible bounds") {
  Presentation p = s3_presentation();
  for (int k = 4; k <= 6; ++k) {
    BaerResult r = baer_invariant(p, 1, k);
    CHECK(r.value.is_trivial());
  }
}

TEST_CASE("generator families instantiate inside the expected subgroups") {
  Presentation p = s3_presentation();
  EchelonSubgroup r = EchelonSubgroup::normal_closure(p, 5);
  // T1 = <[y,x,y,a...], [y,x,x,y,b...]>: every instance lies in R gamma_k
  // ([y,x,y] and [y,x,x,y] are relator consequences) and evaluates to the
  // identity permutation.
  for (const Word& w : t1_family().instantiate(5)) {
    CHECK(eval_s3(w) == Perm{0, 1, 2});
    CHECK(r.contains_word(w));
  }
  CHECK(!t1_family().instantiate(5).empty());
  CHECK(!t2_family().instantiate(5).empty());
  CHECK(!t3_family().instantiate(5).empty());
}

TEST_CASE("Lemma 5.2 congruences hold modulo T1 (bound 6)") {
  Presentation p = s3_presentation();
  const auto& G = p.generators;
  auto W = [&](const char* s) { return parse_word(s, G); };
  std::vector<GeneratorFamily> t1{t1_family()};
  auto cg = [&](const Word& a, const Word& b) {
    return check_congruence(a, b, t1, G, 6);
  };
  Word xy = W("[x,y]");
  Word yx = W("[y,x]");
  // (i)
  CHECK(cg(W("[x^2,y,y]"), W("[y,x,y]").pow(-2) * W("[x,y,x,y]")));
  // (ii)
  CHECK(cg(W("[x^2,y,x]"), conjugate(W("[x,y,x]"), xy) *
                               conjugate(W("[x,y,x,x]"), xy) * W("[x,y,x]")));
  // (iii)
  CHECK(cg(W("[y^3,x,y]"), W("[y,x,y]").pow(3)));
  // (iv)
  CHECK(cg(W("[y^3,x,x]"), conjugate(W("[y,x,x]"), yx.pow(2)) *
                               conjugate(W("[y,x,x]"), yx) * W("[y,x,x]")));
  // (v)
  CHECK(cg(W("[x y x y,x,y]"), W("[y,x,y]").pow(2) * W("[y,x,x,y]")));
  // (vi)
  CHECK(cg(W("[x y x y,x,x]"), conjugate(W("[y,x,x]"), yx) *
                                   conjugate(W("[y,x,x,x]"), yx) *
                                   W("[y,x,x]")));
  // (vii)
  CHECK(cg(W("[x y x y,y,y]"), W("[y,x,y]").pow(-2) * W("[x,y,x,y]")));
  // (viii)
  CHECK(cg(W("[x y x y,y,x]"), conjugate(W("[x,y,x]"), xy) *
                                   conjugate(W("[x,y,x,x]"), xy) *
                                   W("[x,y,x]")));
  // Sanity: a wrong congruence is rejected.
  CHECK(!cg(W("[y^3,x,y]"), W("[y,x,y]").pow(2)));
}

TEST_CASE("S3 pipeline at bound 6: memberships and verified traces") {
  S3Report rep = s3_counterexample(6);
  CHECK(rep.bound_used == 6);
  // Witness [y,x,x,[y,x]] is a relator consequence of weight >= 3.
  CHECK(rep.witness_in_r_gamma3);
  // It reduces to zero against [R,F,F] gamma_6; see the span certificate
  // below for the independent confirmation that this is genuine.
  CHECK(rep.witness_in_rff);
  CHECK(rep.witness_in_t3);
  // Lemma 5.3 memberships.
  for (const auto& [word, ok] : rep.rff_memberships) CHECK(ok);
  // Cyclic parts are trivial and exact.
  CHECK(rep.part2.exact);
  CHECK(rep.part2.value.is_trivial());
  CHECK(rep.part3.exact);
  CHECK(rep.part3.value.is_trivial());
  // The truncated class-2 value is trivial but not exact: inconclusive.
  CHECK(!rep.invariant.exact);
  CHECK(rep.invariant.value.is_trivial());
  CHECK(rep.inconclusive);
  CHECK(!rep.nontrivial);
  CHECK(rep.verdict.find("inconclusive") != std::string::npos);
}

TEST_CASE("span certificate: [y,x,x,[y,x]] lies in [R,F,F] gamma_6") {
  // Explicit certificate. Every generator below is [r,f,g]^h with r a
  // relator, f, g, h free words, hence in [R,F,F] by definition; no closure
  // or normal-closure machinery is trusted. The witness reduces over the
  // plain span of these 225 words, the trace reconstructs it exactly, and
  // every used label evaluates to the identity permutation in S3.
  auto p = s3_presentation();
  const auto& G = p.generators;
  auto W = [&](const char* s) { return parse_word(s, G); };
  std::vector<Word> fr = {W("x"), W("y"), W("[y,x]"), W("[y,x,x]"),
                          W("[y,x,y]")};
  std::vector<Word> conj = {Word(), W("x"), W("y")};
  std::vector<Word> gens;
  for (const char* r : {"x^2", "y^3", "x y x y"})
    for (const auto& f : fr)
      for (const auto& g : fr) {
        Word base = commutator(commutator(W(r), f), g);
        for (const auto& h : conj)
          gens.push_back(h.is_identity() ? base : conjugate(base, h));
      }
  REQUIRE(gens.size() == 225);
  EchelonSubgroup v = EchelonSubgroup::span(G, 6, gens);
  Word wit = W("[y,x,x,[y,x]]");
  NilElement we = v.embed_word(wit);
  auto trace = v.membership(we);
  REQUIRE(trace.has_value());
  CHECK(v.evaluate_trace(*trace) == we);
  std::set<int> used;
  for (const auto& st : *trace) used.insert(st.row_index);
  for (int i : used) {
    const auto& row = v.rows()[i];
    REQUIRE(row.label.has_value());
    // Label honesty: the stored word reproduces the row element exactly.
    CHECK(v.embed_word(*row.label) == row.elem);
    // And evaluates into R (identity in S3).
    CHECK(eval_s3(*row.label) == Perm{0, 1, 2});
  }
}

TEST_CASE("witness soundness for non-trivial values") {
  BaerResult r = abelian_baer({2, 2}, 1);
  REQUIRE(r.witness.has_value());
  // The witness is a relator consequence of weight exactly c+1 = 2 that is
  // non-trivial in the quotient; check the weight claim against the engine.
  Presentation klein = abelian_presentation({2, 2});
  EchelonSubgroup rr = EchelonSubgroup::normal_closure(klein, 3);
  CHECK(rr.contains_word(r.witness->first));
  CHECK(rr.embed_word(r.witness->first).leading_weight() == r.witness->second);
  CHECK(r.witness->second == 2);
}
