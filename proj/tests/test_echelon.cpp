#include <random>
#include <vector>

#include "baerlab/echelon.hpp"
#include "baerlab/word.hpp"
#include "doctest.h"

using namespace baerlab;

namespace {

const std::vector<std::string> kGens{"x", "y"};

Word random_product(std::mt19937& rng, const std::vector<Word>& gens, int len) {
  std::uniform_int_distribution<int> gi(0, static_cast<int>(gens.size()) - 1);
  Word w;
  for (int i = 0; i < len; ++i) {
    const Word& g = gens[gi(rng)];
    w = (rng() % 2) ? w * g : w * g.inverse();
  }
  return w;
}

}  // namespace

TEST_CASE("span membership is sound: traces reconstruct the element") {
  Word x = Word::generator("x");
  Word y = Word::generator("y");
  std::vector<Word> gens{x * x, commutator(x, y), y.pow(3)};
  EchelonSubgroup h = EchelonSubgroup::span(kGens, 5, gens);
  std::mt19937 rng(23);
  for (int t = 0; t < 100; ++t) {
    Word w = random_product(rng, gens, 1 + static_cast<int>(rng() % 4));
    NilElement e = h.embed_word(w);
    auto trace = h.membership(e);
    REQUIRE(trace.has_value());
    CHECK(h.evaluate_trace(*trace) == e);
  }
  // x itself is not in <x^2, [x,y], y^3> modulo gamma_5 (it survives in the
  // abelianization Z x Z / <2e1, 3e2>).
  CHECK(!h.contains_word(x));
  CHECK(!h.contains_word(y));
  CHECK(h.contains_word(y.pow(6)));
}

TEST_CASE("row invariants: sorted slots, positive pivots, no duplicates") {
  Word x = Word::generator("x");
  Word y = Word::generator("y");
  EchelonSubgroup h =
      EchelonSubgroup::span(kGens, 5, {x * x, y * x, commutator(x, y).pow(2)});
  std::vector<std::pair<int, int>> slots;
  for (const auto& r : h.rows()) {
    CHECK(r.pivot > 0);
    CHECK(r.elem.leading_weight() == r.weight);
    slots.emplace_back(r.weight, r.position);
  }
  CHECK(std::is_sorted(slots.begin(), slots.end()));
  CHECK(std::adjacent_find(slots.begin(), slots.end()) == slots.end());
}

TEST_CASE("normal closure contains conjugates and is closed") {
  Presentation p = load_presentation(PROJECT_ROOT "/data/s3.pres");
  EchelonSubgroup r = EchelonSubgroup::normal_closure(p, 5);
  CHECK(r.is_normal_closed());
  std::mt19937 rng(29);
  Word x = Word::generator("x");
  Word y = Word::generator("y");
  std::vector<Word> free_gens{x, y};
  for (int t = 0; t < 60; ++t) {
    const Word& rel = p.relators[rng() % p.relators.size()];
    Word conj_by = random_product(rng, free_gens, 1 + static_cast<int>(rng() % 3));
    CHECK(r.contains_word(conjugate(rel, conj_by)));
    CHECK(r.contains_word(conjugate(rel.inverse(), conj_by)));
  }
  // Products of conjugates too.
  CHECK(r.contains_word(conjugate(p.relators[0], y) * p.relators[2].inverse()));
  // x alone maps onto a nonzero class in S3's abelianization, so it is not
  // in R gamma_5.
  CHECK(!r.contains_word(x));
  // x^2 * y^3 is.
  CHECK(r.contains_word(x.pow(2) * y.pow(3)));
}

TEST_CASE("intersect_gamma keeps exactly the deep rows") {
  Presentation p = load_presentation(PROJECT_ROOT "/data/s3.pres");
  EchelonSubgroup r = EchelonSubgroup::normal_closure(p, 5);
  for (int i = 2; i <= 4; ++i) {
    EchelonSubgroup deep = r.intersect_gamma(i);
    for (const auto& row : deep.rows()) CHECK(row.weight >= i);
    // Members of the intersection are members of both sides.
    for (const auto& row : deep.rows()) {
      CHECK(r.contains(row.elem));
      CHECK(row.elem.leading_weight() >= i);
    }
  }
  // [x^2, y] is in R and in gamma_2.
  Word x = Word::generator("x");
  Word y = Word::generator("y");
  CHECK(r.intersect_gamma(2).contains_word(commutator(x.pow(2), y)));
}

TEST_CASE("commutator subgroup [H,F] behaves") {
  Presentation p = load_presentation(PROJECT_ROOT "/data/s3.pres");
  EchelonSubgroup r = EchelonSubgroup::normal_closure(p, 5);
  EchelonSubgroup f = EchelonSubgroup::full(kGens, 5);
  EchelonSubgroup rf = r.commutator_with(f);
  Word x = Word::generator("x");
  Word y = Word::generator("y");
  // Generating commutators of [R,F].
  CHECK(rf.contains_word(commutator(p.relators[0], x)));
  CHECK(rf.contains_word(commutator(p.relators[1], commutator(x, y))));
  // [R,F] <= R and every member has weight >= 2.
  for (const auto& row : rf.rows()) {
    CHECK(r.contains(row.elem));
    CHECK(row.weight >= 2);
  }
  // Conjugation stability (normal in <R,F> = F).
  CHECK(rf.contains_word(conjugate(commutator(p.relators[0], y), x)));
}

TEST_CASE("full ambient group and lattice indices") {
  EchelonSubgroup f = EchelonSubgroup::full(kGens, 4);
  CHECK(f.lattice_index().has_value());
  CHECK(*f.lattice_index() == 1);
  Word x = Word::generator("x");
  CHECK(f.contains_word(x));

  // Rank 1: <x^6> modulo gamma_2 has index 6.
  EchelonSubgroup c6 = EchelonSubgroup::span({"x"}, 2, {x.pow(6)});
  REQUIRE(c6.lattice_index().has_value());
  CHECK(*c6.lattice_index() == 6);

  // <x^2, [x,y]>: covers weight-1 slot x with pivot 2 only -> infinite index.
  EchelonSubgroup h = EchelonSubgroup::span(kGens, 3, {x.pow(2)});
  CHECK(!h.lattice_index().has_value());
}

TEST_CASE("abelian quotients of echelon pairs") {
  Word x = Word::generator("x");
  // Z/5 as full/<x^5> in rank 1.
  EchelonSubgroup u = EchelonSubgroup::full({"x"}, 3);
  EchelonSubgroup t = EchelonSubgroup::span({"x"}, 3, {x.pow(5)});
  FinAbGroup q = u.abelian_quotient(t);
  // F/<x^5> modulo gamma_3 for rank 1 free = Z/5.
  CHECK(q == parse_ab_group("Z/5"));

  // Schur multiplier of Z/2 x Z/2 through the raw echelon interface:
  // R ∩ gamma_2 / [R,F] with R = ncl(x^2, y^2, [x,y]).
  Presentation klein = abelian_presentation({2, 2});
  EchelonSubgroup r = EchelonSubgroup::normal_closure(klein, 4);
  EchelonSubgroup f2 = EchelonSubgroup::full(klein.generators, 4);
  FinAbGroup m = r.intersect_gamma(2).abelian_quotient(r.commutator_with(f2));
  CHECK(m == parse_ab_group("Z/2"));
}
