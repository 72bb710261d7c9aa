// Acceptance gate: one line per criterion, exact equality throughout.
// Returns the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "baerlab/baer.hpp"
#include "baerlab/echelon.hpp"
#include "baerlab/finite.hpp"
#include "baerlab/hall.hpp"
#include "baerlab/presentation.hpp"
#include "baerlab/products.hpp"
#include "baerlab/word.hpp"
#include "json.hpp"

using namespace baerlab;
using json = nlohmann::ordered_json;

namespace {

int g_failures = 0;

void criterion(int n, bool ok, const std::string& what,
               const std::string& detail = "") {
  std::printf("CRITERION %2d: %s — %s\n", n, ok ? "PASS" : "FAIL",
              what.c_str());
  if (!ok) {
    ++g_failures;
    if (!detail.empty()) std::printf("              %s\n", detail.c_str());
  }
}

std::string data(const char* name) {
  return std::string(PROJECT_ROOT "/data/") + name;
}

json run_cli(const std::string& args) {
  std::string cmd =
      "cd " PROJECT_ROOT " && " BAERCTL_PATH " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return nullptr;
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  if (pclose(pipe) != 0) return nullptr;
  return json::parse(out, nullptr, false);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

BaerResult abelian_baer(const std::vector<long>& orders, int c) {
  return baer_invariant(abelian_presentation(orders), c, c + 2, 1);
}

// --- criteria ---------------------------------------------------------

void criteria_1_and_2() {
  auto t0 = std::chrono::steady_clock::now();
  json cli = run_cli("counterexample-s3 --bound 7");
  double cli_secs = seconds_since(t0);
  S3Report r7 = s3_counterexample(7);

  bool not_silent = false;  // a trivial value must be announced inconclusive
  if (cli.is_object()) {
    bool cli_nontrivial = cli["result"].value("nontrivial", false);
    bool cli_inconclusive = cli.value("inconclusive", false);
    not_silent = cli_nontrivial || cli_inconclusive;
  }
  bool membership_pair =
      r7.witness_in_r_gamma3 && !r7.witness_in_rff;  // paper's claim
  bool six_number = divisibility_check(r7.invariant, 6);
  bool in_time = cli_secs < 120.0;

  // Bound 7 came back inconclusive, so the criterion escalates to bound 8.
  S3Report r8 = s3_counterexample(8);
  bool nontrivial_certified = r7.nontrivial || r8.nontrivial;
  bool stable = r7.nontrivial == r8.nontrivial &&
                r7.witness_in_rff == r8.witness_in_rff;

  criterion(
      1,
      not_silent && membership_pair && nontrivial_certified && six_number &&
          in_time && stable,
      "counterexample-s3: non-trivial class-2 invariant of S3 with witness "
      "pair, stable at bound 8, 6-number, < 120 s",
      "the truncated computation is honest-red here: [y,x,x,[y,x]] lies in "
      "[R,F,F]*gamma_6 (225-generator span certificate, see tests/test_baer.cpp "
      "\"span certificate\"), so no gamma_k truncation can separate it from "
      "[R,F,F]; bounds 7 and 8 both report inconclusive (announced, not "
      "silent: in_r_gamma3=" +
          std::to_string(r7.witness_in_r_gamma3) +
          " in_rff=" + std::to_string(r7.witness_in_rff) +
          " inconclusive@7=" + std::to_string(r7.inconclusive) +
          " inconclusive@8=" + std::to_string(r8.inconclusive) +
          " cli_secs=" + std::to_string(cli_secs));

  bool parts_ok = r7.part2.exact && r7.part2.value.is_trivial() &&
                  r7.part3.exact && r7.part3.value.is_trivial();
  bool verdict_ok = r7.verdict.find("embed") != std::string::npos;
  criterion(2, parts_ok && verdict_ok,
            "same command: N2M(Z2) = N2M(Z3) = 1 exact, non-embedding verdict "
            "emitted");
}

void criterion_3() {
  bool ok = true;
  Presentation s3 = s3_presentation();
  for (int k = 4; k <= 7; ++k)
    ok = ok && baer_invariant(s3, 1, k).value.is_trivial();
  for (long n : {2L, 3L, 4L, 5L, 8L, 9L, 16L})
    for (int c = 1; c <= 4; ++c) {
      BaerResult r = abelian_baer({n}, c);
      ok = ok && r.exact && r.value.is_trivial();
    }
  criterion(3, ok,
            "soundness: S3 trivial at c = 1 (bounds 4-7); cyclic groups "
            "trivial and exact for all c <= 4");
}

void criterion_4() {
  auto t0 = std::chrono::steady_clock::now();
  const char* files[] = {"z2.pres",       "z3.pres",    "z4.pres",
                         "z6.pres",       "z8.pres",    "z9.pres",
                         "z12.pres",      "z16.pres",   "z32.pres",
                         "z2xz2.pres",    "z4xz2.pres", "z4xz4.pres",
                         "z8xz2.pres",    "z3xz3.pres", "z2xz2xz2.pres"};
  int cases = 0;
  bool ok = true;
  for (const char* f : files) {
    Presentation p = load_presentation(data(f));
    FinAbGroup g = abelianization(p);
    if (g.order() > 32) continue;
    BaerResult r = baer_invariant(p, 1, 3, 1);
    ok = ok && r.exact && r.value == g.exterior_square();
    ++cases;
  }
  double secs = seconds_since(t0);
  criterion(4, ok && cases >= 10 && secs < 60.0,
            "exact c = 1 invariant equals the exterior square for " +
                std::to_string(cases) + " abelian groups of order <= 32 (" +
                std::to_string(secs) + " s)");
}

void criterion_5() {
  struct Case {
    std::vector<long> a, b;
  };
  std::vector<Case> pairs = {{{2}, {2}},  {{2}, {3}}, {{4}, {4}},
                             {{2, 2}, {3}}, {{8}, {2}}, {{4}, {6}}};
  bool ok = true;
  int checks = 0;
  for (const auto& pr : pairs) {
    FinAbGroup g1 = abelianization(abelian_presentation(pr.a));
    FinAbGroup g2 = abelianization(abelian_presentation(pr.b));
    for (int c : {1, 2, 3, 4}) {
      FinAbGroup formula = direct_product_baer(
          abelian_baer(pr.a, c).value, abelian_baer(pr.b, c).value, g1, g2, c);
      Presentation combined = direct_product_presentation(
          abelian_presentation(pr.a), abelian_presentation(pr.b));
      BaerResult exact = baer_invariant(combined, c, c + 2, 1);
      ok = ok && exact.exact && formula == exact.value;
      ++checks;
    }
  }
  criterion(5, ok,
            "direct-product formula equals the exact combined computation for "
            "6 nilpotent pairs, c in {1,2,3,4} (" +
                std::to_string(checks) + " checks)");
}

void criterion_6() {
  struct Assembly {
    const char* name;
    std::vector<SylowFactor> factors;
  };
  std::vector<Assembly> assemblies;
  assemblies.push_back(
      {"(Z2xZ2) x Z3",
       {{2, abelian_presentation({2, 2}), 1}, {3, abelian_presentation({3}), 1}}});
  assemblies.push_back(
      {"Z4 x (Z3xZ3)",
       {{2, abelian_presentation({4}), 1},
        {3, abelian_presentation({3, 3}), 1}}});
  assemblies.push_back(
      {"(Z2xZ2) x (Z3xZ3)",
       {{2, abelian_presentation({2, 2}), 1},
        {3, abelian_presentation({3, 3}), 1}}});
  assemblies.push_back(
      {"D4 x Z3",
       {{2, load_presentation(data("d4.pres")), 2},
        {3, abelian_presentation({3}), 1}}});
  assemblies.push_back(
      {"Q8 x Z9",
       {{2, load_presentation(data("q8.pres")), 2},
        {3, abelian_presentation({9}), 1}}});
  bool ok = true;
  for (const auto& a : assemblies)
    for (int c : {1, 2, 3, 4}) {
      Thm43Report rep = verify_thm43(a.factors, c, false);
      for (const auto& part : rep.parts) ok = ok && part.match;
      ok = ok && rep.pass();
    }
  criterion(6, ok,
            "Sylow assembly: primary parts equal per-Sylow exact invariants "
            "for 5 assembled groups, c in {1,2,3,4}");
}

void criteria_7_and_8() {
  std::vector<std::pair<FiniteGroup, Subgroup>> pairs;
  {
    FiniteGroup s3 = FiniteGroup::load(data("s3.grp"));
    pairs.emplace_back(s3, subgroup(s3, {s3.generators()[1]}));
    FiniteGroup d4 = FiniteGroup::load(data("d4.grp"));
    pairs.emplace_back(d4, subgroup(d4, {d4.generators()[0]}));
    FiniteGroup q8 = FiniteGroup::load(data("q8.grp"));
    pairs.emplace_back(q8, subgroup(q8, {q8.generators()[0]}));
    FiniteGroup a4 = FiniteGroup::load(data("a4.grp"));
    pairs.emplace_back(a4, sylow(a4, 2).subgroup);
  }
  bool ok7 = true;
  for (const char* wtxt : {"x1", "[x1,x2]"}) {
    OcWord w = parse_oc_word(wtxt);
    for (const auto& [g, b] : pairs) {
      Prop34Report rep = verify_prop34(g, b, w);
      ok7 = ok7 && rep.pass() && verify_lemma35(g, b, w);
    }
  }
  criterion(7, ok7,
            "transfer is a transversal-independent homomorphism with the "
            "marginal formula, plus the V*(E) n V(E) membership check, on "
            "{(S3,A3),(D4,Z4),(Q8,Z4),(A4,V4)} x {x1,[x1,x2]}");

  bool ok8 = true;
  FiniteGroup d4 = FiniteGroup::load(data("d4.grp"));
  FiniteGroup q8 = FiniteGroup::load(data("q8.grp"));
  for (const FiniteGroup* g : {&d4, &q8}) {
    Lemma31Report rep = verify_lemma31(*g, center(*g), 1);
    ok8 = ok8 && rep.pass();
  }
  criterion(8, ok8,
            "multiplier of G/Z(G) surjects onto [G,G] n Z(G) (and the section "
            "embeds) for D4 and Q8 at c = 1");
}

void criterion_9() {
  auto basis = HallBasis::get(2, 7);
  std::vector<int> expected{2, 1, 2, 3, 6, 9, 18};
  bool layers_ok = true;
  for (int w = 1; w <= 7; ++w)
    layers_ok = layers_ok && basis->layer_size(w) == expected[w - 1] &&
                HallBasis::witt_number(2, w) == expected[w - 1];

  std::vector<std::string> gens{"x", "y"};
  auto ctx = NilContext::get(2, 6);
  std::mt19937 rng(0x5eed);
  auto random_word = [&] {
    std::uniform_int_distribution<int> len(0, 6), gi(0, 1), ex(-2, 2);
    std::vector<Letter> raw;
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
      int e = ex(rng);
      if (e != 0) raw.push_back({gens[gi(rng)], e});
    }
    return Word::reduce(std::move(raw));
  };
  bool magnus_ok = true;
  for (int t = 0; t < 1000; ++t) {
    Word a = random_word(), b = random_word();
    magnus_ok = magnus_ok && embed(a, ctx, gens) * embed(b, ctx, gens) ==
                                 embed(a * b, ctx, gens);
  }
  bool assoc_ok = true;
  for (int t = 0; t < 1000; ++t) {
    NilElement a = embed(random_word(), ctx, gens);
    NilElement b = embed(random_word(), ctx, gens);
    NilElement c = embed(random_word(), ctx, gens);
    assoc_ok = assoc_ok && (a * b) * c == a * (b * c);
  }
  criterion(9, layers_ok && magnus_ok && assoc_ok,
            "Hall layer sizes [2,1,2,3,6,9,18] for rank 2; 1000 + 1000 "
            "randomized Magnus homomorphism/associativity cases");
}

void criterion_10() {
  Presentation p = s3_presentation();
  const auto& G = p.generators;
  auto W = [&](const char* s) { return parse_word(s, G); };
  std::vector<GeneratorFamily> t1{t1_family()};
  auto cg = [&](const Word& a, const Word& b) {
    return check_congruence(a, b, t1, G, 7);
  };
  Word xy = W("[x,y]");
  Word yx = W("[y,x]");
  bool c52 = true;
  c52 = c52 && cg(W("[x^2,y,y]"), W("[y,x,y]").pow(-2) * W("[x,y,x,y]"));
  c52 = c52 && cg(W("[x^2,y,x]"), conjugate(W("[x,y,x]"), xy) *
                                      conjugate(W("[x,y,x,x]"), xy) *
                                      W("[x,y,x]"));
  c52 = c52 && cg(W("[y^3,x,y]"), W("[y,x,y]").pow(3));
  c52 = c52 && cg(W("[y^3,x,x]"), conjugate(W("[y,x,x]"), yx.pow(2)) *
                                      conjugate(W("[y,x,x]"), yx) *
                                      W("[y,x,x]"));
  c52 = c52 && cg(W("[x y x y,x,y]"), W("[y,x,y]").pow(2) * W("[y,x,x,y]"));
  c52 = c52 && cg(W("[x y x y,x,x]"), conjugate(W("[y,x,x]"), yx) *
                                          conjugate(W("[y,x,x,x]"), yx) *
                                          W("[y,x,x]"));
  c52 = c52 && cg(W("[x y x y,y,y]"), W("[y,x,y]").pow(-2) * W("[x,y,x,y]"));
  c52 = c52 && cg(W("[x y x y,y,x]"), conjugate(W("[x,y,x]"), xy) *
                                          conjugate(W("[x,y,x,x]"), xy) *
                                          W("[x,y,x]"));

  // Lemma 5.3 memberships in [R,F,F]*gamma_7.
  EchelonSubgroup r = EchelonSubgroup::normal_closure(p, 7);
  EchelonSubgroup f = EchelonSubgroup::full(G, 7);
  EchelonSubgroup rff = r.commutator_with(f).commutator_with(f);
  bool c53 = rff.contains_word(W("[y,x,y]")) &&
             rff.contains_word(W("[x,y,x,y]")) &&
             rff.contains_word(W("[y,x,x,y]"));
  criterion(10, c52 && c53,
            "Lemma-5.2-style congruences (i)-(viii) and the three "
            "[R,F,F]-membership checks hold at bound 7");
}

}  // namespace

int main() {
  criteria_1_and_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criteria_7_and_8();
  criterion_9();
  criterion_10();
  std::printf("---\n%d of 10 criteria failed\n", g_failures);
  return g_failures;
}
