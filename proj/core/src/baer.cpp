#include "baerlab/baer.hpp"

#include <algorithm>

namespace baerlab {

namespace {

constexpr std::size_t kInstanceCap = 200000;

Word g(const char* name) { return Word::generator(name); }

std::vector<Word> cargs(std::initializer_list<const char*> names) {
  std::vector<Word> out;
  for (const char* n : names) out.push_back(g(n));
  return out;
}

}  // namespace

BaerResult baer_invariant(const Presentation& p, int c, int k,
                          std::optional<int> m) {
  if (c < 1) throw ArgumentError("nilpotency class c must be >= 1");
  if (k < c + 2) throw ArgumentError("bound k must be >= c + 2");
  p.validate();
  auto s = EchelonSubgroup::normal_closure(p, k);
  auto ambient = EchelonSubgroup::full(p.generators, k);
  auto t = s;
  for (int i = 0; i < c; ++i) t = t.commutator_with(ambient);
  auto u = s.intersect_gamma(c + 1);

  BaerResult r;
  r.value = u.abelian_quotient(t);
  r.bound_used = k;
  r.class_bound = m;
  r.exact = m.has_value() && k >= *m + c + 1;
  if (!r.value.is_trivial()) {
    for (const auto& row : u.rows()) {
      if (t.contains(row.elem)) continue;
      if (row.label) {
        r.witness = std::pair{*row.label, row.weight};
        break;
      }
    }
  }
  return r;
}

BaerResult schur_multiplier(const Presentation& p, int k,
                            std::optional<int> m) {
  return baer_invariant(p, 1, k, m);
}

bool divisibility_check(const BaerResult& result, const mpz_class& n) {
  if (!result.value.is_finite()) return false;
  mpz_class o = result.value.order();
  for (mpz_class d = gcd(o, n); d > 1; d = gcd(o, n)) o /= d;
  return o == 1;
}

std::vector<Word> GeneratorFamily::instantiate(int bound) const {
  std::vector<Word> out;
  for (const auto& tmpl : templates) {
    std::vector<std::vector<Word>> variants;
    for (const auto& f : tmpl) {
      std::vector<Word> vs;
      if (!f.tailed) {
        Word head = f.args.size() == 1 ? f.args[0] : commutator(f.args);
        vs.push_back(head.pow(f.exponent));
      } else {
        int max_tails = bound - 1 - f.weight;
        for (int n = 1; n <= max_tails; ++n) {
          std::vector<std::size_t> idx(n, 0);
          for (;;) {
            std::vector<Word> args = f.args;
            for (int i = 0; i < n; ++i)
              args.push_back(Word::generator(alphabet[idx[i]]));
            vs.push_back(commutator(args).pow(f.exponent));
            int i = n - 1;
            while (i >= 0 && ++idx[i] == alphabet.size()) idx[i--] = 0;
            if (i < 0) break;
          }
        }
        // A tail count pushing the factor to the bound degenerates it to the
        // identity modulo gamma_k; that stays inside the family.
        if (tmpl.size() > 1 || vs.empty()) vs.push_back(Word());
      }
      variants.push_back(std::move(vs));
    }
    std::vector<Word> acc{Word()};
    for (const auto& vs : variants) {
      std::vector<Word> next;
      next.reserve(acc.size() * vs.size());
      for (const auto& a : acc)
        for (const auto& v : vs) next.push_back(a * v);
      if (next.size() > kInstanceCap)
        throw CapError("family instantiation exceeds the instance cap");
      acc = std::move(next);
    }
    for (auto& w : acc)
      if (!w.is_identity()) out.push_back(std::move(w));
  }
  return out;
}

GeneratorFamily t1_family() {
  GeneratorFamily fam;
  fam.name = "T1";
  fam.alphabet = {"x", "y"};
  fam.templates = {
      {FamilyFactor{cargs({"y", "x", "y"}), 3, true, 1}},
      {FamilyFactor{cargs({"y", "x", "x", "y"}), 4, true, 1}},
  };
  return fam;
}

GeneratorFamily t2_family() {
  GeneratorFamily fam = t1_family();
  fam.name = "T2";
  // Inner-bracket heads range over the alphabet; degenerate brackets vanish.
  for (int len : {3, 2}) {
    std::vector<std::size_t> idx(len, 0);
    for (;;) {
      std::vector<Word> inner;
      for (int i = 0; i < len; ++i)
        inner.push_back(Word::generator(fam.alphabet[idx[i]]));
      Word b = commutator(inner);
      if (!b.is_identity()) {
        std::vector<Word> args = cargs({"y", "x", "x"});
        args.push_back(b);
        fam.templates.push_back({FamilyFactor{args, 3 + len, true, 1}});
      }
      int i = len - 1;
      while (i >= 0 && ++idx[i] == fam.alphabet.size()) idx[i--] = 0;
      if (i < 0) break;
    }
  }
  fam.templates.push_back({FamilyFactor{cargs({"y", "x", "y"}), 3, false, 1}});
  fam.templates.push_back(
      {FamilyFactor{cargs({"y", "x", "x", "y"}), 4, false, 1}});
  fam.templates.push_back(
      {FamilyFactor{cargs({"x", "y", "x", "y"}), 4, false, 1}});
  return fam;
}

GeneratorFamily t3_family() {
  GeneratorFamily fam = t2_family();
  fam.name = "T3";
  Word yx = commutator(g("y"), g("x"));
  std::vector<Word> yxx_b = cargs({"y", "x", "x"});
  yxx_b.push_back(yx);  // [y,x,x,[y,x]]
  std::vector<Word> yxxx_b = cargs({"y", "x", "x", "x"});
  yxxx_b.push_back(yx);  // [y,x,x,x,[y,x]]

  fam.templates.push_back({FamilyFactor{cargs({"y", "x", "x"}), 3, false, 3}});
  fam.templates.push_back({FamilyFactor{yxx_b, 5, false, 3}});
  fam.templates.push_back({FamilyFactor{yxx_b, 5, false, 2},
                           FamilyFactor{yxxx_b, 6, false, 1}});
  fam.templates.push_back({FamilyFactor{cargs({"y", "x", "x"}), 3, false, 2},
                           FamilyFactor{cargs({"y", "x", "x", "x"}), 4, false, 1},
                           FamilyFactor{yxx_b, 5, false, -1}});
  fam.templates.push_back({FamilyFactor{cargs({"y", "x", "x"}), 3, true, 3}});
  fam.templates.push_back(
      {FamilyFactor{cargs({"y", "x", "x"}), 3, true, 2},
       FamilyFactor{cargs({"y", "x", "x", "x"}), 4, true, 1}});
  fam.templates.push_back({FamilyFactor{yxxx_b, 6, true, 1}});
  return fam;
}

bool check_congruence(const Word& lhs, const Word& rhs,
                      const std::vector<GeneratorFamily>& fams,
                      const std::vector<std::string>& gens, int k) {
  std::vector<Word> instances;
  for (const auto& fam : fams) {
    auto ws = fam.instantiate(k);
    instances.insert(instances.end(), ws.begin(), ws.end());
  }
  auto t = EchelonSubgroup::normal_closure(gens, k, instances);
  return t.contains_word(lhs * rhs.inverse());
}

Presentation s3_presentation() {
  Presentation p;
  p.generators = {"x", "y"};
  p.relators = {parse_word("x^2", p.generators), parse_word("y^3", p.generators),
                parse_word("x y x y", p.generators)};
  return p;
}

S3Report s3_counterexample(int k) {
  if (k < 5) throw ArgumentError("k must be >= 5");
  S3Report rep;
  rep.bound_used = k;
  Presentation p = s3_presentation();
  rep.invariant = baer_invariant(p, 2, k);
  // The Sylow images are cyclic, hence class 1: exact already at bound 4.
  rep.part2 = baer_invariant(abelian_presentation({2}), 2, 4, 1);
  rep.part3 = baer_invariant(abelian_presentation({3}), 2, 4, 1);

  auto s = EchelonSubgroup::normal_closure(p, k);
  auto ambient = EchelonSubgroup::full(p.generators, k);
  auto rff = s.commutator_with(ambient).commutator_with(ambient);
  Word wit = parse_word("[y,x,x,[y,x]]", p.generators);
  NilElement e = s.embed_word(wit);
  rep.witness_in_r_gamma3 = e.leading_weight() >= 3 && s.contains(e);
  rep.witness_in_rff = rff.contains(e);
  auto t3 = EchelonSubgroup::normal_closure(p.generators, k,
                                            t3_family().instantiate(k));
  rep.witness_in_t3 = t3.contains(e);
  for (const char* txt : {"[y,x,y]", "[x,y,x,y]", "[y,x,x,y]"})
    rep.rff_memberships.emplace_back(
        txt, rff.contains_word(parse_word(txt, p.generators)));

  rep.nontrivial = !rep.invariant.value.is_trivial();
  rep.inconclusive = rep.invariant.inconclusive();
  if (rep.nontrivial && rep.part2.value.is_trivial() && rep.part2.exact &&
      rep.part3.value.is_trivial() && rep.part3.exact) {
    rep.verdict =
        "class-2 multiplier of S3 is non-trivial while both Sylow images have "
        "trivial class-2 multiplier: at least one primary part fails to embed";
  } else if (rep.inconclusive) {
    rep.verdict =
        "inconclusive at this bound: the class-2 value is trivial but not "
        "exact; any certified non-trivial value would make a primary part "
        "fail to embed into the (trivial, exact) Sylow invariants";
  } else {
    rep.verdict = "no conclusion";
  }
  return rep;
}

}  // namespace baerlab
