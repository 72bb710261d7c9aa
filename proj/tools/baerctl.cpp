// baerctl: command-line surface over the library. One command per process,
// JSON report on stdout, human diagnostics on stderr.
//
// Exit codes: 0 ok, 2 parse error, 3 bounds/caps, 4 internal consistency.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "baerlab/abelian.hpp"
#include "baerlab/baer.hpp"
#include "baerlab/errors.hpp"
#include "baerlab/finite.hpp"
#include "baerlab/ocword.hpp"
#include "baerlab/presentation.hpp"
#include "baerlab/products.hpp"
#include "baerlab/word.hpp"
#include "json.hpp"

namespace {

using baerlab::FinAbGroup;
using json = nlohmann::ordered_json;

json group_json(const FinAbGroup& g) {
  json j;
  j["value"] = g.str();
  j["free_rank"] = g.free_rank();
  json invs = json::array();
  for (const auto& d : g.invariant_factors()) invs.push_back(d.get_str());
  j["invariant_factors"] = invs;
  return j;
}

json witness_json(const baerlab::BaerResult& r) {
  if (!r.witness) return nullptr;
  json w;
  w["word"] = r.witness->first.str();
  w["weight"] = r.witness->second;
  return w;
}

json baer_result_json(const baerlab::BaerResult& r) {
  json j = group_json(r.value);
  j["exact"] = r.exact;
  j["inconclusive"] = r.inconclusive();
  j["bound_used"] = r.bound_used;
  if (r.class_bound) j["class_bound"] = *r.class_bound;
  j["witness"] = witness_json(r);
  return j;
}

void emit(json& report, std::chrono::steady_clock::time_point t0) {
  auto dt = std::chrono::steady_clock::now() - t0;
  report["timing_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
  std::cout << report.dump(2) << "\n";
}

std::vector<long> finite_orders(const FinAbGroup& g) {
  if (!g.is_finite())
    throw baerlab::ArgumentError("expected a finite abelian group");
  std::vector<long> orders;
  for (const auto& d : g.invariant_factors()) {
    if (!d.fits_slong_p())
      throw baerlab::CapError("invariant factor too large: " + d.get_str());
    orders.push_back(d.get_si());
  }
  return orders;
}

// Subgroup specifier: "center" | "sylow:<p>" | "gen:<i,j,..>" (0-based
// indices into the construction generators) | "elems:<a,b,..>".
baerlab::Subgroup parse_subgroup_spec(const baerlab::FiniteGroup& g,
                                      const std::string& spec) {
  auto split_ints = [](const std::string& s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
      std::size_t comma = s.find(',', pos);
      std::string piece = s.substr(pos, comma == std::string::npos
                                            ? std::string::npos
                                            : comma - pos);
      try {
        out.push_back(std::stoi(piece));
      } catch (const std::exception&) {
        throw baerlab::ParseError("bad integer in subgroup spec: " + piece, pos);
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return out;
  };
  if (spec == "center") return baerlab::center(g);
  if (spec.rfind("sylow:", 0) == 0)
    return baerlab::sylow(g, std::stol(spec.substr(6))).subgroup;
  if (spec.rfind("gen:", 0) == 0) {
    std::vector<int> gens;
    for (int i : split_ints(spec.substr(4))) {
      if (i < 0 || i >= static_cast<int>(g.generators().size()))
        throw baerlab::ParseError("generator index out of range", 0);
      gens.push_back(g.generators()[i]);
    }
    return baerlab::subgroup(g, gens);
  }
  if (spec.rfind("elems:", 0) == 0)
    return baerlab::subgroup(g, split_ints(spec.substr(6)));
  throw baerlab::ParseError(
      "subgroup spec must be center, sylow:<p>, gen:<i,..> or elems:<a,..>", 0);
}

int cmd_baer(const std::string& input, int c, int bound,
             std::optional<int> class_bound) {
  auto t0 = std::chrono::steady_clock::now();
  baerlab::Presentation p = baerlab::load_presentation(input);
  baerlab::BaerResult r = baerlab::baer_invariant(p, c, bound, class_bound);

  json rep;
  rep["command"] = "baer";
  rep["params"] = {{"input", input}, {"c", c}, {"bound", bound}};
  if (class_bound) rep["params"]["class_bound"] = *class_bound;
  rep["result"] = baer_result_json(r);
  rep["exact"] = r.exact;
  rep["inconclusive"] = r.inconclusive();
  rep["witness"] = witness_json(r);
  emit(rep, t0);

  std::cerr << "N_" << c << "M = " << r.value.str()
            << (r.exact ? " (exact)" : r.inconclusive() ? " (inconclusive)"
                                                        : " (lower bound)")
            << "\n";
  return 0;
}

int cmd_counterexample_s3(int bound) {
  auto t0 = std::chrono::steady_clock::now();
  baerlab::S3Report r = baerlab::s3_counterexample(bound);

  json rep;
  rep["command"] = "counterexample-s3";
  rep["params"] = {{"bound", bound}};
  json res;
  res["invariant_s3"] = baer_result_json(r.invariant);
  res["invariant_z2"] = baer_result_json(r.part2);
  res["invariant_z3"] = baer_result_json(r.part3);
  json wit;
  wit["word"] = "[y,x,x,[y,x]]";
  wit["in_r_gamma3"] = r.witness_in_r_gamma3;
  wit["in_rff"] = r.witness_in_rff;
  wit["in_t3"] = r.witness_in_t3;
  res["witness"] = wit;
  json mems = json::array();
  for (const auto& [w, ok] : r.rff_memberships)
    mems.push_back({{"word", w}, {"in_rff", ok}});
  res["rff_memberships"] = mems;
  res["nontrivial"] = r.nontrivial;
  res["verdict"] = r.verdict;
  rep["result"] = res;
  rep["exact"] = r.invariant.exact;
  rep["inconclusive"] = r.inconclusive;
  rep["witness"] = wit;
  emit(rep, t0);

  std::cerr << r.verdict << "\n";
  return 0;
}

int cmd_product_formula(int c, const std::string& g1s, const std::string& g2s) {
  auto t0 = std::chrono::steady_clock::now();
  if (!baerlab::product_c_supported(c))
    throw baerlab::ArgumentError("unsupported c: need c+1 prime or c = 3");
  FinAbGroup g1 = baerlab::parse_ab_group(g1s);
  FinAbGroup g2 = baerlab::parse_ab_group(g2s);
  baerlab::Presentation p1 = baerlab::abelian_presentation(finite_orders(g1));
  baerlab::Presentation p2 = baerlab::abelian_presentation(finite_orders(g2));
  baerlab::BaerResult b1 = baerlab::baer_invariant(p1, c, c + 2, 1);
  baerlab::BaerResult b2 = baerlab::baer_invariant(p2, c, c + 2, 1);
  FinAbGroup formula = baerlab::direct_product_baer(b1.value, b2.value, g1, g2, c);

  json res;
  res["g1_baer"] = b1.value.str();
  res["g2_baer"] = b2.value.str();
  if (c != 3) {
    json summands = json::array();
    for (const auto& s : baerlab::tensor_T(g2, g1, c).summands)
      summands.push_back({{"commutator", s.commutator}, {"value", s.value.str()}});
    res["tensor_summands"] = summands;
  }
  res["formula"] = group_json(formula);

  // Cross-check against the combined presentation when the bound is feasible.
  baerlab::Presentation combined = baerlab::direct_product_presentation(p1, p2);
  int k = c + 2;
  double monomials = 1;
  for (int i = 0; i < k; ++i) monomials *= combined.rank();
  bool verified = false;
  if (monomials <= 300'000) {
    baerlab::BaerResult exact = baerlab::baer_invariant(combined, c, k, 1);
    res["combined_exact"] = exact.value.str();
    verified = exact.value == formula;
    res["match"] = verified;
    if (!verified) throw baerlab::InternalError("formula != exact computation");
  } else {
    res["combined_exact"] = nullptr;
  }

  json rep;
  rep["command"] = "product-formula";
  rep["params"] = {{"c", c}, {"g1", g1s}, {"g2", g2s}};
  rep["result"] = res;
  rep["exact"] = true;  // inputs abelian, class bound 1, k = c + 2
  rep["inconclusive"] = false;
  rep["witness"] = nullptr;
  emit(rep, t0);

  std::cerr << "N_" << c << "M(" << g1s << " x " << g2s
            << ") = " << formula.str()
            << (verified ? " (verified against combined presentation)" : "")
            << "\n";
  return 0;
}

int cmd_sylow_check(int c, const std::vector<std::string>& factor_specs,
                    bool no_combined) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<baerlab::SylowFactor> factors;
  json params_factors = json::array();
  for (const auto& spec : factor_specs) {
    // p:class:path
    std::size_t c1 = spec.find(':');
    std::size_t c2 = c1 == std::string::npos ? std::string::npos
                                             : spec.find(':', c1 + 1);
    if (c2 == std::string::npos)
      throw baerlab::ParseError("factor spec must be <p>:<class>:<path>", 0);
    baerlab::SylowFactor f;
    f.p = std::stol(spec.substr(0, c1));
    f.class_bound = std::stoi(spec.substr(c1 + 1, c2 - c1 - 1));
    std::string path = spec.substr(c2 + 1);
    f.pres = baerlab::load_presentation(path);
    params_factors.push_back(
        {{"p", f.p}, {"class", f.class_bound}, {"path", path}});
    factors.push_back(std::move(f));
  }
  baerlab::Thm43Report r = baerlab::verify_thm43(factors, c, !no_combined);

  json res;
  json parts = json::array();
  for (const auto& part : r.parts)
    parts.push_back({{"p", part.p},
                     {"sylow_invariant", part.sylow_invariant.str()},
                     {"assembled_primary", part.assembled_primary.str()},
                     {"match", part.match}});
  res["parts"] = parts;
  res["assembled"] = group_json(r.assembled);
  res["combined_exact"] =
      r.combined_exact ? json(r.combined_exact->str()) : json(nullptr);
  res["combined_match"] = r.combined_match;
  res["pass"] = r.pass();

  json rep;
  rep["command"] = "sylow-check";
  rep["params"] = {{"c", c}, {"factors", params_factors}};
  rep["result"] = res;
  rep["exact"] = true;
  rep["inconclusive"] = false;
  rep["witness"] = nullptr;
  emit(rep, t0);

  std::cerr << (r.pass() ? "all primary parts match" : "MISMATCH") << "\n";
  return r.pass() ? 0 : 4;
}

int cmd_transfer_verify(const std::string& group_path,
                        const std::string& subgroup_spec,
                        const std::string& word_text) {
  auto t0 = std::chrono::steady_clock::now();
  baerlab::FiniteGroup g = baerlab::FiniteGroup::load(group_path);
  baerlab::Subgroup b = parse_subgroup_spec(g, subgroup_spec);
  baerlab::OcWord w = baerlab::parse_oc_word(word_text);
  baerlab::Prop34Report r = baerlab::verify_prop34(g, b, w);
  bool lemma35 = baerlab::verify_lemma35(g, b, w);

  json res;
  res["group_order"] = g.order();
  res["subgroup_order"] = b.order();
  res["index"] = baerlab::subgroup_index(g, b);
  res["homomorphism"] = r.homomorphism;
  res["transversal_independent"] = r.transversal_independent;
  res["marginal_formula"] = r.marginal_formula;
  res["tuples_checked"] = r.tuples_checked;
  res["transversals_checked"] = r.transversals_checked;
  res["transversals_sampled"] = r.transversals_sampled;
  if (r.transversals_sampled) res["seed"] = r.seed;
  res["lemma35"] = lemma35;
  res["pass"] = r.pass() && lemma35;

  json rep;
  rep["command"] = "transfer-verify";
  rep["params"] = {{"group", group_path},
                   {"subgroup", subgroup_spec},
                   {"word", word_text}};
  rep["result"] = res;
  rep["exact"] = !r.transversals_sampled;
  rep["inconclusive"] = false;
  rep["witness"] = nullptr;
  emit(rep, t0);

  std::cerr << (r.pass() && lemma35 ? "transfer checks pass"
                                    : "transfer checks FAILED")
            << "\n";
  return r.pass() && lemma35 ? 0 : 4;
}

int cmd_parse(const std::string& word_text, const std::string& ocword_text,
              const std::string& gens_text) {
  auto t0 = std::chrono::steady_clock::now();
  json rep;
  rep["command"] = "parse";
  json res;
  if (!word_text.empty()) {
    std::vector<std::string> gens;
    std::size_t pos = 0;
    while (pos < gens_text.size()) {
      std::size_t sp = gens_text.find(' ', pos);
      std::string name = gens_text.substr(
          pos, sp == std::string::npos ? std::string::npos : sp - pos);
      if (!name.empty()) gens.push_back(name);
      if (sp == std::string::npos) break;
      pos = sp + 1;
    }
    rep["params"] = {{"word", word_text}, {"gens", gens_text}};
    baerlab::Word w = baerlab::parse_word(word_text, gens);
    res["reduced"] = w.str();
    res["length"] = w.length().get_str();
    res["identity"] = w.is_identity();
  } else {
    rep["params"] = {{"ocword", ocword_text}};
    baerlab::OcWord w = baerlab::parse_oc_word(ocword_text);
    res["normal_form"] = w.str();
    res["weight"] = w.weight();
    json vars = json::array();
    for (int v : w.variables()) vars.push_back("x" + std::to_string(v));
    res["variables"] = vars;
  }
  rep["result"] = res;
  rep["exact"] = true;
  rep["inconclusive"] = false;
  rep["witness"] = nullptr;
  emit(rep, t0);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Baer-invariant workbench for finitely presented groups"};
  app.require_subcommand(1);

  std::string input, g1s, g2s, group_path, subgroup_spec, word_text,
      ocword_text, gens_text = "x y";
  int c = 1, bound = 0, s3_bound = 7;
  std::optional<int> class_bound;
  std::vector<std::string> factor_specs;
  bool no_combined = false;

  auto* baer = app.add_subcommand("baer", "Baer-invariant of a presentation");
  baer->add_option("--input", input, "presentation file")->required();
  baer->add_option("--c", c, "nilpotency parameter c >= 1")->required();
  baer->add_option("--bound", bound, "truncation weight k >= c+2")->required();
  baer->add_option("--class-bound", class_bound,
                   "nilpotency class of the presented group, for exactness");

  auto* s3 = app.add_subcommand("counterexample-s3",
                                "class-2 Baer-invariant pipeline for S3");
  s3->add_option("--bound", s3_bound, "truncation weight k >= 5");

  auto* pf = app.add_subcommand("product-formula",
                                "direct-product decomposition, abelian factors");
  pf->add_option("--c", c)->required();
  pf->add_option("--g1", g1s, "abelian group, e.g. \"Z/2\"")->required();
  pf->add_option("--g2", g2s)->required();

  auto* sy = app.add_subcommand("sylow-check",
                                "assemble a nilpotent group from Sylow factors");
  sy->add_option("--c", c)->required();
  sy->add_option("--factor", factor_specs, "<p>:<class>:<presentation file>")
      ->required();
  sy->add_flag("--no-combined", no_combined,
               "skip the combined-presentation cross-check");

  auto* tv = app.add_subcommand("transfer-verify",
                                "generalized-transfer property checks");
  tv->add_option("--group", group_path, "group file")->required();
  tv->add_option("--subgroup", subgroup_spec,
                 "center | sylow:<p> | gen:<i,..> | elems:<a,..>")
      ->required();
  tv->add_option("--word", word_text, "outer commutator word, e.g. [x1,x2]")
      ->required();

  auto* pa = app.add_subcommand("parse", "parse and normalize a word");
  auto* wopt = pa->add_option("--word", word_text, "free-group word");
  auto* oopt = pa->add_option("--ocword", ocword_text, "outer commutator word");
  pa->add_option("--gens", gens_text, "generator names (default \"x y\")");
  wopt->excludes(oopt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (baer->parsed()) return cmd_baer(input, c, bound, class_bound);
    if (s3->parsed()) return cmd_counterexample_s3(s3_bound);
    if (pf->parsed()) return cmd_product_formula(c, g1s, g2s);
    if (sy->parsed()) return cmd_sylow_check(c, factor_specs, no_combined);
    if (tv->parsed())
      return cmd_transfer_verify(group_path, subgroup_spec, word_text);
    if (pa->parsed()) {
      if (word_text.empty() && ocword_text.empty()) {
        std::cerr << "parse: need --word or --ocword\n";
        return 2;
      }
      return cmd_parse(word_text, ocword_text, gens_text);
    }
  } catch (const baerlab::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const baerlab::ArgumentError& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 3;
  } catch (const baerlab::CapError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const baerlab::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
