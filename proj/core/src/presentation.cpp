#include "baerlab/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "baerlab/errors.hpp"

namespace baerlab {

void Presentation::validate() const {
  for (const auto& r : relators)
    for (const auto& l : r.letters())
      if (std::find(generators.begin(), generators.end(), l.gen) ==
          generators.end())
        throw ArgumentError("relator uses undeclared generator '" + l.gen + "'");
}

Presentation parse_presentation(std::istream& in) {
  Presentation p;
  std::string line;
  std::size_t lineno = 0;
  bool have_gens = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);
    if (line.rfind("gens:", 0) == 0) {
      if (have_gens) throw ParseError("duplicate gens: line", lineno);
      have_gens = true;
      std::istringstream gs(line.substr(5));
      std::string g;
      while (gs >> g) p.generators.push_back(g);
      if (p.generators.empty()) throw ParseError("empty generator list", lineno);
    } else if (line.rfind("rel:", 0) == 0) {
      if (!have_gens) throw ParseError("rel: before gens:", lineno);
      p.relators.push_back(parse_word(line.substr(4), p.generators));
    } else {
      throw ParseError("expected 'gens:' or 'rel:' directive", lineno);
    }
  }
  if (!have_gens) throw ParseError("missing gens: line", lineno);
  return p;
}

Presentation parse_presentation_text(const std::string& text) {
  std::istringstream in(text);
  return parse_presentation(in);
}

Presentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open presentation file: " + path, 0);
  return parse_presentation(in);
}

Presentation abelian_presentation(const std::vector<long>& orders) {
  Presentation p;
  for (std::size_t i = 0; i < orders.size(); ++i)
    p.generators.push_back("x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] < 0) throw ArgumentError("negative order");
    if (orders[i] > 0)
      p.relators.push_back(
          Word::generator(p.generators[i]).pow(mpz_class(orders[i])));
  }
  for (std::size_t i = 0; i < orders.size(); ++i)
    for (std::size_t j = i + 1; j < orders.size(); ++j)
      p.relators.push_back(commutator(Word::generator(p.generators[i]),
                                      Word::generator(p.generators[j])));
  return p;
}

namespace {

Word rename_word(const Word& w, const std::string& from, const std::string& to) {
  std::vector<Letter> ls;
  for (auto l : w.letters()) {
    if (l.gen == from) l.gen = to;
    ls.push_back(std::move(l));
  }
  return Word::reduce(std::move(ls));
}

}  // namespace

Presentation direct_product_presentation(const Presentation& a,
                                         const Presentation& b) {
  Presentation p = a;
  std::vector<std::string> bgens = b.generators;
  std::vector<Word> brels = b.relators;
  for (auto& g : bgens) {
    if (std::find(p.generators.begin(), p.generators.end(), g) ==
        p.generators.end())
      continue;
    std::string fresh = g + "_b";
    while (std::find(p.generators.begin(), p.generators.end(), fresh) !=
               p.generators.end() ||
           std::find(bgens.begin(), bgens.end(), fresh) != bgens.end())
      fresh += "b";
    for (auto& r : brels) r = rename_word(r, g, fresh);
    g = fresh;
  }
  p.generators.insert(p.generators.end(), bgens.begin(), bgens.end());
  p.relators.insert(p.relators.end(), brels.begin(), brels.end());
  for (const auto& ga : a.generators)
    for (const auto& gb : bgens)
      p.relators.push_back(
          commutator(Word::generator(ga), Word::generator(gb)));
  return p;
}

}  // namespace baerlab
