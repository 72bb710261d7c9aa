#include "baerlab/word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace baerlab {

Word Word::reduce(std::vector<Letter> raw) {
  Word w;
  for (auto& l : raw) {
    if (l.exp == 0) continue;
    if (!w.letters_.empty() && w.letters_.back().gen == l.gen) {
      w.letters_.back().exp += l.exp;
      if (w.letters_.back().exp == 0) w.letters_.pop_back();
    } else {
      w.letters_.push_back(std::move(l));
    }
  }
  return w;
}

Word Word::generator(std::string name, mpz_class exp) {
  return reduce({Letter{std::move(name), std::move(exp)}});
}

mpz_class Word::length() const {
  mpz_class n = 0;
  for (const auto& l : letters_) n += abs(l.exp);
  return n;
}

Word Word::inverse() const {
  std::vector<Letter> inv;
  inv.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    inv.push_back(Letter{it->gen, -it->exp});
  Word w;
  w.letters_ = std::move(inv);  // already reduced
  return w;
}

Word Word::operator*(const Word& rhs) const {
  std::vector<Letter> cat = letters_;
  cat.insert(cat.end(), rhs.letters_.begin(), rhs.letters_.end());
  return reduce(std::move(cat));
}

Word Word::pow(const mpz_class& n) const {
  if (n == 0 || is_identity()) return Word{};
  Word base = n < 0 ? inverse() : *this;
  mpz_class e = abs(n);
  if (letters_.size() == 1) {
    return generator(base.letters_[0].gen, base.letters_[0].exp * e);
  }
  // w^e does not reduce across copies beyond the boundary cancellation, so
  // plain repetition is fine at desk scale.
  Word out;
  for (mpz_class i = 0; i < e; ++i) out = out * base;
  return out;
}

std::string Word::str() const {
  if (letters_.empty()) return "";
  std::ostringstream os;
  bool first = true;
  for (const auto& l : letters_) {
    if (!first) os << ' ';
    first = false;
    os << l.gen;
    if (l.exp != 1) os << '^' << l.exp.get_str();
  }
  return os.str();
}

Word commutator(const Word& a, const Word& b) {
  return a.inverse() * b.inverse() * a * b;
}

Word commutator(const std::vector<Word>& ws) {
  if (ws.size() < 2)
    throw ArgumentError("commutator needs at least two arguments");
  Word acc = ws[0];
  for (std::size_t i = 1; i < ws.size(); ++i) acc = commutator(acc, ws[i]);
  return acc;
}

Word conjugate(const Word& a, const Word& b) { return b.inverse() * a * b; }

namespace {

struct WordParser {
  std::string_view text;
  std::size_t pos = 0;
  const std::vector<std::string>* gens;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return text[pos];
  }

  Word parse_full() {
    if (at_end()) return Word{};
    Word w = parse_word_expr();
    if (!at_end()) throw ParseError("trailing input", pos);
    return w;
  }

  Word parse_word_expr() {
    Word w = parse_term();
    while (!at_end()) {
      char c = peek();
      if (c == ')' || c == ',' || c == ']') break;
      w = w * parse_term();
    }
    return w;
  }

  Word parse_term() {
    Word a = parse_atom();
    skip_ws();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      mpz_class e = parse_int();
      if (e == 0) throw ParseError("zero exponent", pos);
      a = a.pow(e);
    }
    return a;
  }

  Word parse_atom() {
    skip_ws();
    if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
    char c = text[pos];
    if (c == '(') {
      ++pos;
      Word w = parse_word_expr();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos;
      std::vector<Word> args;
      args.push_back(parse_word_expr());
      while (peek() == ',') {
        ++pos;
        args.push_back(parse_word_expr());
      }
      expect(']');
      if (args.size() < 2) throw ParseError("commutator needs two arguments", pos);
      return commutator(args);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      std::string name(text.substr(start, pos - start));
      if (std::find(gens->begin(), gens->end(), name) == gens->end())
        throw ParseError("unknown generator '" + name + "'", start);
      return Word::generator(name);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }

  mpz_class parse_int() {
    skip_ws();
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    std::size_t digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits) throw ParseError("expected integer", start);
    return mpz_class(std::string(text.substr(start, pos - start)));
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      throw ParseError(std::string("expected '") + c + "'", pos);
    ++pos;
  }
};

}  // namespace

Word parse_word(std::string_view text, const std::vector<std::string>& gens) {
  WordParser p{text, 0, &gens};
  return p.parse_full();
}

}  // namespace baerlab
