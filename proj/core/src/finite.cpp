#include "baerlab/finite.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "baerlab/baer.hpp"
#include "baerlab/errors.hpp"

namespace baerlab {

namespace {

std::vector<int> compose(const std::vector<int>& p, const std::vector<int>& q) {
  // a then b: (p*q)(i) = q(p(i)).
  std::vector<int> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = q[p[i]];
  return out;
}

}  // namespace

void FiniteGroup::finish() {
  inv_.assign(n_, -1);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (table_[a][b] == 0) inv_[a] = b;
  for (int a = 0; a < n_; ++a)
    if (inv_[a] < 0) throw ArgumentError("group table has a non-invertible element");
}

FiniteGroup FiniteGroup::from_permutations(
    int degree, const std::vector<std::vector<int>>& gens) {
  if (degree < 1) throw ArgumentError("degree must be >= 1");
  for (const auto& p : gens) {
    if (static_cast<int>(p.size()) != degree)
      throw ArgumentError("permutation size disagrees with the degree");
    std::vector<bool> seen(degree, false);
    for (int v : p) {
      if (v < 0 || v >= degree || seen[v])
        throw ArgumentError("not a permutation");
      seen[v] = true;
    }
  }
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      std::vector<int> m = compose(elems[i], g);
      if (index.emplace(m, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(m));
        if (static_cast<int>(elems.size()) > kOrderCap)
          throw CapError("group order exceeds the cap");
      }
    }
  FiniteGroup out;
  out.n_ = static_cast<int>(elems.size());
  out.perms_ = elems;
  out.table_.assign(out.n_, std::vector<int>(out.n_));
  for (int a = 0; a < out.n_; ++a)
    for (int b = 0; b < out.n_; ++b)
      out.table_[a][b] = index.at(compose(elems[a], elems[b]));
  for (const auto& g : gens) out.gens_.push_back(index.at(g));
  out.finish();
  return out;
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table) {
  int n = static_cast<int>(table.size());
  if (n < 1 || n > kOrderCap) throw ArgumentError("bad table size");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw ArgumentError("ragged table");
    for (int v : row)
      if (v < 0 || v >= n) throw ArgumentError("table entry out of range");
  }
  // Locate the two-sided identity and relabel it to 0.
  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n; ++b)
      ok = ok && table[a][b] == b && table[b][a] == b;
    if (ok) e = a;
  }
  if (e < 0) throw ArgumentError("table has no identity");
  if (e != 0) {
    std::vector<int> relabel(n);
    std::iota(relabel.begin(), relabel.end(), 0);
    std::swap(relabel[0], relabel[e]);
    std::vector<std::vector<int>> t2(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        t2[a][b] = relabel[table[relabel[a]][relabel[b]]];
    table = std::move(t2);
  }
  // Latin square + associativity.
  for (int a = 0; a < n; ++a) {
    std::vector<bool> row(n, false), col(n, false);
    for (int b = 0; b < n; ++b) {
      if (row[table[a][b]] || col[table[b][a]])
        throw ArgumentError("table is not a Latin square");
      row[table[a][b]] = col[table[b][a]] = true;
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw ArgumentError("table is not associative");
  FiniteGroup out;
  out.n_ = n;
  out.table_ = std::move(table);
  for (int a = 1; a < n; ++a) out.gens_.push_back(a);
  out.finish();
  return out;
}

FiniteGroup FiniteGroup::parse(std::istream& in) {
  int degree = -1;
  std::vector<std::vector<int>> gens;
  std::string line;
  bool table_mode = false;
  std::vector<int> flat;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    if (table_mode) {
      int v;
      while (ls >> v) flat.push_back(v);
      continue;
    }
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "degree:") {
      if (!(ls >> degree)) throw ParseError("bad degree line", 0);
    } else if (key == "gen:") {
      if (degree < 1) throw ParseError("gen: before degree:", 0);
      std::vector<int> p(degree);
      std::iota(p.begin(), p.end(), 0);
      std::string rest;
      std::getline(ls, rest);
      std::size_t i = 0;
      while (i < rest.size()) {
        if (std::isspace(static_cast<unsigned char>(rest[i]))) { ++i; continue; }
        if (rest[i] != '(') throw ParseError("expected '(' in cycle notation", 0);
        ++i;
        std::vector<int> cyc;
        while (i < rest.size() && rest[i] != ')') {
          if (std::isspace(static_cast<unsigned char>(rest[i]))) { ++i; continue; }
          if (!std::isdigit(static_cast<unsigned char>(rest[i])))
            throw ParseError("expected a point in cycle notation", 0);
          int v = 0;
          while (i < rest.size() && std::isdigit(static_cast<unsigned char>(rest[i])))
            v = v * 10 + (rest[i++] - '0');
          if (v < 1 || v > degree) throw ParseError("cycle point out of range", 0);
          cyc.push_back(v - 1);
        }
        if (i >= rest.size()) throw ParseError("unclosed cycle", 0);
        ++i;
        for (std::size_t j = 0; j < cyc.size(); ++j)
          p[cyc[j]] = cyc[(j + 1) % cyc.size()];
      }
      gens.push_back(std::move(p));
    } else if (key == "table:") {
      table_mode = true;
    } else {
      throw ParseError("unknown directive '" + key + "'", 0);
    }
  }
  if (table_mode) {
    int n = 0;
    while (static_cast<std::size_t>(n) * n < flat.size()) ++n;
    if (static_cast<std::size_t>(n) * n != flat.size())
      throw ParseError("table entry count is not a perfect square", 0);
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) table[a][b] = flat[a * n + b];
    return from_table(std::move(table));
  }
  if (degree < 1 || gens.empty())
    throw ParseError("group file needs degree: and at least one gen:", 0);
  return from_permutations(degree, gens);
}

FiniteGroup FiniteGroup::parse_text(const std::string& text) {
  std::istringstream is(text);
  return parse(is);
}

FiniteGroup FiniteGroup::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open group file: " + path, 0);
  return parse(f);
}

int FiniteGroup::conj(int a, int b) const { return mul(mul(inv(b), a), b); }

int FiniteGroup::comm(int a, int b) const {
  return mul(mul(inv(a), inv(b)), mul(a, b));
}

int FiniteGroup::power(int a, long e) const {
  int base = e < 0 ? inv(a) : a;
  unsigned long k = e < 0 ? -static_cast<unsigned long>(e) : e;
  int out = 0;
  while (k) {
    if (k & 1) out = mul(out, base);
    base = mul(base, base);
    k >>= 1;
  }
  return out;
}

int FiniteGroup::element_order(int a) const {
  int o = 1, x = a;
  while (x != 0) {
    x = mul(x, a);
    ++o;
  }
  return o;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::string FiniteGroup::element_str(int a) const {
  if (perms_.empty()) return "#" + std::to_string(a);
  if (a == 0) return "()";
  const auto& p = perms_[a];
  std::string out;
  std::vector<bool> done(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (done[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = true;
      if (!first) out += " ";
      first = false;
      out += std::to_string(j + 1);
      j = p[j];
    }
    out += ")";
  }
  return out;
}

bool Subgroup::contains(int g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

Subgroup subgroup(const FiniteGroup& g, std::vector<int> gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<int> worklist{0};
  in[0] = true;
  for (int v : gens)
    if (!in[v]) {
      in[v] = true;
      worklist.push_back(v);
    }
  for (std::size_t i = 0; i < worklist.size(); ++i)
    for (int v : gens) {
      int m = g.mul(worklist[i], v);
      if (!in[m]) {
        in[m] = true;
        worklist.push_back(m);
      }
      m = g.mul(worklist[i], g.inv(v));
      if (!in[m]) {
        in[m] = true;
        worklist.push_back(m);
      }
    }
  Subgroup out;
  out.generators = std::move(gens);
  for (int v = 0; v < g.order(); ++v)
    if (in[v]) out.elements.push_back(v);
  return out;
}

Subgroup full_subgroup(const FiniteGroup& g) {
  Subgroup out;
  out.elements.resize(g.order());
  std::iota(out.elements.begin(), out.elements.end(), 0);
  out.generators = g.generators();
  return out;
}

int subgroup_index(const FiniteGroup& g, const Subgroup& b) {
  if (g.order() % b.order() != 0)
    throw InternalError("subgroup order does not divide the group order");
  return g.order() / b.order();
}

bool is_normal(const FiniteGroup& g, const Subgroup& b) {
  for (int x = 0; x < g.order(); ++x)
    for (int h : b.elements)
      if (!b.contains(g.conj(h, x))) return false;
  return true;
}

Transversal right_transversal(const FiniteGroup& g, const Subgroup& b) {
  Transversal t;
  t.coset_of.assign(g.order(), -1);
  for (int x = 0; x < g.order(); ++x) {
    if (t.coset_of[x] >= 0) continue;
    // x opens a new coset B x; pick x itself as the representative, except
    // the first coset which always gets the identity.
    int rep = t.reps.empty() ? 0 : x;
    int i = static_cast<int>(t.reps.size());
    t.reps.push_back(rep);
    for (int h : b.elements) t.coset_of[g.mul(h, rep)] = i;
  }
  return t;
}

SylowResult sylow(const FiniteGroup& g, long p) {
  if (p < 2) throw ArgumentError("p must be a prime >= 2");
  long q = 1, n = g.order();
  while (n % p == 0) {
    n /= p;
    q *= p;
  }
  SylowResult out;
  out.prime_divides = q > 1;
  out.subgroup = subgroup(g, {});
  if (!out.prime_divides) return out;
  auto is_p_power = [&](int o) {
    while (o % p == 0) o /= static_cast<int>(p);
    return o == 1;
  };
  while (out.subgroup.order() < q) {
    // Grow inside the normalizer: some p-element of N(P) \ P extends P.
    bool grew = false;
    for (int x = 1; x < g.order() && !grew; ++x) {
      if (out.subgroup.contains(x) || !is_p_power(g.element_order(x))) continue;
      bool normalizes = true;
      for (int h : out.subgroup.elements)
        normalizes = normalizes && out.subgroup.contains(g.conj(h, x));
      if (!normalizes) continue;
      std::vector<int> gens = out.subgroup.generators;
      gens.push_back(x);
      Subgroup bigger = subgroup(g, gens);
      if (bigger.order() > out.subgroup.order() &&
          is_p_power(bigger.order())) {
        out.subgroup = std::move(bigger);
        grew = true;
      }
    }
    if (!grew) throw InternalError("Sylow growth stalled");
  }
  return out;
}

Subgroup verbal_subgroup(const FiniteGroup& g, const OcWord& w,
                         const Subgroup& domain) {
  int r = w.max_var_index();
  std::uint64_t tuples = 1;
  for (int i = 0; i < r; ++i) {
    tuples *= domain.order();
    if (tuples > 50'000'000) throw CapError("verbal enumeration cap exceeded");
  }
  std::vector<bool> value(g.order(), false);
  std::vector<int> args(r, 0), idx(r, 0);
  auto mul = [&g](int a, int b) { return g.mul(a, b); };
  auto inv = [&g](int a) { return g.inv(a); };
  for (std::uint64_t t = 0; t < tuples; ++t) {
    for (int i = 0; i < r; ++i) args[i] = domain.elements[idx[i]];
    value[evaluate(w, args, mul, inv)] = true;
    for (int i = r - 1; i >= 0; --i) {
      if (++idx[i] < domain.order()) break;
      idx[i] = 0;
    }
  }
  std::vector<int> gens;
  for (int v = 1; v < g.order(); ++v)
    if (value[v]) gens.push_back(v);
  return subgroup(g, gens);
}

Subgroup verbal_subgroup(const FiniteGroup& g, const OcWord& w) {
  return verbal_subgroup(g, w, full_subgroup(g));
}

namespace {

// [S, G] as a subgroup, from element-by-element commutators.
Subgroup commutator_term(const FiniteGroup& g, const Subgroup& s) {
  std::vector<int> gens;
  for (int h : s.elements)
    for (int x = 0; x < g.order(); ++x) {
      int c = g.comm(h, x);
      if (c != 0) gens.push_back(c);
    }
  return subgroup(g, gens);
}

}  // namespace

std::vector<Subgroup> lower_central_series(const FiniteGroup& g) {
  std::vector<Subgroup> out{full_subgroup(g)};
  for (;;) {
    Subgroup next = commutator_term(g, out.back());
    if (next.order() == out.back().order()) break;
    out.push_back(std::move(next));
    if (out.back().order() == 1) break;
  }
  return out;
}

Subgroup center(const FiniteGroup& g) {
  std::vector<int> gens;
  for (int a = 1; a < g.order(); ++a) {
    bool central = true;
    for (int b = 0; b < g.order() && central; ++b)
      central = g.mul(a, b) == g.mul(b, a);
    if (central) gens.push_back(a);
  }
  return subgroup(g, gens);
}

std::vector<Subgroup> upper_central_series(const FiniteGroup& g) {
  std::vector<Subgroup> out{subgroup(g, {})};
  for (;;) {
    // Z_{i+1} = all a with [a, x] in Z_i for every x.
    const Subgroup& zi = out.back();
    std::vector<int> gens;
    for (int a = 0; a < g.order(); ++a) {
      bool ok = true;
      for (int x = 0; x < g.order() && ok; ++x) ok = zi.contains(g.comm(a, x));
      if (ok && a != 0) gens.push_back(a);
    }
    Subgroup next = subgroup(g, gens);
    if (next.order() == zi.order()) break;
    out.push_back(std::move(next));
    if (out.back().order() == g.order()) break;
  }
  return out;
}

std::optional<int> nilpotency_class(const FiniteGroup& g) {
  auto series = lower_central_series(g);
  if (series.back().order() != 1 && g.order() > 1) return std::nullopt;
  return static_cast<int>(series.size()) - 1;
}

Subgroup marginal_subgroup(const FiniteGroup& g, const OcWord& v,
                           std::uint64_t tuple_cap) {
  int s = v.max_var_index();
  std::uint64_t tuples = 1;
  for (int i = 0; i < s; ++i) {
    tuples *= g.order();
    if (tuples * g.order() > tuple_cap)
      throw CapError("marginal enumeration cap exceeded");
  }
  auto mul = [&g](int a, int b) { return g.mul(a, b); };
  auto inv = [&g](int a) { return g.inv(a); };
  std::vector<int> gens;
  std::vector<int> args(s, 0);
  for (int cand = 1; cand < g.order(); ++cand) {
    bool marginal = true;
    std::vector<int> idx(s, 0);
    for (std::uint64_t t = 0; t < tuples && marginal; ++t) {
      for (int i = 0; i < s; ++i) args[i] = idx[i];
      int base = evaluate(v, args, mul, inv);
      for (int pos = 0; pos < s && marginal; ++pos) {
        int save = args[pos];
        args[pos] = g.mul(save, cand);
        marginal = evaluate(v, args, mul, inv) == base;
        args[pos] = save;
      }
      for (int i = s - 1; i >= 0; --i) {
        if (++idx[i] < g.order()) break;
        idx[i] = 0;
      }
    }
    if (marginal) gens.push_back(cand);
  }
  return subgroup(g, gens);
}

FiniteGroup quotient(const FiniteGroup& g, const Subgroup& normal,
                     std::vector<int>* elem_to_coset) {
  if (!is_normal(g, normal)) throw ArgumentError("quotient by a non-normal subgroup");
  std::vector<int> coset(g.order(), -1);
  std::vector<int> reps;
  for (int x = 0; x < g.order(); ++x) {
    if (coset[x] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int h : normal.elements) coset[g.mul(h, x)] = id;
  }
  int m = static_cast<int>(reps.size());
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) table[a][b] = coset[g.mul(reps[a], reps[b])];
  if (elem_to_coset) *elem_to_coset = coset;
  return FiniteGroup::from_table(std::move(table));
}

FinAbGroup abelian_invariants(const FiniteGroup& g) {
  return abelian_invariants(g, full_subgroup(g));
}

FinAbGroup abelian_invariants(const FiniteGroup& g, const Subgroup& s) {
  for (int a : s.elements)
    for (int b : s.elements)
      if (g.mul(a, b) != g.mul(b, a))
        throw ArgumentError("abelian_invariants of a nonabelian group");
  // Element-order counting per prime: the number of invariant factors with
  // p-exponent >= j is log_p |S[p^j]| - log_p |S[p^(j-1)]|.
  std::vector<mpz_class> orders;
  long n = s.order();
  for (long p = 2; n > 1; p = (p == 2) ? 3 : p + 2) {
    if (p * p > n) p = n;  // remaining part is prime
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    std::vector<long> ge;  // ge[j-1] = #invariants with p-exponent >= j
    long prev_log = 0, pj = 1;
    for (;;) {
      pj *= p;
      long count = 0;
      for (int x : s.elements)
        if (g.power(x, pj) == 0) ++count;
      long log = 0;
      for (long c = count; c > 1; c /= p) ++log;
      if (log == prev_log) break;
      ge.push_back(log - prev_log);
      prev_log = log;
    }
    long pw = 1;
    for (std::size_t j = 0; j < ge.size(); ++j) {
      pw *= p;
      long exactly = ge[j] - (j + 1 < ge.size() ? ge[j + 1] : 0);
      for (long i = 0; i < exactly; ++i) orders.push_back(pw);
    }
  }
  return FinAbGroup::from_orders(std::move(orders));
}

TransferContext transfer_context(const FiniteGroup& e, const Subgroup& b,
                                 const OcWord& w) {
  int r = w.max_var_index();
  OcWord v = OcWord::bracket(
      OcWord::bracket(w, OcWord::variable(r + 1)), OcWord::variable(r + 2));
  TransferContext ctx;
  ctx.b = b;
  ctx.vb = verbal_subgroup(e, v, b);
  ctx.coset_rep.assign(e.order(), -1);
  for (int x : b.elements) {
    if (ctx.coset_rep[x] >= 0) continue;
    int least = x;
    for (int h : ctx.vb.elements) least = std::min(least, e.mul(x, h));
    for (int h : ctx.vb.elements) ctx.coset_rep[e.mul(x, h)] = least;
  }
  return ctx;
}

int transfer(const FiniteGroup& e, const TransferContext& ctx,
             const Transversal& t, const OcWord& w, const std::vector<int>& ys,
             int x) {
  for (int y : ys)
    if (!ctx.b.contains(y)) throw ArgumentError("transfer: ys must lie in B");
  auto mul = [&e](int a, int b2) { return e.mul(a, b2); };
  auto inv = [&e](int a) { return e.inv(a); };
  int wy = evaluate(w, ys, mul, inv);
  int prod = 0;
  for (int i = 0; i < static_cast<int>(t.reps.size()); ++i) {
    int tix = t.reps[t.coset_of[e.mul(t.reps[i], x)]];
    int d = e.mul(e.mul(t.reps[i], x), e.inv(tix));
    prod = e.mul(prod, e.comm(wy, d));
  }
  if (!ctx.b.contains(prod)) throw InternalError("transfer value escaped B");
  return ctx.coset_rep[prod];
}

namespace {

// All ys tuples over B, as flat enumeration.
std::vector<std::vector<int>> ys_tuples(const Subgroup& b, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(r, 0);
  std::uint64_t total = 1;
  for (int i = 0; i < r; ++i) total *= b.order();
  if (total > 100'000) throw CapError("ys tuple cap exceeded");
  for (std::uint64_t t = 0; t < total; ++t) {
    std::vector<int> ys(r);
    for (int i = 0; i < r; ++i) ys[i] = b.elements[idx[i]];
    out.push_back(std::move(ys));
    for (int i = r - 1; i >= 0; --i) {
      if (++idx[i] < b.order()) break;
      idx[i] = 0;
    }
  }
  return out;
}

}  // namespace

Prop34Report verify_prop34(const FiniteGroup& e, const Subgroup& b,
                           const OcWord& w) {
  Prop34Report rep;
  int r = w.max_var_index();
  TransferContext ctx = transfer_context(e, b, w);
  Transversal t0 = right_transversal(e, b);
  int n = static_cast<int>(t0.reps.size());
  auto tuples = ys_tuples(b, r);
  rep.tuples_checked = static_cast<long>(tuples.size());

  // (a) homomorphism, every ys, every pair.
  rep.homomorphism = true;
  std::vector<int> tau(e.order());
  for (const auto& ys : tuples) {
    for (int x = 0; x < e.order(); ++x) tau[x] = transfer(e, ctx, t0, w, ys, x);
    for (int x = 0; x < e.order() && rep.homomorphism; ++x)
      for (int y = 0; y < e.order() && rep.homomorphism; ++y)
        rep.homomorphism =
            tau[e.mul(x, y)] == ctx.coset_rep[e.mul(tau[x], tau[y])];
  }

  // (b) transversal independence. A transversal is a choice of b_i t_i per
  // coset; enumerate all |B|^n of them when small, else sample.
  double total = 1;
  for (int i = 0; i < n; ++i) total *= b.order();
  std::vector<std::vector<int>> shifts;  // per transversal: b-index per coset
  if (total <= 10'000) {
    std::vector<int> idx(n, 0);
    for (long c = 0; c < static_cast<long>(total); ++c) {
      shifts.push_back(idx);
      for (int i = n - 1; i >= 0; --i) {
        if (++idx[i] < b.order()) break;
        idx[i] = 0;
      }
    }
  } else {
    rep.transversals_sampled = true;
    rep.seed = 0x5eed;
    std::mt19937 rng(rep.seed);
    std::uniform_int_distribution<int> pick(0, b.order() - 1);
    for (int c = 0; c < 100; ++c) {
      std::vector<int> idx(n);
      for (int i = 0; i < n; ++i) idx[i] = pick(rng);
      shifts.push_back(std::move(idx));
    }
  }
  rep.transversals_checked = static_cast<long>(shifts.size());
  rep.transversal_independent = true;
  for (const auto& shift : shifts) {
    Transversal t1;
    t1.reps.resize(n);
    t1.coset_of.assign(e.order(), -1);
    for (int i = 0; i < n; ++i)
      t1.reps[i] = e.mul(b.elements[shift[i]], t0.reps[i]);
    for (int x = 0; x < e.order(); ++x) t1.coset_of[x] = t0.coset_of[x];
    for (const auto& ys : tuples)
      for (int x = 0; x < e.order() && rep.transversal_independent; ++x)
        rep.transversal_independent =
            transfer(e, ctx, t1, w, ys, x) == transfer(e, ctx, t0, w, ys, x);
    if (!rep.transversal_independent) break;
  }

  // (c) marginal formula for x in V*(E), v = [w, x_{r+1}, x_{r+2}].
  OcWord v = OcWord::bracket(
      OcWord::bracket(w, OcWord::variable(r + 1)), OcWord::variable(r + 2));
  Subgroup marg = marginal_subgroup(e, v);
  auto mul = [&e](int a, int b2) { return e.mul(a, b2); };
  auto inv = [&e](int a) { return e.inv(a); };
  rep.marginal_formula = true;
  for (const auto& ys : tuples)
    for (int x : marg.elements) {
      int lhs = transfer(e, ctx, t0, w, ys, x);
      int wy = evaluate(w, ys, mul, inv);
      int rhs = ctx.coset_rep[e.comm(wy, e.power(x, n))];
      if (lhs != rhs) {
        rep.marginal_formula = false;
        break;
      }
    }
  return rep;
}

bool verify_lemma35(const FiniteGroup& e, const Subgroup& b, const OcWord& w) {
  int r = w.max_var_index();
  OcWord v = OcWord::bracket(
      OcWord::bracket(w, OcWord::variable(r + 1)), OcWord::variable(r + 2));
  Subgroup ve = verbal_subgroup(e, v);
  Subgroup marg = marginal_subgroup(e, v);
  Subgroup vb = verbal_subgroup(e, v, b);
  int n = subgroup_index(e, b);
  auto mul = [&e](int a, int b2) { return e.mul(a, b2); };
  auto inv = [&e](int a) { return e.inv(a); };
  auto tuples = ys_tuples(b, r);
  for (int x : marg.elements) {
    if (!ve.contains(x)) continue;  // quantified over V*(E) n V(E)
    for (const auto& ys : tuples) {
      int wy = evaluate(w, ys, mul, inv);
      if (!vb.contains(e.comm(wy, e.power(x, n)))) return false;
    }
  }
  return true;
}

Lemma31Report verify_lemma31(const FiniteGroup& h, const Subgroup& a, int c) {
  Lemma31Report rep;
  auto upper = upper_central_series(h);
  const Subgroup& zc = upper[std::min<std::size_t>(c, upper.size() - 1)];
  rep.premise_ok = is_normal(h, a);
  for (int x : a.elements) rep.premise_ok = rep.premise_ok && zc.contains(x);
  if (!rep.premise_ok) return rep;

  // gamma_{c+1}(H): series entry c when present, else the stable tail.
  auto lower = lower_central_series(h);
  const Subgroup& vh = lower[std::min<std::size_t>(c, lower.size() - 1)];
  Subgroup inter;
  for (int x : vh.elements)
    if (a.contains(x)) inter.elements.push_back(x);
  inter.generators = inter.elements;

  rep.section_abelian = true;
  for (int x : inter.elements)
    for (int y : inter.elements)
      rep.section_abelian = rep.section_abelian && h.mul(x, y) == h.mul(y, x);
  if (!rep.section_abelian) return rep;
  rep.vh_cap_a = abelian_invariants(h, inter);

  FiniteGroup q = quotient(h, a);
  rep.quotient_abelian = q.is_abelian();
  if (!rep.quotient_abelian) return rep;
  FinAbGroup qab = abelian_invariants(q);
  std::vector<long> orders;
  for (const auto& d : qab.invariant_factors()) orders.push_back(d.get_si());
  BaerResult m = baer_invariant(abelian_presentation(orders), c, c + 2, 1);
  if (!m.exact) throw InternalError("abelian oracle should be exact");
  rep.multiplier = m.value;
  rep.surjection = rep.multiplier.surjects_onto(rep.vh_cap_a);
  rep.embedding = rep.vh_cap_a.embeds_into(rep.multiplier);
  return rep;
}

}  // namespace baerlab
