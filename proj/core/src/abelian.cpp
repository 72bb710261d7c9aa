#include "baerlab/abelian.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace baerlab {

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat IntMat::operator*(const IntMat& rhs) const {
  if (cols != rhs.rows) throw ArgumentError("matrix shape mismatch");
  IntMat out(rows, rhs.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      if (at(i, k) == 0) continue;
      for (int j = 0; j < rhs.cols; ++j)
        out.at(i, j) += at(i, k) * rhs.at(k, j);
    }
  return out;
}

mpz_class IntMat::det() const {
  if (rows != cols) throw ArgumentError("det needs a square matrix");
  // Bareiss fraction-free elimination.
  IntMat m = *this;
  int n = rows;
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(swap, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        mpz_class num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
        m.at(i, j) = q;
      }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

std::vector<mpz_class> SnfResult::diagonal() const {
  std::vector<mpz_class> out;
  int k = std::min(d.rows, d.cols);
  for (int i = 0; i < k; ++i) out.push_back(d.at(i, i));
  return out;
}

namespace {

struct SnfWork {
  IntMat d, u, v;

  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < d.cols; ++j) std::swap(d.at(a, j), d.at(b, j));
    for (int j = 0; j < u.cols; ++j) std::swap(u.at(a, j), u.at(b, j));
  }
  void swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < d.rows; ++i) std::swap(d.at(i, a), d.at(i, b));
    for (int i = 0; i < v.rows; ++i) std::swap(v.at(i, a), v.at(i, b));
  }
  void add_row(int dst, int src, const mpz_class& q) {  // row dst += q * row src
    if (q == 0) return;
    for (int j = 0; j < d.cols; ++j) d.at(dst, j) += q * d.at(src, j);
    for (int j = 0; j < u.cols; ++j) u.at(dst, j) += q * u.at(src, j);
  }
  void add_col(int dst, int src, const mpz_class& q) {
    if (q == 0) return;
    for (int i = 0; i < d.rows; ++i) d.at(i, dst) += q * d.at(i, src);
    for (int i = 0; i < v.rows; ++i) v.at(i, dst) += q * v.at(i, src);
  }
  void negate_row(int r) {
    for (int j = 0; j < d.cols; ++j) d.at(r, j) = -d.at(r, j);
    for (int j = 0; j < u.cols; ++j) u.at(r, j) = -u.at(r, j);
  }
};

}  // namespace

SnfResult smith_normal_form(const IntMat& m) {
  SnfWork w{m, IntMat::identity(m.rows), IntMat::identity(m.cols)};
  int k = std::min(m.rows, m.cols);
  for (int t = 0; t < k; ++t) {
    for (;;) {
      // Smallest nonzero |entry| in the trailing submatrix as pivot.
      int pi = -1, pj = -1;
      mpz_class best;
      for (int i = t; i < w.d.rows; ++i)
        for (int j = t; j < w.d.cols; ++j) {
          if (w.d.at(i, j) == 0) continue;
          mpz_class a = abs(w.d.at(i, j));
          if (pi < 0 || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) {
        t = k;  // all remaining entries zero
        break;
      }
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);
      if (w.d.at(t, t) < 0) w.negate_row(t);

      bool clean = true;
      for (int i = t + 1; i < w.d.rows; ++i) {
        if (w.d.at(i, t) == 0) continue;
        mpz_class q = w.d.at(i, t) / w.d.at(t, t);  // truncated division
        w.add_row(i, t, -q);
        if (w.d.at(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < w.d.cols; ++j) {
        if (w.d.at(t, j) == 0) continue;
        mpz_class q = w.d.at(t, j) / w.d.at(t, t);
        w.add_col(j, t, -q);
        if (w.d.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the whole trailing submatrix; if not, pull the
      // offending row up and re-eliminate.
      bool divides = true;
      for (int i = t + 1; i < w.d.rows && divides; ++i)
        for (int j = t + 1; j < w.d.cols && divides; ++j)
          if (w.d.at(i, j) % w.d.at(t, t) != 0) {
            w.add_row(t, i, 1);
            divides = false;
          }
      if (divides) break;
    }
    if (t >= k) break;
  }
  return SnfResult{w.d, w.u, w.v};
}

FinAbGroup FinAbGroup::free_abelian(int rank) {
  FinAbGroup g;
  g.free_rank_ = rank;
  return g;
}

FinAbGroup FinAbGroup::cyclic(const mpz_class& n) {
  return from_orders({n});
}

FinAbGroup FinAbGroup::from_orders(std::vector<mpz_class> orders) {
  FinAbGroup g;
  // Primary decomposition, then reassemble the invariant-factor chain.
  std::map<mpz_class, std::vector<unsigned long>> primary;  // prime -> exps desc
  for (auto& o : orders) {
    o = abs(o);
    if (o == 0) {
      ++g.free_rank_;
      continue;
    }
    mpz_class rest = o;
    for (mpz_class p = 2; rest > 1; p = (p == 2) ? mpz_class(3) : mpz_class(p + 2)) {
      if (p * p > rest) {
        primary[rest].push_back(1);
        break;
      }
      unsigned long e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      if (e > 0) primary[p].push_back(e);
    }
  }
  std::size_t depth = 0;
  for (auto& [p, es] : primary) {
    std::sort(es.begin(), es.end(), std::greater<>());
    depth = std::max(depth, es.size());
  }
  std::vector<mpz_class> factors(depth, 1);
  for (auto& [p, es] : primary)
    for (std::size_t i = 0; i < es.size(); ++i) {
      mpz_class pe;
      mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), es[i]);
      factors[i] *= pe;
    }
  std::reverse(factors.begin(), factors.end());
  for (auto& f : factors)
    if (f > 1) g.invs_.push_back(f);
  return g;
}

FinAbGroup FinAbGroup::cokernel(const IntMat& relations, int ngens) {
  if (relations.cols != ngens) throw ArgumentError("relation matrix width mismatch");
  if (relations.rows == 0) return free_abelian(ngens);
  SnfResult snf = smith_normal_form(relations);
  std::vector<mpz_class> orders = snf.diagonal();
  // Generators beyond the diagonal are free; zero diagonal entries already
  // read as free factors in from_orders.
  for (int i = static_cast<int>(orders.size()); i < ngens; ++i)
    orders.push_back(0);
  return from_orders(std::move(orders));
}

mpz_class FinAbGroup::order() const {
  if (!is_finite()) throw ArgumentError("order of an infinite group");
  mpz_class n = 1;
  for (const auto& d : invs_) n *= d;
  return n;
}

mpz_class FinAbGroup::exponent() const {
  if (!is_finite()) throw ArgumentError("exponent of an infinite group");
  return invs_.empty() ? mpz_class(1) : invs_.back();
}

namespace {

std::vector<mpz_class> orders_of(const FinAbGroup& g) {
  std::vector<mpz_class> out(static_cast<std::size_t>(g.free_rank()), 0);
  for (const auto& d : g.invariant_factors()) out.push_back(d);
  return out;
}

}  // namespace

FinAbGroup FinAbGroup::direct_sum(const FinAbGroup& other) const {
  auto orders = orders_of(*this);
  auto o2 = orders_of(other);
  orders.insert(orders.end(), o2.begin(), o2.end());
  return from_orders(std::move(orders));
}

FinAbGroup FinAbGroup::tensor(const FinAbGroup& other) const {
  // Z/a (x) Z/b = Z/gcd(a,b), Z (x) Z/b = Z/b, Z (x) Z = Z; bilinear in sums.
  auto oa = orders_of(*this);
  auto ob = orders_of(other);
  std::vector<mpz_class> out;
  for (const auto& a : oa)
    for (const auto& b : ob) out.push_back(gcd(a, b));
  return from_orders(std::move(out));
}

FinAbGroup FinAbGroup::exterior_square() const {
  auto o = orders_of(*this);
  std::vector<mpz_class> out;
  for (std::size_t i = 0; i < o.size(); ++i)
    for (std::size_t j = i + 1; j < o.size(); ++j) out.push_back(gcd(o[i], o[j]));
  return from_orders(std::move(out));
}

FinAbGroup FinAbGroup::power_subgroup(long n) const {
  if (n <= 0) throw ArgumentError("power_subgroup needs n > 0");
  auto o = orders_of(*this);
  for (auto& d : o)
    if (d != 0) d /= gcd(d, mpz_class(n));
  return from_orders(std::move(o));
}

FinAbGroup FinAbGroup::torsion_subgroup(long n) const {
  if (n <= 0) throw ArgumentError("torsion_subgroup needs n > 0");
  std::vector<mpz_class> out;
  for (const auto& d : invs_) out.push_back(gcd(d, mpz_class(n)));
  return from_orders(std::move(out));
}

FinAbGroup FinAbGroup::primary_part(long p) const {
  if (!is_finite()) throw ArgumentError("primary_part of an infinite group");
  if (p < 2) throw ArgumentError("p must be a prime >= 2");
  std::vector<mpz_class> out;
  for (const auto& d : invs_) {
    mpz_class q = 1;
    mpz_class rest = d;
    while (rest % p == 0) {
      q *= p;
      rest /= p;
    }
    out.push_back(q);
  }
  return from_orders(std::move(out));
}

FinAbGroup FinAbGroup::coprime_part(long n) const {
  if (!is_finite()) throw ArgumentError("coprime_part of an infinite group");
  if (n <= 0) throw ArgumentError("coprime_part needs n > 0");
  std::vector<mpz_class> out;
  for (const auto& d : invs_) {
    // Largest divisor of d coprime to n.
    mpz_class q = d;
    for (mpz_class g = gcd(q, mpz_class(n)); g > 1; g = gcd(q, mpz_class(n)))
      q /= g;
    out.push_back(q);
  }
  return from_orders(std::move(out));
}

namespace {

// Factors listed largest first, free factors (0) counting as largest.
std::vector<mpz_class> factors_desc(const FinAbGroup& g) {
  std::vector<mpz_class> f(static_cast<std::size_t>(g.free_rank()), 0);
  for (auto it = g.invariant_factors().rbegin();
       it != g.invariant_factors().rend(); ++it)
    f.push_back(*it);
  return f;
}

bool dominates(const FinAbGroup& big, const FinAbGroup& small) {
  auto a = factors_desc(big);
  auto b = factors_desc(small);
  if (b.size() > a.size()) return false;
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (b[k] == 0) {
      if (a[k] != 0) return false;
    } else if (mpz_class(a[k] % b[k]) != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool FinAbGroup::surjects_onto(const FinAbGroup& other) const {
  return dominates(*this, other);
}

bool FinAbGroup::embeds_into(const FinAbGroup& other) const {
  if (!is_finite() || !other.is_finite())
    throw ArgumentError("embeds_into requires finite groups");
  return dominates(other, *this);
}

std::string FinAbGroup::str() const {
  if (is_trivial()) return "1";
  std::ostringstream os;
  bool first = true;
  if (free_rank_ > 0) {
    os << "Z";
    if (free_rank_ > 1) os << "^" << free_rank_;
    first = false;
  }
  for (const auto& d : invs_) {
    if (!first) os << " x ";
    os << "Z/" << d.get_str();
    first = false;
  }
  return os.str();
}

FinAbGroup parse_ab_group(const std::string& text) {
  std::vector<mpz_class> orders;
  std::istringstream in(text);
  std::string tok;
  bool any = false;
  while (in >> tok) {
    if (tok == "x" || tok == "*") continue;
    any = true;
    if (tok == "1") continue;
    if (tok == "Z") {
      orders.push_back(0);
      continue;
    }
    if (tok.rfind("Z^", 0) == 0) {
      long r;
      try {
        r = std::stol(tok.substr(2));
      } catch (const std::exception&) {
        throw ParseError("bad free rank in '" + tok + "'", 0);
      }
      if (r < 0) throw ParseError("negative free rank", 0);
      for (long i = 0; i < r; ++i) orders.push_back(0);
      continue;
    }
    if (tok.rfind("Z/", 0) == 0) {
      mpz_class d;
      if (tok.size() == 2 || mpz_set_str(d.get_mpz_t(), tok.c_str() + 2, 10) != 0)
        throw ParseError("bad cyclic order in '" + tok + "'", 0);
      if (d < 1) throw ParseError("bad cyclic order", 0);
      orders.push_back(d);
      continue;
    }
    throw ParseError("bad abelian group token '" + tok + "'", 0);
  }
  if (!any) throw ParseError("empty abelian group literal", 0);
  return FinAbGroup::from_orders(std::move(orders));
}

FinAbGroup abelianization(const Presentation& p) {
  IntMat rel(static_cast<int>(p.relators.size()), p.rank());
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    for (const auto& l : p.relators[i].letters()) {
      auto it = std::find(p.generators.begin(), p.generators.end(), l.gen);
      int j = static_cast<int>(it - p.generators.begin());
      rel.at(static_cast<int>(i), j) += l.exp;
    }
  return FinAbGroup::cokernel(rel, p.rank());
}

}  // namespace baerlab
