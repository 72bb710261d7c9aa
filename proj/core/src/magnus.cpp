#include "baerlab/magnus.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace baerlab {

namespace {
constexpr std::uint64_t kMaxMonomials = 8'000'000;
}

NilContext::NilContext(int rank, int bound) : rank_(rank), bound_(bound) {
  if (rank < 1) throw ArgumentError("rank must be >= 1");
  if (bound < 2) throw ArgumentError("bound must be >= 2");
  pow_.assign(bound, 1);
  for (int l = 1; l < bound; ++l) pow_[l] = pow_[l - 1] * rank;
  std::uint64_t total = 0;
  offsets_.assign(bound + 1, 0);
  for (int l = 0; l < bound; ++l) {
    offsets_[l] = static_cast<int>(total);
    total += pow_[l];
    if (total > kMaxMonomials)
      throw CapError("rank/bound combination exceeds the monomial cap");
  }
  offsets_[bound] = static_cast<int>(total);
  len_.resize(total);
  val_.resize(total);
  for (int l = 0; l < bound; ++l)
    for (std::uint64_t v = 0; v < pow_[l]; ++v) {
      int id = offsets_[l] + static_cast<int>(v);
      len_[id] = static_cast<std::uint8_t>(l);
      val_[id] = v;
    }
}

std::shared_ptr<const NilContext> NilContext::get(int rank, int bound) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const NilContext>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{rank, bound}];
  if (!slot) slot.reset(new NilContext(rank, bound));
  return slot;
}

int NilContext::monomial_id(const std::vector<std::uint8_t>& digits) const {
  int l = static_cast<int>(digits.size());
  if (l >= bound_) return -1;
  std::uint64_t v = 0;
  for (auto d : digits) {
    if (d >= rank_) throw ArgumentError("monomial digit out of range");
    v = v * rank_ + d;
  }
  return offsets_[l] + static_cast<int>(v);
}

std::vector<std::uint8_t> NilContext::digits(int id) const {
  int l = len_[id];
  std::uint64_t v = val_[id];
  std::vector<std::uint8_t> out(l);
  for (int i = l - 1; i >= 0; --i) {
    out[i] = static_cast<std::uint8_t>(v % rank_);
    v /= rank_;
  }
  return out;
}

NilElement::NilElement(std::shared_ptr<const NilContext> ctx)
    : ctx_(std::move(ctx)), c_(ctx_->size(), 0) {
  c_[0] = 1;
}

NilElement NilElement::one(std::shared_ptr<const NilContext> ctx) {
  return NilElement(std::move(ctx));
}

NilElement NilElement::generator(std::shared_ptr<const NilContext> ctx, int i) {
  if (i < 0 || i >= ctx->rank()) throw ArgumentError("generator index out of range");
  NilElement e(std::move(ctx));
  e.c_[e.ctx_->block_begin(1) + i] = 1;
  return e;
}

NilElement NilElement::operator*(const NilElement& rhs) const {
  if (ctx_ != rhs.ctx_) throw ArgumentError("NilElement context mismatch");
  const NilContext& cx = *ctx_;
  NilElement out(ctx_);
  out.c_.assign(cx.size(), 0);
  int n = cx.size();
  for (int a = 0; a < n; ++a) {
    if (c_[a] == 0) continue;
    for (int b = 0; b < n; ++b) {
      if (rhs.c_[b] == 0) continue;
      int id = cx.concat(a, b);
      if (id < 0) {
        // Degrees within a block ascend together; everything after b in this
        // degree also overflows, so skip to the next degree block.
        b = cx.block_end(cx.degree(b)) - 1;
        continue;
      }
      out.c_[id] = checked_add(out.c_[id], checked_mul(c_[a], rhs.c_[b]));
    }
  }
  return out;
}

NilElement NilElement::inverse() const {
  // (1 + n)^-1 = sum (-n)^k, truncated.
  const NilContext& cx = *ctx_;
  NilElement neg_n(ctx_);
  neg_n.c_ = c_;
  neg_n.c_[0] = 0;
  for (auto& x : neg_n.c_) x = -x;
  // neg_n currently has constant term 0; treat it as a raw polynomial by
  // accumulating powers through ordinary element multiplication shifted by 1.
  NilElement out = one(ctx_);
  NilElement term = one(ctx_);
  for (int k = 1; k < cx.bound(); ++k) {
    // term *= neg_n, as raw polynomials (term has constant 0 after first run).
    NilElement next(ctx_);
    next.c_.assign(cx.size(), 0);
    int n = cx.size();
    for (int a = 0; a < n; ++a) {
      if (term.c_[a] == 0) continue;
      for (int b = cx.block_begin(1); b < n; ++b) {
        if (neg_n.c_[b] == 0) continue;
        int id = cx.concat(a, b);
        if (id < 0) {
          b = cx.block_end(cx.degree(b)) - 1;
          continue;
        }
        next.c_[id] = checked_add(next.c_[id], checked_mul(term.c_[a], neg_n.c_[b]));
      }
    }
    next.c_[0] = 0;
    term.c_ = next.c_;
    for (int i = 0; i < n; ++i) out.c_[i] = checked_add(out.c_[i], term.c_[i]);
    bool all_zero = true;
    for (int i = 0; i < n && all_zero; ++i) all_zero = term.c_[i] == 0;
    if (all_zero) break;
  }
  return out;
}

NilElement NilElement::pow(const mpz_class& n) const {
  if (n == 0) return one(ctx_);
  NilElement base = n < 0 ? inverse() : *this;
  mpz_class e = abs(n);
  NilElement out = one(ctx_);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    out = out * out;
    if (mpz_tstbit(e.get_mpz_t(), i)) out = out * base;
  }
  return out;
}

NilElement NilElement::conj(const NilElement& by) const {
  return by.inverse() * *this * by;
}

bool NilElement::is_identity() const {
  for (int i = 1; i < static_cast<int>(c_.size()); ++i)
    if (c_[i] != 0) return false;
  return true;
}

int NilElement::leading_weight() const {
  const NilContext& cx = *ctx_;
  for (int d = 1; d < cx.bound(); ++d)
    for (int id = cx.block_begin(d); id < cx.block_end(d); ++id)
      if (c_[id] != 0) return d;
  return 0;
}

std::string NilElement::str(const std::vector<std::string>& gen_names) const {
  std::ostringstream os;
  bool first = true;
  for (int id = 0; id < static_cast<int>(c_.size()); ++id) {
    if (c_[id] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (ctx_->degree(id) == 0) {
      os << coeff_str(c_[id]);
      continue;
    }
    if (c_[id] != 1) os << coeff_str(c_[id]) << "*";
    auto ds = ctx_->digits(id);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (i) os << ".";
      os << gen_names[ds[i]];
    }
  }
  if (first) os << "0";
  return os.str();
}

NilElement nil_commutator(const NilElement& a, const NilElement& b) {
  return a.inverse() * b.inverse() * a * b;
}

std::vector<mpq_class> log_series(const NilElement& e) {
  const NilContext& cx = e.ctx();
  int n = cx.size();
  // n_poly = e - 1, an integer polynomial with zero constant term; powers of
  // it stay integral, so only the final 1/j division is rational.
  std::vector<coeff_t> term(n, 0);
  for (int id = 1; id < n; ++id) term[id] = e.coeff(id);
  std::vector<mpq_class> out(n, 0);
  for (int j = 1; j < cx.bound(); ++j) {
    mpq_class f(j % 2 == 1 ? 1 : -1, j);
    bool any = false;
    for (int id = 1; id < n; ++id)
      if (term[id] != 0) {
        out[id] += f * term[id];
        any = true;
      }
    if (!any || j + 1 >= cx.bound()) break;
    std::vector<coeff_t> next(n, 0);
    for (int a = 1; a < n; ++a) {
      if (term[a] == 0) continue;
      for (int b = cx.block_begin(1); b < n; ++b) {
        if (e.coeff(b) == 0) continue;
        int id = cx.concat(a, b);
        if (id < 0) {
          b = cx.block_end(cx.degree(b)) - 1;
          continue;
        }
        next[id] += term[a] * e.coeff(b);
      }
    }
    term = std::move(next);
  }
  return out;
}

NilElement embed(const Word& w, std::shared_ptr<const NilContext> ctx,
                 const std::vector<std::string>& gens) {
  NilElement out = NilElement::one(ctx);
  for (const auto& l : w.letters()) {
    auto it = std::find(gens.begin(), gens.end(), l.gen);
    if (it == gens.end())
      throw ArgumentError("embed: unknown generator '" + l.gen + "'");
    int i = static_cast<int>(it - gens.begin());
    out = out * NilElement::generator(ctx, i).pow(l.exp);
  }
  return out;
}

}  // namespace baerlab
