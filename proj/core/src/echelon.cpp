#include "baerlab/echelon.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace baerlab {

namespace {

// Labels are dropped (not truncated) past this size: a huge witness word is
// useless and the arithmetic on it would dominate the closure.
constexpr std::size_t kLabelLetterCap = 10000;
constexpr int kClosurePassCap = 20000;

using Label = std::optional<Word>;

Label label_check(Label l) {
  if (l && l->letters().size() > kLabelLetterCap) return std::nullopt;
  return l;
}

Label label_mul(const Label& a, const Label& b) {
  if (!a || !b) return std::nullopt;
  if (a->letters().size() + b->letters().size() > kLabelLetterCap)
    return std::nullopt;
  return label_check(*a * *b);
}

Label label_pow(const Label& a, const coeff_t& q) {
  if (!a) return std::nullopt;
  if (q == 0) return Word();
  double est = static_cast<double>(a->letters().size()) * std::abs(q.get_d());
  if (est > static_cast<double>(kLabelLetterCap)) return std::nullopt;
  return label_check(a->pow(q));
}

Label label_inv(const Label& a) {
  if (!a) return std::nullopt;
  return a->inverse();
}

Label label_comm(const Label& a, const Label& b) {
  if (!a || !b) return std::nullopt;
  if (2 * (a->letters().size() + b->letters().size()) > kLabelLetterCap)
    return std::nullopt;
  return label_check(commutator(*a, *b));
}

struct ExtGcd {
  coeff_t g, s, t;  // s*b + t*a = g > 0
};

ExtGcd extgcd(const coeff_t& b, const coeff_t& a) {
  ExtGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), b.get_mpz_t(),
             a.get_mpz_t());
  return r;
}

coeff_t floor_div(const coeff_t& a, const coeff_t& b) {
  coeff_t q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

EchelonSubgroup::EchelonSubgroup(std::vector<std::string> gen_names, int bound)
    : gen_names_(std::move(gen_names)),
      ctx_(NilContext::get(static_cast<int>(gen_names_.size()), bound)),
      basis_(HallBasis::get(static_cast<int>(gen_names_.size()), bound - 1)) {}

EchelonSubgroup EchelonSubgroup::trivial(std::vector<std::string> gen_names,
                                         int bound) {
  return EchelonSubgroup(std::move(gen_names), bound);
}

EchelonSubgroup EchelonSubgroup::full(std::vector<std::string> gen_names,
                                      int bound) {
  std::vector<Word> gens;
  for (const auto& g : gen_names) gens.push_back(Word::generator(g));
  return normal_closure(std::move(gen_names), bound, gens);
}

EchelonSubgroup EchelonSubgroup::span(std::vector<std::string> gen_names,
                                      int bound,
                                      const std::vector<Word>& gens) {
  EchelonSubgroup s(std::move(gen_names), bound);
  for (const auto& w : gens) s.insert(s.embed_word(w), w);
  s.close(false);
  return s;
}

EchelonSubgroup EchelonSubgroup::normal_closure(
    std::vector<std::string> gen_names, int bound,
    const std::vector<Word>& gens) {
  EchelonSubgroup s(std::move(gen_names), bound);
  for (const auto& w : gens) s.insert(s.embed_word(w), w);
  s.close(true);
  s.normal_closed_ = true;
  return s;
}

EchelonSubgroup EchelonSubgroup::normal_closure(const Presentation& p,
                                                int bound) {
  p.validate();
  return normal_closure(p.generators, bound, p.relators);
}

NilElement EchelonSubgroup::embed_word(const Word& w) const {
  return embed(w, ctx_, gen_names_);
}

int EchelonSubgroup::find_row(int weight, int position) const {
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (rows_[i].weight == weight && rows_[i].position == position)
      return static_cast<int>(i);
  return -1;
}

bool EchelonSubgroup::insert(NilElement e0, std::optional<Word> label0) {
  bool changed = false;
  std::uint64_t entry_serial = next_serial_;
  std::vector<std::pair<NilElement, Label>> work;
  work.emplace_back(std::move(e0), label_check(std::move(label0)));
  while (!work.empty()) {
    NilElement e = std::move(work.back().first);
    Label label = std::move(work.back().second);
    work.pop_back();
    for (;;) {
      if (e.is_identity()) break;
      LieCoords lc = lie_coordinates(e, *basis_);
      int p = lc.first_nonzero();
      if (p < 0)
        throw InternalError("non-identity element with zero leading coords");
      coeff_t a = lc.coords[p];
      int idx = find_row(lc.weight, p);
      if (idx < 0) {
        if (a < 0) {
          e = e.inverse();
          label = label_inv(label);
          a = -a;
        }
        Row row{std::move(e), std::move(label), lc.weight, p, a, next_serial_++};
        auto it = std::upper_bound(
            rows_.begin(), rows_.end(), row, [](const Row& x, const Row& y) {
              return std::pair(x.weight, x.position) <
                     std::pair(y.weight, y.position);
            });
        rows_.insert(it, std::move(row));
        changed = true;
        break;
      }
      Row& r = rows_[idx];
      coeff_t b = r.pivot;
      if (a % b == 0) {
        coeff_t q = a / b;
        e = r.elem.pow(to_mpz(-q)) * e;
        label = label_mul(label_pow(r.label, -q), label);
        continue;  // leading slot strictly advanced
      }
      // Pivot does not divide: replace the row by the gcd combination and
      // reprocess both residues.
      ExtGcd eg = extgcd(b, a);
      NilElement n = r.elem.pow(to_mpz(eg.s)) * e.pow(to_mpz(eg.t));
      Label nlabel = label_mul(label_pow(r.label, eg.s), label_pow(label, eg.t));
      coeff_t qb = b / eg.g, qa = a / eg.g;
      NilElement r_res = n.pow(to_mpz(-qb)) * r.elem;
      Label r_res_label = label_mul(label_pow(nlabel, -qb), r.label);
      NilElement e_res = n.pow(to_mpz(-qa)) * e;
      Label e_res_label = label_mul(label_pow(nlabel, -qa), label);
      r = Row{std::move(n), std::move(nlabel), lc.weight, p, eg.g,
              next_serial_++};
      changed = true;
      work.emplace_back(std::move(r_res), std::move(r_res_label));
      work.emplace_back(std::move(e_res), std::move(e_res_label));
      break;
    }
  }
  if (changed)
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it)
      if (it->serial >= entry_serial) tail_reduce(*it, false);
  return changed;
}

void EchelonSubgroup::tail_reduce(Row& r, bool force) {
  const NilContext& cx = *ctx_;
  if (!force) {
    std::size_t maxbits = 0;
    for (int id = 0; id < cx.size(); ++id)
      maxbits =
          std::max(maxbits, mpz_sizeinbase(r.elem.coeff(id).get_mpz_t(), 2));
    if (maxbits <= 64) return;
  }
  for (int w2 = r.weight; w2 < bound(); ++w2) {
    if (basis_->layer_size(w2) == 0) continue;
    bool layer_has_rows = false;
    for (int p2 = 0; p2 < basis_->layer_size(w2); ++p2)
      if (!(w2 == r.weight && p2 <= r.position) && find_row(w2, p2) >= 0)
        layer_has_rows = true;
    if (!layer_has_rows) continue;
    // Raw log coefficients; at layer w2, left-multiplying by s^{-q} for a row
    // s of leading weight w2 subtracts q times s's degree-w2 block exactly
    // (the BCH cross terms land strictly deeper).
    std::vector<mpq_class> lg = log_series(r.elem);
    const auto& layer = basis_->layer(w2);
    for (int p2 = 0; p2 < static_cast<int>(layer.size()); ++p2) {
      if (w2 == r.weight && p2 <= r.position) continue;
      int idx = find_row(w2, p2);
      if (idx < 0) continue;
      const Row& s = rows_[idx];
      if (s.serial == r.serial) continue;
      mpq_class c = lg[cx.monomial_id(layer[p2].lyndon)] / mpq_class(s.pivot);
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), c.get_num_mpz_t(), c.get_den_mpz_t());
      if (q == 0) continue;
      r.elem = s.elem.pow(-q) * r.elem;
      r.label = label_mul(label_pow(s.label, -q), r.label);
      for (int id = cx.block_begin(w2); id < cx.block_end(w2); ++id)
        lg[id] -= mpq_class(q) * s.elem.coeff(id);
    }
  }
}

void EchelonSubgroup::close(bool normal) {
  std::vector<std::pair<NilElement, Label>> conjugators;
  if (normal) {
    for (std::size_t i = 0; i < gen_names_.size(); ++i) {
      Word g = Word::generator(gen_names_[i]);
      conjugators.emplace_back(NilElement::generator(ctx_, static_cast<int>(i)),
                               g);
      conjugators.emplace_back(
          NilElement::generator(ctx_, static_cast<int>(i)).inverse(),
          g.inverse());
    }
  }

  std::set<std::pair<std::uint64_t, std::uint64_t>> comm_done;
  std::set<std::pair<std::uint64_t, std::size_t>> conj_done;
  for (int pass = 0;; ++pass) {
    if (pass > kClosurePassCap)
      throw InternalError("echelon closure did not stabilize");
    bool changed = false;
    std::vector<Row> snap = rows_;
    for (std::size_t i = 0; i < snap.size(); ++i)
      for (std::size_t j = i + 1; j < snap.size(); ++j) {
        if (snap[i].weight + snap[j].weight >= bound()) continue;
        auto key = std::minmax(snap[i].serial, snap[j].serial);
        if (!comm_done.insert({key.first, key.second}).second) continue;
        changed |= insert(nil_commutator(snap[i].elem, snap[j].elem),
                          label_comm(snap[i].label, snap[j].label));
      }
    for (std::size_t i = 0; i < snap.size(); ++i)
      for (std::size_t c = 0; c < conjugators.size(); ++c) {
        int cw = conjugators[c].first.leading_weight();
        if (cw == 0 || snap[i].weight + cw >= bound()) continue;
        if (!conj_done.insert({snap[i].serial, c}).second) continue;
        changed |= insert(
            nil_commutator(snap[i].elem, conjugators[c].first),
            label_comm(snap[i].label, conjugators[c].second));
      }
    if (!changed) break;
  }
  normalize_layers();
}

void EchelonSubgroup::normalize_layers() {
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it)
    tail_reduce(*it, true);
}

EchelonSubgroup EchelonSubgroup::with_element(const NilElement& e,
                                              std::optional<Word> label) const {
  EchelonSubgroup out = *this;
  out.insert(e, std::move(label));
  out.close(false);
  out.normal_closed_ = false;
  return out;
}

EchelonSubgroup EchelonSubgroup::commutator_with(
    const EchelonSubgroup& k) const {
  if (ctx_ != k.ctx_) throw ArgumentError("ambient mismatch");
  EchelonSubgroup out(gen_names_, bound());
  for (const auto& h : rows_)
    for (const auto& kr : k.rows_) {
      if (h.weight + kr.weight >= bound()) continue;
      out.insert(nil_commutator(h.elem, kr.elem),
                 label_comm(h.label, kr.label));
    }
  // Normal closure inside <H, K>: conjugate by the rows of both sides.
  std::vector<std::pair<NilElement, Label>> conjugators;
  for (const auto* side : {this, &k})
    for (const auto& r : side->rows_) {
      conjugators.emplace_back(r.elem, r.label);
      conjugators.emplace_back(r.elem.inverse(), label_inv(r.label));
    }

  std::set<std::pair<std::uint64_t, std::uint64_t>> comm_done;
  std::set<std::pair<std::uint64_t, std::size_t>> conj_done;
  for (int pass = 0;; ++pass) {
    if (pass > kClosurePassCap)
      throw InternalError("commutator closure did not stabilize");
    bool changed = false;
    std::vector<Row> snap = out.rows_;
    for (std::size_t i = 0; i < snap.size(); ++i)
      for (std::size_t j = i + 1; j < snap.size(); ++j) {
        if (snap[i].weight + snap[j].weight >= bound()) continue;
        auto key = std::minmax(snap[i].serial, snap[j].serial);
        if (!comm_done.insert({key.first, key.second}).second) continue;
        changed |= out.insert(nil_commutator(snap[i].elem, snap[j].elem),
                              label_comm(snap[i].label, snap[j].label));
      }
    for (std::size_t i = 0; i < snap.size(); ++i)
      for (std::size_t c = 0; c < conjugators.size(); ++c) {
        int cw = conjugators[c].first.leading_weight();
        if (cw == 0 || snap[i].weight + cw >= bound()) continue;
        if (!conj_done.insert({snap[i].serial, c}).second) continue;
        changed |= out.insert(
            nil_commutator(snap[i].elem, conjugators[c].first),
            label_comm(snap[i].label, conjugators[c].second));
      }
    if (!changed) break;
  }
  out.normalize_layers();
  // [H, F] is normal in F when H is; detect the ambient by full lattice.
  out.normal_closed_ = normal_closed_ && k.lattice_index() == mpz_class(1);
  return out;
}

EchelonSubgroup EchelonSubgroup::intersect_gamma(int i) const {
  if (i < 1) throw ArgumentError("gamma index must be >= 1");
  EchelonSubgroup out(gen_names_, bound());
  out.normal_closed_ = normal_closed_;
  out.next_serial_ = next_serial_;
  for (const auto& r : rows_)
    if (r.weight >= i) out.rows_.push_back(r);
  return out;
}

std::optional<EchelonSubgroup::Trace> EchelonSubgroup::membership(
    const NilElement& e) const {
  NilElement cur = e;
  Trace trace;
  while (!cur.is_identity()) {
    LieCoords lc = lie_coordinates(cur, *basis_);
    int p = lc.first_nonzero();
    int idx = find_row(lc.weight, p);
    if (idx < 0) return std::nullopt;
    coeff_t a = lc.coords[p];
    if (a % rows_[idx].pivot != 0) return std::nullopt;
    coeff_t q = a / rows_[idx].pivot;
    cur = rows_[idx].elem.pow(to_mpz(-q)) * cur;
    trace.push_back(TraceStep{idx, q});
  }
  return trace;
}

NilElement EchelonSubgroup::evaluate_trace(const Trace& t) const {
  NilElement out = NilElement::one(ctx_);
  for (const auto& step : t)
    out = out * rows_[step.row_index].elem.pow(to_mpz(step.exponent));
  return out;
}

FinAbGroup EchelonSubgroup::abelian_quotient(const EchelonSubgroup& t) const {
  if (ctx_ != t.ctx_) throw ArgumentError("ambient mismatch");
  int n = static_cast<int>(rows_.size());
  std::vector<std::vector<mpz_class>> rel;
  auto add_relation = [&](const Trace& tr) {
    std::vector<mpz_class> row(n, 0);
    for (const auto& step : tr)
      row[step.row_index] += to_mpz(step.exponent);
    rel.push_back(std::move(row));
  };
  for (const auto& tr_row : t.rows()) {
    auto tr = membership(tr_row.elem);
    if (!tr) throw ArgumentError("abelian_quotient: T is not contained in U");
    add_relation(*tr);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (rows_[i].weight + rows_[j].weight >= bound()) continue;
      NilElement c = nil_commutator(rows_[i].elem, rows_[j].elem);
      if (!t.contains(c))
        throw ArgumentError("abelian_quotient: nonabelian quotient");
      auto tr = membership(c);
      if (!tr) throw InternalError("[U,U] escapes U");
      add_relation(*tr);
    }
  IntMat m(static_cast<int>(rel.size()), n);
  for (std::size_t i = 0; i < rel.size(); ++i)
    for (int j = 0; j < n; ++j) m.at(static_cast<int>(i), j) = rel[i][j];
  return FinAbGroup::cokernel(m, n);
}

std::optional<mpz_class> EchelonSubgroup::lattice_index() const {
  long total = 0;
  for (int w = 1; w < bound(); ++w) total += HallBasis::witt_number(rank(), w);
  if (static_cast<long>(rows_.size()) != total) return std::nullopt;
  mpz_class idx = 1;
  for (const auto& r : rows_) idx *= to_mpz(r.pivot);
  return idx;
}

std::string EchelonSubgroup::dump() const {
  std::ostringstream os;
  for (const auto& r : rows_) {
    os << "w=" << r.weight << " p=" << r.position << " pivot=" << coeff_str(r.pivot)
       << " poly=";
    bool first = true;
    for (int id = 0; id < ctx_->size(); ++id) {
      if (r.elem.coeff(id) == 0) continue;
      if (!first) os << ",";
      first = false;
      auto ds = ctx_->digits(id);
      if (ds.empty()) {
        os << "1:" << coeff_str(r.elem.coeff(id));
        continue;
      }
      for (std::size_t i = 0; i < ds.size(); ++i) {
        if (i) os << ".";
        os << gen_names_[ds[i]];
      }
      os << ":" << coeff_str(r.elem.coeff(id));
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace baerlab
