#include "frobhh/hochschild.hpp"

#include <algorithm>
#include <numeric>

namespace frobhh {

std::size_t int_pow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::size_t TensorIndex::size() const { return int_pow(base, length); }

std::size_t TensorIndex::rank(const std::vector<std::uint32_t>& t) const {
  std::size_t r = 0;
  for (int i = 0; i < length; ++i) r = r * base + t[i];
  return r;
}

void TensorIndex::unrank(std::size_t idx, std::vector<std::uint32_t>& t) const {
  t.resize(length);
  for (int i = length - 1; i >= 0; --i) {
    t[i] = std::uint32_t(idx % base);
    idx /= base;
  }
}

namespace {

void check_budget(std::size_t estimate, std::size_t budget, const char* what, int deg) {
  if (estimate > budget)
    fail(ErrorKind::BudgetExceeded, std::string(what) + " in degree " + std::to_string(deg) + " needs about " +
                                        std::to_string(estimate) + " nonzeros (budget " + std::to_string(budget) +
                                        ")");
}

// rank of t_{lo..hi-1} (0-based, half open)
std::size_t sub_rank(const std::vector<std::uint32_t>& t, std::size_t R, int lo, int hi) {
  std::size_t r = 0;
  for (int i = lo; i < hi; ++i) r = r * R + t[i];
  return r;
}

}  // namespace

template <class F>
SparseMatrix<F> cochain_differential(const Workspace<F>& ws, const Bimodule<F>& m, int r, std::size_t budget) {
  const F& f = ws.field();
  const std::size_t R = ws.rdim(), dm = m.dim;
  const std::size_t nt = int_pow(R, r), cols = nt * dm, rows = int_pow(R, r + 1) * dm;
  check_budget(cols * std::size_t(r + 2), budget, "cochain differential", r);
  SparseMatrix<F> out(rows, cols);
  Accumulator<F> acc(f, rows);
  TensorIndex ti{R, r};
  std::vector<std::uint32_t> t;
  const std::size_t Rr = int_pow(R, r);
  std::size_t total = 0;
  for (std::size_t tr = 0; tr < nt; ++tr) {
    ti.unrank(tr, t);
    for (std::size_t x = 0; x < dm; ++x) {
      // a_1 f(a_2 ..)
      for (std::size_t s = 0; s < R; ++s) {
        const auto& l = m.l(s + 1, x);
        std::size_t base = (s * Rr + tr) * dm;
        for (std::size_t k = 0; k < l.nnz(); ++k) acc.add(std::uint32_t(base + l.idx[k]), l.val[k]);
      }
      // (-1)^i f(.. a_i a_{i+1} ..)
      for (int i = 1; i <= r; ++i) {
        bool neg = i % 2;
        std::size_t hi = sub_rank(t, R, 0, i - 1), lo = sub_rank(t, R, i, r);
        std::size_t wlo = int_pow(R, r - i);
        for (auto& src : ws.merge_sources(t[i - 1])) {
          std::size_t rk = ((hi * R + src.x) * R + src.y) * wlo + lo;
          acc.add(std::uint32_t(rk * dm + x), neg ? f.neg(src.c) : src.c);
        }
      }
      // (-1)^{r+1} f(..) a_{r+1}
      bool neg = (r + 1) % 2;
      for (std::size_t s = 0; s < R; ++s) {
        const auto& rr = m.r(s + 1, x);
        std::size_t base = (tr * R + s) * dm;
        for (std::size_t k = 0; k < rr.nnz(); ++k)
          acc.add(std::uint32_t(base + rr.idx[k]), neg ? f.neg(rr.val[k]) : rr.val[k]);
      }
      auto col = acc.take();
      total += col.nnz();
      if (total > budget) check_budget(total, budget, "cochain differential", r);
      out.append_column(std::move(col));
    }
  }
  return out;
}

template <class F>
SparseMatrix<F> chain_differential(const Workspace<F>& ws, const Bimodule<F>& m, int p, std::size_t budget) {
  const F& f = ws.field();
  const std::size_t R = ws.rdim(), dm = m.dim;
  const std::size_t nt = int_pow(R, p), cols = nt * dm, rows = int_pow(R, p - 1) * dm;
  check_budget(cols * std::size_t(p + 1), budget, "chain differential", p);
  SparseMatrix<F> out(rows, cols);
  Accumulator<F> acc(f, rows);
  TensorIndex ti{R, p};
  std::vector<std::uint32_t> t;
  std::size_t total = 0;
  for (std::size_t tr = 0; tr < nt; ++tr) {
    ti.unrank(tr, t);
    std::size_t tail = sub_rank(t, R, 1, p), head = sub_rank(t, R, 0, p - 1);
    for (std::size_t x = 0; x < dm; ++x) {
      // m a_1 (x) a_{2..p}
      const auto& rr = m.r(t[0] + 1, x);
      for (std::size_t k = 0; k < rr.nnz(); ++k) acc.add(std::uint32_t(tail * dm + rr.idx[k]), rr.val[k]);
      // (-1)^i m (x) .. a_i a_{i+1} ..
      for (int i = 1; i <= p - 1; ++i) {
        bool neg = i % 2;
        std::size_t hi = sub_rank(t, R, 0, i - 1), lo = sub_rank(t, R, i + 1, p);
        std::size_t wlo = int_pow(R, p - i - 1);
        const auto& mg = ws.merge(t[i - 1], t[i]);
        for (std::size_t k = 0; k < mg.nnz(); ++k) {
          std::size_t rk = (hi * R + mg.idx[k]) * wlo + lo;
          acc.add(std::uint32_t(rk * dm + x), neg ? f.neg(mg.val[k]) : mg.val[k]);
        }
      }
      // (-1)^p a_p m (x) a_{1..p-1}
      bool neg = p % 2;
      const auto& l = m.l(t[p - 1] + 1, x);
      for (std::size_t k = 0; k < l.nnz(); ++k)
        acc.add(std::uint32_t(head * dm + l.idx[k]), neg ? f.neg(l.val[k]) : l.val[k]);
      auto col = acc.take();
      total += col.nnz();
      if (total > budget) check_budget(total, budget, "chain differential", p);
      out.append_column(std::move(col));
    }
  }
  return out;
}

template <class F>
SparseMatrix<F> bar_differential(const Workspace<F>& ws, int p, std::size_t budget) {
  const F& f = ws.field();
  const std::size_t d = ws.dim(), R = ws.rdim();
  if (p == 0) {
    SparseMatrix<F> out(d, d * d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) out.append_column(ws.mul(a, b));
    return out;
  }
  const std::size_t nt = int_pow(R, p), ntm = int_pow(R, p - 1);
  const std::size_t cols = d * nt * d, rows = d * ntm * d;
  check_budget(cols * std::size_t(p + 1), budget, "bar differential", p);
  SparseMatrix<F> out(rows, cols);
  Accumulator<F> acc(f, rows);
  TensorIndex ti{R, p};
  std::vector<std::uint32_t> t;
  auto row = [&](std::size_t a0, std::size_t tr, std::size_t b) { return std::uint32_t((a0 * ntm + tr) * d + b); };
  for (std::size_t a0 = 0; a0 < d; ++a0)
    for (std::size_t tr = 0; tr < nt; ++tr) {
      ti.unrank(tr, t);
      std::size_t tail = sub_rank(t, R, 1, p), head = sub_rank(t, R, 0, p - 1);
      for (std::size_t b = 0; b < d; ++b) {
        const auto& l = ws.mul(a0, t[0] + 1);
        for (std::size_t k = 0; k < l.nnz(); ++k) acc.add(row(l.idx[k], tail, b), l.val[k]);
        for (int i = 1; i <= p - 1; ++i) {
          bool neg = i % 2;
          std::size_t hi = sub_rank(t, R, 0, i - 1), lo = sub_rank(t, R, i + 1, p);
          std::size_t wlo = int_pow(R, p - i - 1);
          const auto& mg = ws.merge(t[i - 1], t[i]);
          for (std::size_t k = 0; k < mg.nnz(); ++k)
            acc.add(row(a0, (hi * R + mg.idx[k]) * wlo + lo, b), neg ? f.neg(mg.val[k]) : mg.val[k]);
        }
        bool neg = p % 2;
        const auto& r = ws.mul(t[p - 1] + 1, b);
        for (std::size_t k = 0; k < r.nnz(); ++k) acc.add(row(a0, head, r.idx[k]), neg ? f.neg(r.val[k]) : r.val[k]);
        out.append_column(acc.take());
      }
    }
  return out;
}

// ---- Complex ----

template <class F>
std::size_t Complex<F>::dim(int r) {
  auto it = dims_.find(r);
  if (it != dims_.end()) return it->second;
  return dims_[r] = src_.dim(r);
}

template <class F>
const SparseMatrix<F>& Complex<F>::differential(int r) {
  auto it = diffs_.find(r);
  if (it != diffs_.end()) return it->second;
  SparseMatrix<F> m;
  if (dim(r) == 0 || dim(r + 1) == 0) {
    m = SparseMatrix<F>(dim(r + 1), dim(r));
    for (std::size_t j = 0; j < dim(r); ++j) m.append_column(SparseVec<F>{});
  } else {
    m = src_.diff(r);
  }
  if (m.rows() != dim(r + 1) || m.cols() != dim(r))
    fail(ErrorKind::ValidationFailure, "differential in degree " + std::to_string(r) + " has the wrong shape");
  return diffs_[r] = std::move(m);
}

template <class F>
const typename Complex<F>::Layout& Complex<F>::layout(int r) {
  auto it = layouts_.find(r);
  if (it != layouts_.end()) return it->second;
  Layout L;
  std::size_t n = dim(r);
  std::vector<BlockKey> k(n, 0);
  if (src_.key)
    for (std::size_t i = 0; i < n; ++i) k[i] = src_.key(r, i);
  L.keys = k;
  std::sort(L.keys.begin(), L.keys.end());
  L.keys.erase(std::unique(L.keys.begin(), L.keys.end()), L.keys.end());
  L.members.resize(L.keys.size());
  L.block_of.resize(n);
  L.local.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto b = std::uint32_t(std::lower_bound(L.keys.begin(), L.keys.end(), k[i]) - L.keys.begin());
    L.block_of[i] = b;
    L.local[i] = std::uint32_t(L.members[b].size());
    L.members[b].push_back(std::uint32_t(i));
  }
  return layouts_[r] = std::move(L);
}

// d^r restricted to block b of C^r, as a matrix into the block of C^{r+1} with the same key.
template <class F>
SparseMatrix<F> Complex<F>::block_matrix(int r, std::size_t b, bool* empty_target) {
  const auto& Lr = layout(r);
  const auto& Ln = layout(r + 1);
  const auto& d = differential(r);
  BlockKey key = Lr.keys[b];
  auto it = std::lower_bound(Ln.keys.begin(), Ln.keys.end(), key);
  bool has = it != Ln.keys.end() && *it == key;
  std::size_t nb = has ? std::size_t(it - Ln.keys.begin()) : 0;
  std::size_t rows = has ? Ln.members[nb].size() : 0;
  *empty_target = !has;
  SparseMatrix<F> m(rows, Lr.members[b].size());
  std::vector<std::pair<std::uint32_t, E>> tmp;
  for (auto g : Lr.members[b]) {
    tmp.clear();
    for (std::size_t k = d.col_begin(g); k < d.col_end(g); ++k) {
      auto row = d.row_at(k);
      if (!has || Ln.block_of[row] != nb)
        fail(ErrorKind::ValidationFailure, "differential in degree " + std::to_string(r) + " mixes blocks");
      tmp.emplace_back(Ln.local[row], d.val_at(k));
    }
    std::sort(tmp.begin(), tmp.end(), [](auto& a, auto& b2) { return a.first < b2.first; });
    SparseVec<F> c;
    for (auto& [i, v] : tmp) c.push(i, v);
    m.append_column(std::move(c));
  }
  return m;
}

template <class F>
const std::vector<std::size_t>& Complex<F>::block_ranks(int r) {
  auto it = ranks_.find(r);
  if (it != ranks_.end()) return it->second;
  const auto& L = layout(r);
  std::vector<std::size_t> out(L.keys.size(), 0);
  if (dim(r + 1) > 0)
    for (std::size_t b = 0; b < L.keys.size(); ++b) {
      bool empty = false;
      auto m = block_matrix(r, b, &empty);
      out[b] = empty ? 0 : rank(f_, m);
    }
  return ranks_[r] = std::move(out);
}

template <class F>
std::size_t Complex<F>::rank_out(int r) {
  const auto& v = block_ranks(r);
  return std::accumulate(v.begin(), v.end(), std::size_t(0));
}

template <class F>
typename Complex<F>::Degree& Complex<F>::degree(int r) {
  auto it = degrees_.find(r);
  if (it != degrees_.end()) return it->second;
  Degree D;
  const auto& L = layout(r);
  const auto& out = block_ranks(r);
  const auto& Lp = layout(r - 1);
  const auto& in = block_ranks(r - 1);
  D.blocks.resize(L.keys.size());
  for (std::size_t b = 0; b < L.keys.size(); ++b) {
    std::size_t rin = 0;
    auto jt = std::lower_bound(Lp.keys.begin(), Lp.keys.end(), L.keys[b]);
    if (jt != Lp.keys.end() && *jt == L.keys[b]) rin = in[std::size_t(jt - Lp.keys.begin())];
    D.blocks[b].h = L.members[b].size() - out[b] - rin;
    D.total += D.blocks[b].h;
  }
  return degrees_[r] = std::move(D);
}

template <class F>
std::size_t Complex<F>::cohomology_dim(int r) {
  return degree(r).total;
}

template <class F>
std::map<std::uint32_t, std::size_t> Complex<F>::cohomology_by_char(int r) {
  auto& D = degree(r);
  const auto& L = layout(r);
  std::map<std::uint32_t, std::size_t> out;
  for (std::size_t b = 0; b < L.keys.size(); ++b)
    if (D.blocks[b].h) out[key_char(L.keys[b])] += D.blocks[b].h;
  return out;
}

template <class F>
void Complex<F>::build_reps(int r) {
  auto& D = degree(r);
  if (D.reps_built) return;
  const auto& L = layout(r);
  const auto& Lp = layout(r - 1);
  const auto& din = differential(r - 1);
  for (std::size_t b = 0; b < L.keys.size(); ++b) {
    auto& B = D.blocks[b];
    if (B.h == 0) continue;
    std::size_t n = L.members[b].size();
    B.eh = std::make_unique<Echelon<F>>(f_, n, true);
    // boundaries of the block
    auto jt = std::lower_bound(Lp.keys.begin(), Lp.keys.end(), L.keys[b]);
    if (jt != Lp.keys.end() && *jt == L.keys[b]) {
      std::vector<std::pair<std::uint32_t, E>> tmp;
      for (auto g : Lp.members[std::size_t(jt - Lp.keys.begin())]) {
        tmp.clear();
        for (std::size_t k = din.col_begin(g); k < din.col_end(g); ++k)
          tmp.emplace_back(L.local[din.row_at(k)], din.val_at(k));
        std::sort(tmp.begin(), tmp.end(), [](auto& x, auto& y) { return x.first < y.first; });
        SparseVec<F> c;
        for (auto& [i, v] : tmp) c.push(i, v);
        B.eh->insert(c);
      }
    }
    // cocycles via relations among the columns of d^r
    bool empty = false;
    auto m = dim(r + 1) > 0 ? block_matrix(r, b, &empty) : SparseMatrix<F>();
    Echelon<F> ez(f_, m.rows(), true);
    for (std::size_t j = 0; j < n && B.reps.size() < B.h; ++j) {
      SparseVec<F> col = dim(r + 1) > 0 ? m.column(j) : SparseVec<F>{};
      if (ez.insert(col, std::int64_t(j))) continue;
      const auto& z = ez.last_relation();
      if (B.eh->insert(z, std::int64_t(B.reps.size()))) B.reps.push_back(z);
    }
    if (B.reps.size() != B.h) fail(ErrorKind::ValidationFailure, "cohomology representatives incomplete");
  }
  D.reps_built = true;
}

template <class F>
std::vector<SparseVec<F>> Complex<F>::representatives(int r) {
  build_reps(r);
  auto& D = degree(r);
  const auto& L = layout(r);
  std::vector<SparseVec<F>> out;
  for (std::size_t b = 0; b < D.blocks.size(); ++b)
    for (auto& z : D.blocks[b].reps) {
      std::vector<std::pair<std::uint32_t, E>> tmp;
      for (std::size_t k = 0; k < z.nnz(); ++k) tmp.emplace_back(L.members[b][z.idx[k]], z.val[k]);
      std::sort(tmp.begin(), tmp.end(), [](auto& x, auto& y) { return x.first < y.first; });
      SparseVec<F> g;
      for (auto& [i, v] : tmp) g.push(i, v);
      out.push_back(std::move(g));
    }
  return out;
}

template <class F>
std::vector<std::uint32_t> Complex<F>::class_chars(int r) {
  auto& D = degree(r);
  const auto& L = layout(r);
  std::vector<std::uint32_t> out;
  for (std::size_t b = 0; b < D.blocks.size(); ++b)
    for (std::size_t k = 0; k < D.blocks[b].h; ++k) out.push_back(key_char(L.keys[b]));
  return out;
}

template <class F>
std::vector<SparseVec<F>> Complex<F>::split(int r, const SparseVec<F>& x) {
  const auto& L = layout(r);
  std::vector<SparseVec<F>> parts(L.keys.size());
  for (std::size_t k = 0; k < x.nnz(); ++k) {
    if (x.idx[k] >= dim(r)) fail(ErrorKind::DegreeMismatch, "vector longer than the degree-" + std::to_string(r) + " space");
    parts[L.block_of[x.idx[k]]].push(L.local[x.idx[k]], x.val[k]);
  }
  return parts;  // local indices ascend with global ones inside a block
}

template <class F>
bool Complex<F>::is_cocycle(int r, const SparseVec<F>& x) {
  return differential(r).apply(f_, x).empty();
}

template <class F>
DenseVec<F> Complex<F>::classify(int r, const SparseVec<F>& x) {
  build_reps(r);
  auto& D = degree(r);
  auto parts = split(r, x);
  DenseVec<F> out;
  out.reserve(D.total);
  for (std::size_t b = 0; b < D.blocks.size(); ++b) {
    auto& B = D.blocks[b];
    if (B.h == 0) continue;
    SparseVec<F> coords;
    auto res = B.eh->reduce(parts[b], &coords);
    if (!res.empty()) fail(ErrorKind::ValidationFailure, "element of degree " + std::to_string(r) + " is not a cocycle");
    auto dense = to_dense(f_, coords, B.h);
    out.insert(out.end(), dense.begin(), dense.end());
  }
  return out;
}

template <class F>
bool Complex<F>::is_coboundary(int r, const SparseVec<F>& x) {
  if (!is_cocycle(r, x)) return false;
  for (auto& c : classify(r, x))
    if (!f_.is_zero(c)) return false;
  return true;
}

template <class F>
SparseVec<F> Complex<F>::lift(int r, const DenseVec<F>& coords) {
  auto reps = representatives(r);
  if (coords.size() != reps.size()) fail(ErrorKind::DegreeMismatch, "class coordinates have the wrong length");
  Accumulator<F> acc(f_, dim(r));
  for (std::size_t k = 0; k < reps.size(); ++k) {
    if (f_.is_zero(coords[k])) continue;
    for (std::size_t t = 0; t < reps[k].nnz(); ++t) acc.add_mul(reps[k].idx[t], coords[k], reps[k].val[t]);
  }
  return acc.take();
}

template <class F>
Complex<F> Complex<F>::component(std::uint32_t ch) {
  auto self = this;
  auto index = std::make_shared<std::map<int, std::vector<std::uint32_t>>>();
  auto members = [self, index, ch](int r) -> const std::vector<std::uint32_t>& {
    auto it = index->find(r);
    if (it != index->end()) return it->second;
    std::vector<std::uint32_t> v;
    for (std::size_t i = 0; i < self->dim(r); ++i)
      if (key_char(self->key(r, i)) == ch) v.push_back(std::uint32_t(i));
    return (*index)[r] = std::move(v);
  };
  Source s;
  s.kind = src_.kind + "/component";
  s.dim = [members](int r) { return members(r).size(); };
  s.diff = [self, members](int r) {
    const auto& from = members(r);
    const auto& to = members(r + 1);
    std::vector<std::int64_t> pos(self->dim(r + 1), -1);
    for (std::size_t k = 0; k < to.size(); ++k) pos[to[k]] = std::int64_t(k);
    const auto& d = self->differential(r);
    SparseMatrix<F> m(to.size(), from.size());
    for (auto g : from) {
      SparseVec<F> c;
      for (std::size_t k = d.col_begin(g); k < d.col_end(g); ++k) {
        if (pos[d.row_at(k)] < 0) fail(ErrorKind::ValidationFailure, "component is not a subcomplex");
        c.push(std::uint32_t(pos[d.row_at(k)]), d.val_at(k));
      }
      m.append_column(std::move(c));
    }
    return m;
  };
  if (src_.key) s.key = [self, members](int r, std::size_t i) { return self->key(r, members(r)[i]); };
  return Complex<F>(f_, std::move(s));
}

// ---- factories ----

namespace {

template <class F>
BlockKey cochain_key(const Workspace<F>& ws, const Bimodule<F>& m, int r, std::size_t idx) {
  if (!m.graded()) return 0;
  std::size_t R = ws.rdim();
  std::size_t x = idx % m.dim, t = idx / m.dim;
  long w = m.weight[x];
  std::uint32_t ch = m.character[x];
  auto& chars = ws.chars();
  for (int i = 0; i < r; ++i) {
    std::size_t a = t % R + 1;
    t /= R;
    w -= ws.weight(a);
    ch = chars.mul(ch, chars.inv(ws.character(a)));
  }
  return make_key(w, ch);
}

template <class F>
BlockKey chain_key(const Workspace<F>& ws, const Bimodule<F>& m, int p, std::size_t idx) {
  if (!m.graded()) return 0;
  std::size_t R = ws.rdim();
  std::size_t x = idx % m.dim, t = idx / m.dim;
  long w = m.weight[x] + ws.socle_degree();
  std::uint32_t ch = m.character[x];
  auto& chars = ws.chars();
  for (int i = 0; i < p; ++i) {
    std::size_t a = t % R + 1;
    t /= R;
    w += ws.weight(a);
    ch = chars.mul(ch, ws.character(a));
  }
  return make_key(w, ch);
}

}  // namespace

template <class F>
Complex<F> cochain_complex(std::shared_ptr<const Workspace<F>> ws, std::shared_ptr<const Bimodule<F>> m,
                           std::size_t budget) {
  typename Complex<F>::Source s;
  s.kind = "cochain";
  s.dim = [ws, m](int r) { return r < 0 ? std::size_t(0) : int_pow(ws->rdim(), r) * m->dim; };
  s.diff = [ws, m, budget](int r) { return cochain_differential(*ws, *m, r, budget); };
  if (ws->graded() && m->graded()) s.key = [ws, m](int r, std::size_t i) { return cochain_key(*ws, *m, r, i); };
  return Complex<F>(ws->field(), std::move(s));
}

template <class F>
Complex<F> chain_complex(std::shared_ptr<const Workspace<F>> ws, std::shared_ptr<const Bimodule<F>> m,
                         std::size_t budget) {
  typename Complex<F>::Source s;
  s.kind = "chain";
  s.dim = [ws, m](int r) { return r > 0 ? std::size_t(0) : int_pow(ws->rdim(), -r) * m->dim; };
  // d^r = partial_{-r}: C_{-r} -> C_{-r-1}
  s.diff = [ws, m, budget](int r) { return chain_differential(*ws, *m, -r, budget); };
  if (ws->graded() && m->graded()) s.key = [ws, m](int r, std::size_t i) { return chain_key(*ws, *m, -r, i); };
  return Complex<F>(ws->field(), std::move(s));
}

template <class F>
CompleteComplex<F>::CompleteComplex(std::shared_ptr<const Workspace<F>> ws, std::size_t budget)
    : ws_(std::move(ws)), budget_(budget) {
  reg_ = std::make_shared<const Bimodule<F>>(ws_->regular());
  tw_ = std::make_shared<const Bimodule<F>>(ws_->twisted(ws_->nu_inv()));
  typename Complex<F>::Source s;
  s.kind = "complete";
  auto self = this;
  s.dim = [self](int r) { return self->dim(r); };
  s.diff = [self](int r) -> SparseMatrix<F> {
    const auto& w = *self->ws_;
    if (r >= 0) return cochain_differential(w, *self->reg_, r, self->budget_);
    if (r == -1) return norm_map(w, *self->reg_);
    return chain_differential(w, *self->tw_, -r - 1, self->budget_);
  };
  if (ws_->graded() || ws_->diagonalizable()) s.key = [self](int r, std::size_t i) { return self->key(r, i); };
  cx_ = std::make_unique<Complex<F>>(ws_->field(), std::move(s));
}

template <class F>
std::size_t CompleteComplex<F>::dim(int r) const {
  return int_pow(ws_->rdim(), tensor_length(r)) * ws_->dim();
}

template <class F>
BlockKey CompleteComplex<F>::key(int r, std::size_t idx) const {
  return r >= 0 ? cochain_key(*ws_, *reg_, r, idx) : chain_key(*ws_, *tw_, -r - 1, idx);
}

template <class F>
SparseVec<F> CompleteComplex<F>::project(int r, const SparseVec<F>& x, std::uint32_t ch) const {
  SparseVec<F> out;
  for (std::size_t k = 0; k < x.nnz(); ++k)
    if (key_char(key(r, x.idx[k])) == ch) out.push(x.idx[k], x.val[k]);
  return out;
}

// ---- Omega ----

template <class F>
Bimodule<F> ambient_bimodule(const Workspace<F>& ws, int q) {
  const std::size_t d = ws.dim(), nt = int_pow(ws.rdim(), q);
  Bimodule<F> m;
  m.dim = d * nt * d;
  m.adim = d;
  m.left.resize(d * m.dim);
  m.right.resize(d * m.dim);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t x = 0; x < m.dim; ++x) {
      std::size_t b = x % d, t = (x / d) % nt, a0 = x / d / nt;
      SparseVec<F> l, r;
      const auto& pl = ws.mul(a, a0);
      for (std::size_t k = 0; k < pl.nnz(); ++k) l.push(std::uint32_t((pl.idx[k] * nt + t) * d + b), pl.val[k]);
      const auto& pr = ws.mul(b, a);
      for (std::size_t k = 0; k < pr.nnz(); ++k) r.push(std::uint32_t((a0 * nt + t) * d + pr.idx[k]), pr.val[k]);
      // pl indices ascend in a0 so l stays sorted; same for r
      m.left[a * m.dim + x] = std::move(l);
      m.right[a * m.dim + x] = std::move(r);
    }
  if (ws.graded()) {
    m.weight.resize(m.dim);
    m.character.resize(m.dim);
    TensorIndex ti{ws.rdim(), q};
    std::vector<std::uint32_t> t;
    auto& chars = ws.chars();
    for (std::size_t x = 0; x < m.dim; ++x) {
      std::size_t b = x % d, tr = (x / d) % nt, a0 = x / d / nt;
      ti.unrank(tr, t);
      int w = ws.weight(a0) + ws.weight(b);
      std::uint32_t ch = chars.mul(ws.character(a0), ws.character(b));
      for (auto s : t) {
        w += ws.weight(s + 1);
        ch = chars.mul(ch, ws.character(s + 1));
      }
      m.weight[x] = w;
      m.character[x] = ch;
    }
  }
  return m;
}

template <class F>
SparseVec<F> OmegaModule<F>::to_ambient(const F& f, const SparseVec<F>& coords) const {
  Accumulator<F> acc(f, ambient);
  for (std::size_t k = 0; k < coords.nnz(); ++k) {
    const auto& b = space.basis()[coords.idx[k]];
    for (std::size_t t = 0; t < b.nnz(); ++t) acc.add_mul(b.idx[t], coords.val[k], b.val[t]);
  }
  return acc.take();
}

template <class F>
std::optional<SparseVec<F>> OmegaModule<F>::from_ambient(const F& f, const SparseVec<F>& x) const {
  if (!space.contains(f, x)) return std::nullopt;
  return to_sparse(f, space.coordinates(f, x));
}

template <class F>
OmegaModule<F> omega_module(const Workspace<F>& ws, int p, std::size_t budget) {
  const F& f = ws.field();
  OmegaModule<F> om;
  om.p = p;
  if (p == 0) {
    om.ambient = ws.dim();
    std::vector<SparseVec<F>> id;
    for (std::size_t i = 0; i < ws.dim(); ++i) {
      SparseVec<F> e;
      e.push(std::uint32_t(i), f.one());
      id.push_back(e);
    }
    om.space = Subspace<F>(f, ws.dim(), id);
    om.bimodule = std::make_shared<const Bimodule<F>>(ws.regular());
    return om;
  }
  auto amb = ambient_bimodule(ws, p - 1);
  om.ambient = amb.dim;
  om.space = image(f, bar_differential(ws, p, budget));
  std::size_t n = om.space.dim();
  check_budget(n * n * ws.dim() * 2, budget, "Omega action tables", p);
  Bimodule<F> m;
  m.dim = n;
  m.adim = ws.dim();
  m.left.resize(ws.dim() * n);
  m.right.resize(ws.dim() * n);
  for (std::size_t a = 0; a < ws.dim(); ++a)
    for (std::size_t k = 0; k < n; ++k) {
      const auto& b = om.space.basis()[k];
      Accumulator<F> la(f, amb.dim), ra(f, amb.dim);
      for (std::size_t t = 0; t < b.nnz(); ++t) {
        const auto& l = amb.l(a, b.idx[t]);
        for (std::size_t s = 0; s < l.nnz(); ++s) la.add_mul(l.idx[s], b.val[t], l.val[s]);
        const auto& r = amb.r(a, b.idx[t]);
        for (std::size_t s = 0; s < r.nnz(); ++s) ra.add_mul(r.idx[s], b.val[t], r.val[s]);
      }
      auto lv = la.take(), rv = ra.take();
      auto lc = om.from_ambient(f, lv), rc = om.from_ambient(f, rv);
      if (!lc || !rc) fail(ErrorKind::ValidationFailure, "Omega is not closed under the bimodule actions");
      m.left[a * n + k] = std::move(*lc);
      m.right[a * n + k] = std::move(*rc);
    }
  om.bimodule = std::make_shared<const Bimodule<F>>(std::move(m));
  return om;
}

// ---- Theta ----

template <class F>
SparseMatrix<F> theta_matrix(const Workspace<F>& ws, int r) {
  const F& f = ws.field();
  const std::size_t d = ws.dim(), nt = int_pow(ws.rdim(), r);
  SparseMatrix<F> out(nt * d, nt * d);
  // column (t, j) -> sum_k v_j[k] e_(t, k)
  for (std::size_t t = 0; t < nt; ++t)
    for (std::size_t j = 0; j < d; ++j) {
      SparseVec<F> c;
      const auto& v = ws.dual(j);
      for (std::size_t k = 0; k < v.nnz(); ++k) c.push(std::uint32_t(t * d + v.idx[k]), v.val[k]);
      out.append_column(std::move(c));
    }
  (void)f;
  return out;
}

template <class F>
SparseMatrix<F> theta_inverse_matrix(const Workspace<F>& ws, int r) {
  const F& f = ws.field();
  const std::size_t d = ws.dim(), nt = int_pow(ws.rdim(), r);
  SparseMatrix<F> out(nt * d, nt * d);
  // psi(t, m) = sum_k f(t, k) <w_k, w_m>
  for (std::size_t t = 0; t < nt; ++t)
    for (std::size_t k = 0; k < d; ++k) {
      SparseVec<F> c;
      for (std::size_t m = 0; m < d; ++m)
        if (!f.is_zero(ws.gram()(k, m))) c.push(std::uint32_t(t * d + m), ws.gram()(k, m));
      out.append_column(std::move(c));
    }
  return out;
}

#define FROBHH_INSTANTIATE_HOCHSCHILD(F)                                                                     \
  template SparseMatrix<F> cochain_differential<F>(const Workspace<F>&, const Bimodule<F>&, int, std::size_t); \
  template SparseMatrix<F> chain_differential<F>(const Workspace<F>&, const Bimodule<F>&, int, std::size_t);   \
  template SparseMatrix<F> bar_differential<F>(const Workspace<F>&, int, std::size_t);                         \
  template class Complex<F>;                                                                                   \
  template Complex<F> cochain_complex<F>(std::shared_ptr<const Workspace<F>>, std::shared_ptr<const Bimodule<F>>, \
                                         std::size_t);                                                         \
  template Complex<F> chain_complex<F>(std::shared_ptr<const Workspace<F>>, std::shared_ptr<const Bimodule<F>>,   \
                                       std::size_t);                                                           \
  template class CompleteComplex<F>;                                                                           \
  template struct OmegaModule<F>;                                                                              \
  template OmegaModule<F> omega_module<F>(const Workspace<F>&, int, std::size_t);                              \
  template Bimodule<F> ambient_bimodule<F>(const Workspace<F>&, int);                                          \
  template SparseMatrix<F> theta_matrix<F>(const Workspace<F>&, int);                                          \
  template SparseMatrix<F> theta_inverse_matrix<F>(const Workspace<F>&, int);

FROBHH_INSTANTIATE_HOCHSCHILD(PrimeField)
FROBHH_INSTANTIATE_HOCHSCHILD(ExtField)
FROBHH_INSTANTIATE_HOCHSCHILD(RationalField)

}  // namespace frobhh
