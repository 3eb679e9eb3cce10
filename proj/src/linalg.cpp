#include "frobhh/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace frobhh {

template <class F>
SparseVec<F> to_sparse(const F& f, const DenseVec<F>& v) {
  SparseVec<F> s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!f.is_zero(v[i])) s.push(std::uint32_t(i), v[i]);
  return s;
}

template <class F>
DenseVec<F> to_dense(const F& f, const SparseVec<F>& v, std::size_t n) {
  DenseVec<F> d(n, f.zero());
  for (std::size_t k = 0; k < v.nnz(); ++k) d[v.idx[k]] = v.val[k];
  return d;
}

template <class F>
SparseVec<F> Accumulator<F>::take() {
  std::sort(touched_.begin(), touched_.end());
  SparseVec<F> out;
  out.idx.reserve(touched_.size());
  out.val.reserve(touched_.size());
  for (auto i : touched_) {
    if (!f_->is_zero(val_[i])) out.push(i, val_[i]);
    mark_[i] = 0;
    val_[i] = f_->zero();
  }
  touched_.clear();
  return out;
}

// ---- SparseMatrix ----

template <class F>
SparseMatrix<F> SparseMatrix<F>::from_triplets(const F& f, std::size_t rows, std::size_t cols,
                                               std::vector<std::tuple<std::uint32_t, std::uint32_t, E>> t) {
  std::stable_sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    return std::get<1>(a) != std::get<1>(b) ? std::get<1>(a) < std::get<1>(b) : std::get<0>(a) < std::get<0>(b);
  });
  SparseMatrix m(rows, cols);
  std::size_t k = 0;
  for (std::size_t j = 0; j < cols; ++j) {
    SparseVec<F> c;
    while (k < t.size() && std::get<1>(t[k]) == j) {
      std::uint32_t r = std::get<0>(t[k]);
      E v = std::get<2>(t[k]);
      ++k;
      while (k < t.size() && std::get<1>(t[k]) == j && std::get<0>(t[k]) == r) v = f.add(v, std::get<2>(t[k++]));
      if (!f.is_zero(v)) c.push(r, v);
    }
    m.append_column(std::move(c));
  }
  return m;
}

template <class F>
SparseMatrix<F> SparseMatrix<F>::from_dense(const F& f, std::size_t rows, std::size_t cols,
                                            const std::vector<E>& a) {
  SparseMatrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    SparseVec<F> c;
    for (std::size_t i = 0; i < rows; ++i)
      if (!f.is_zero(a[i * cols + j])) c.push(std::uint32_t(i), a[i * cols + j]);
    m.append_column(std::move(c));
  }
  return m;
}

template <class F>
SparseMatrix<F> SparseMatrix<F>::identity(const F& f, std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    SparseVec<F> c;
    c.push(std::uint32_t(j), f.one());
    m.append_column(std::move(c));
  }
  return m;
}

template <class F>
void SparseMatrix<F>::append_column(const SparseVec<F>& c) {
  idx_.insert(idx_.end(), c.idx.begin(), c.idx.end());
  val_.insert(val_.end(), c.val.begin(), c.val.end());
  ptr_.push_back(idx_.size());
}

template <class F>
void SparseMatrix<F>::append_column(SparseVec<F>&& c) {
  idx_.insert(idx_.end(), c.idx.begin(), c.idx.end());
  for (auto& v : c.val) val_.push_back(std::move(v));
  ptr_.push_back(idx_.size());
}

template <class F>
SparseVec<F> SparseMatrix<F>::column(std::size_t j) const {
  SparseVec<F> c;
  for (std::size_t k = ptr_[j]; k < ptr_[j + 1]; ++k) c.push(idx_[k], val_[k]);
  return c;
}

template <class F>
DenseVec<F> SparseMatrix<F>::apply(const F& f, const DenseVec<F>& x) const {
  DenseVec<F> y(rows_, f.zero());
  for (std::size_t j = 0; j < cols_; ++j) {
    if (f.is_zero(x[j])) continue;
    for (std::size_t k = ptr_[j]; k < ptr_[j + 1]; ++k) y[idx_[k]] = f.add(y[idx_[k]], f.mul(val_[k], x[j]));
  }
  return y;
}

template <class F>
SparseVec<F> SparseMatrix<F>::apply(const F& f, const SparseVec<F>& x) const {
  Accumulator<F> acc(f, rows_);
  for (std::size_t t = 0; t < x.nnz(); ++t) {
    std::size_t j = x.idx[t];
    for (std::size_t k = ptr_[j]; k < ptr_[j + 1]; ++k) acc.add_mul(idx_[k], val_[k], x.val[t]);
  }
  return acc.take();
}

template <class F>
SparseMatrix<F> SparseMatrix<F>::transpose() const {
  std::vector<std::size_t> count(rows_ + 1, 0);
  for (auto r : idx_) ++count[r + 1];
  std::partial_sum(count.begin(), count.end(), count.begin());
  std::vector<std::uint32_t> idx(idx_.size());
  std::vector<E> val(val_.size());
  std::vector<std::size_t> pos(count.begin(), count.end() - 1);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t k = ptr_[j]; k < ptr_[j + 1]; ++k) {
      std::size_t p = pos[idx_[k]]++;
      idx[p] = std::uint32_t(j);
      val[p] = val_[k];
    }
  SparseMatrix t(cols_, rows_);
  t.ptr_ = std::move(count);
  t.idx_ = std::move(idx);
  t.val_ = std::move(val);
  return t;
}

template <class F>
SparseMatrix<F> SparseMatrix<F>::multiply(const F& f, const SparseMatrix& rhs) const {
  SparseMatrix out(rows_, rhs.cols_);
  Accumulator<F> acc(f, rows_);
  for (std::size_t j = 0; j < rhs.cols_; ++j) {
    for (std::size_t k = rhs.ptr_[j]; k < rhs.ptr_[j + 1]; ++k) {
      std::size_t mid = rhs.idx_[k];
      for (std::size_t l = ptr_[mid]; l < ptr_[mid + 1]; ++l) acc.add_mul(idx_[l], val_[l], rhs.val_[k]);
    }
    out.append_column(acc.take());
  }
  return out;
}

template <class F>
std::vector<typename F::Elem> SparseMatrix<F>::to_dense(const F& f) const {
  std::vector<E> a(rows_ * cols_, f.zero());
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t k = ptr_[j]; k < ptr_[j + 1]; ++k) a[idx_[k] * cols_ + j] = val_[k];
  return a;
}

template <class F>
bool composes_to_zero(const F& f, const SparseMatrix<F>& after, const SparseMatrix<F>& before) {
  if (after.cols() != before.rows()) fail(ErrorKind::DegreeMismatch, "composition shape mismatch");
  return after.multiply(f, before).is_zero();
}

// ---- Echelon ----

template <class F>
Echelon<F>::Echelon(const F& f, std::size_t ambient, bool track)
    : f_(&f), ambient_(ambient), track_(track), owner_(ambient, -1) {}

template <class F>
SparseVec<F> Echelon<F>::run(const SparseVec<F>& v, std::int64_t tag, SparseVec<F>* combo_out) {
  const F& f = *f_;
  // scratch buffers shared by all echelons of this field type on the thread
  thread_local std::vector<E> acc;
  thread_local std::vector<char> mark;
  thread_local std::vector<std::uint32_t> touched;
  if (acc.size() < ambient_) {
    acc.assign(ambient_, f.zero());
    mark.assign(ambient_, 0);
  }
  touched.clear();
  std::priority_queue<std::int32_t, std::vector<std::int32_t>, std::greater<>> heap;
  auto& queued = queued_;
  if (queued.size() < rows_.size()) queued.resize(rows_.size(), 0);
  auto touch = [&](std::uint32_t i) {
    if (!mark[i]) {
      mark[i] = 1;
      touched.push_back(i);
      acc[i] = f.zero();
    }
    std::int32_t o = owner_[i];
    if (o >= 0) {
      if (!queued[o]) {
        queued[o] = 1;
        heap.push(o);
      }
    }
  };
  for (std::size_t k = 0; k < v.nnz(); ++k) {
    touch(v.idx[k]);
    acc[v.idx[k]] = v.val[k];
  }
  // combination accumulated sparsely keyed by tag
  std::vector<std::pair<std::uint32_t, E>> cterms;
  if (track_ && tag >= 0) cterms.emplace_back(std::uint32_t(tag), f.one());
  while (!heap.empty()) {
    std::int32_t k = heap.top();
    heap.pop();
    queued[k] = 0;
    const Row& r = rows_[k];
    E c = acc[r.pivot];
    if (f.is_zero(c)) continue;
    for (std::size_t t = 0; t < r.v.nnz(); ++t) {
      std::uint32_t j = r.v.idx[t];
      touch(j);
      acc[j] = f.sub(acc[j], f.mul(c, r.v.val[t]));
    }
    if (track_)
      for (std::size_t t = 0; t < r.combo.nnz(); ++t) cterms.emplace_back(r.combo.idx[t], f.neg(f.mul(c, r.combo.val[t])));
  }
  std::sort(touched.begin(), touched.end());
  SparseVec<F> res;
  for (auto i : touched) {
    if (!f.is_zero(acc[i])) res.push(i, acc[i]);
    mark[i] = 0;
    acc[i] = f.zero();
  }
  if (track_ && combo_out) {
    std::sort(cterms.begin(), cterms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    combo_out->idx.clear();
    combo_out->val.clear();
    for (std::size_t t = 0; t < cterms.size();) {
      std::uint32_t id = cterms[t].first;
      E s = cterms[t].second;
      for (++t; t < cterms.size() && cterms[t].first == id; ++t) s = f.add(s, cterms[t].second);
      if (!f.is_zero(s)) combo_out->push(id, s);
    }
  }
  return res;
}

template <class F>
bool Echelon<F>::insert(const SparseVec<F>& v, std::int64_t tag) {
  const F& f = *f_;
  SparseVec<F> combo;
  SparseVec<F> res = run(v, tag, &combo);
  if (res.empty()) {
    relation_ = std::move(combo);
    return false;
  }
  std::size_t best = 0;
  if (!costs_.empty()) {
    for (std::size_t t = 1; t < res.nnz(); ++t)
      if (costs_[res.idx[t]] < costs_[res.idx[best]]) best = t;
  }
  E s = f.inv(res.val[best]);
  for (auto& x : res.val) x = f.mul(x, s);
  for (auto& x : combo.val) x = f.mul(x, s);
  std::uint32_t piv = res.idx[best];
  owner_[piv] = std::int32_t(rows_.size());
  rows_.push_back(Row{piv, std::move(res), std::move(combo)});
  return true;
}

template <class F>
SparseVec<F> Echelon<F>::reduce(const SparseVec<F>& v, SparseVec<F>* coords) {
  SparseVec<F> combo;
  SparseVec<F> res = run(v, -1, coords ? &combo : nullptr);
  if (coords) {
    for (auto& x : combo.val) x = f_->neg(x);
    *coords = std::move(combo);
  }
  return res;
}

template <class F>
std::vector<SparseVec<F>> Echelon<F>::rref_rows() const {
  const F& f = *f_;
  // Re-echelonize with leading pivots, then back-substitute.
  Echelon<F> lead(f, ambient_);
  for (auto& r : rows_) lead.insert(r.v);
  std::vector<std::size_t> order(lead.rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return lead.rows_[a].pivot < lead.rows_[b].pivot; });
  std::vector<SparseVec<F>> out(order.size());
  std::vector<std::int32_t> pos(ambient_, -1);
  for (std::size_t k = 0; k < order.size(); ++k) pos[lead.rows_[order[k]].pivot] = std::int32_t(k);
  Accumulator<F> acc(f, ambient_);
  for (std::size_t k = order.size(); k-- > 0;) {
    const auto& r = lead.rows_[order[k]].v;
    // make leading entry 1 and clear later pivots using already reduced rows
    std::uint32_t lead_idx = r.idx.front();
    E s = f.inv(r.val.front());
    for (std::size_t t = 0; t < r.nnz(); ++t) acc.add(r.idx[t], f.mul(s, r.val[t]));
    SparseVec<F> cur = acc.take();
    // rows already in `out` vanish on each other's pivots, so one pass suffices
    for (std::size_t t = 0; t < cur.nnz(); ++t) {
      acc.add(cur.idx[t], cur.val[t]);
      std::uint32_t i = cur.idx[t];
      if (i == lead_idx || pos[i] < 0) continue;
      const auto& o = out[pos[i]];
      for (std::size_t u = 0; u < o.nnz(); ++u) acc.add(o.idx[u], f.neg(f.mul(cur.val[t], o.val[u])));
    }
    cur = acc.take();
    out[k] = std::move(cur);
  }
  return out;
}

// ---- Subspace ----

template <class F>
Subspace<F>::Subspace(const F& f, std::size_t ambient, const std::vector<SparseVec<F>>& spanning)
    : ambient_(ambient) {
  Echelon<F> e(f, ambient);
  for (auto& v : spanning) e.insert(v);
  basis_ = e.rref_rows();
  for (auto& b : basis_) pivots_.push_back(b.idx.front());
}

template <class F>
bool Subspace<F>::contains(const F& f, const SparseVec<F>& v) const {
  Accumulator<F> acc(f, ambient_);
  for (std::size_t t = 0; t < v.nnz(); ++t) acc.add(v.idx[t], v.val[t]);
  auto coords = coordinates(f, v);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    if (f.is_zero(coords[k])) continue;
    const auto& b = basis_[k];
    for (std::size_t t = 0; t < b.nnz(); ++t) acc.add(b.idx[t], f.neg(f.mul(coords[k], b.val[t])));
  }
  return acc.take().empty();
}

template <class F>
DenseVec<F> Subspace<F>::coordinates(const F& f, const SparseVec<F>& v) const {
  DenseVec<F> c(basis_.size(), f.zero());
  std::size_t t = 0;
  for (std::size_t k = 0; k < pivots_.size(); ++k) {
    while (t < v.nnz() && v.idx[t] < pivots_[k]) ++t;
    if (t < v.nnz() && v.idx[t] == pivots_[k]) c[k] = v.val[t];
  }
  return c;
}

template <class F>
bool Subspace<F>::operator==(const Subspace& o) const {
  if (ambient_ != o.ambient_ || basis_.size() != o.basis_.size()) return false;
  for (std::size_t k = 0; k < basis_.size(); ++k)
    if (basis_[k].idx != o.basis_[k].idx || basis_[k].val != o.basis_[k].val) return false;
  return true;
}

// ---- matrix-level operations ----

template <class F>
std::size_t rank(const F& f, const SparseMatrix<F>& m) {
  const SparseMatrix<F>* src = &m;
  SparseMatrix<F> t;
  if (m.cols() > m.rows()) {
    t = m.transpose();
    src = &t;
  }
  std::vector<std::uint32_t> costs(src->rows(), 0);
  for (std::size_t k = 0; k < src->nnz(); ++k) ++costs[src->row_at(k)];
  // sparse columns first
  std::vector<std::size_t> order(src->cols());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return src->col_end(a) - src->col_begin(a) < src->col_end(b) - src->col_begin(b);
  });
  Echelon<F> e(f, src->rows());
  e.set_pivot_costs(std::move(costs));
  for (auto j : order) e.insert(src->column(j));
  return e.rank();
}

template <class F>
Subspace<F> kernel(const F& f, const SparseMatrix<F>& m) {
  Echelon<F> e(f, m.rows(), true);
  std::vector<SparseVec<F>> rel;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!e.insert(m.column(j), std::int64_t(j))) rel.push_back(e.last_relation());
  return Subspace<F>(f, m.cols(), rel);
}

template <class F>
Subspace<F> image(const F& f, const SparseMatrix<F>& m) {
  std::vector<SparseVec<F>> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  return Subspace<F>(f, m.rows(), cols);
}

template <class F>
std::optional<DenseVec<F>> solve(const F& f, const SparseMatrix<F>& m, const DenseVec<F>& b) {
  if (b.size() != m.rows()) fail(ErrorKind::DegreeMismatch, "solve: right-hand side has wrong length");
  Echelon<F> e(f, m.rows(), true);
  for (std::size_t j = 0; j < m.cols(); ++j) e.insert(m.column(j), std::int64_t(j));
  SparseVec<F> coords;
  if (!e.reduce(to_sparse(f, b), &coords).empty()) return std::nullopt;
  return to_dense(f, coords, m.cols());
}

template <class F>
DenseVec<F> QuotientBasis<F>::project(const F& f, const SparseVec<F>& v) {
  SparseVec<F> coords;
  if (!ech.reduce(v, &coords).empty()) fail(ErrorKind::NotASubspace, "projection of a vector outside V");
  return to_dense(f, coords, reps.size());
}

template <class F>
QuotientBasis<F> quotient_basis(const F& f, const Subspace<F>& V, const Subspace<F>& W) {
  if (V.ambient_dim() != W.ambient_dim()) fail(ErrorKind::NotASubspace, "ambient dimensions differ");
  for (auto& w : W.basis())
    if (!V.contains(f, w)) fail(ErrorKind::NotASubspace, "W is not contained in V");
  QuotientBasis<F> q{{}, Echelon<F>(f, V.ambient_dim(), true)};
  for (auto& w : W.basis()) q.ech.insert(w);
  for (auto& v : V.basis()) {
    if (q.ech.insert(v, std::int64_t(q.reps.size()))) q.reps.push_back(v);
  }
  return q;
}

// ---- dense ----

template <class F>
DenseMatrix<F> dense_identity(const F& f, std::size_t n) {
  DenseMatrix<F> x(f, n, n);
  for (std::size_t i = 0; i < n; ++i) x(i, i) = f.one();
  return x;
}

template <class F>
DenseMatrix<F> dense_mul(const F& f, const DenseMatrix<F>& x, const DenseMatrix<F>& y) {
  DenseMatrix<F> z(f, x.n, y.m);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.m; ++k) {
      if (f.is_zero(x(i, k))) continue;
      for (std::size_t j = 0; j < y.m; ++j) z(i, j) = f.add(z(i, j), f.mul(x(i, k), y(k, j)));
    }
  return z;
}

template <class F>
DenseVec<F> dense_apply(const F& f, const DenseMatrix<F>& x, const DenseVec<F>& v) {
  DenseVec<F> out(x.n, f.zero());
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.m; ++k) out[i] = f.add(out[i], f.mul(x(i, k), v[k]));
  return out;
}

template <class F>
std::optional<DenseMatrix<F>> dense_inverse(const F& f, const DenseMatrix<F>& x) {
  std::size_t n = x.n;
  DenseMatrix<F> a = x, inv = dense_identity(f, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && f.is_zero(a(p, c))) ++p;
    if (p == n) return std::nullopt;
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    auto s = f.inv(a(c, c));
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) = f.mul(a(c, j), s);
      inv(c, j) = f.mul(inv(c, j), s);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || f.is_zero(a(i, c))) continue;
      auto t = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = f.sub(a(i, j), f.mul(t, a(c, j)));
        inv(i, j) = f.sub(inv(i, j), f.mul(t, inv(c, j)));
      }
    }
  }
  return inv;
}

template <class F>
SparseMatrix<F> to_sparse(const F& f, const DenseMatrix<F>& x) {
  return SparseMatrix<F>::from_dense(f, x.n, x.m, x.a);
}

template <class F>
bool dense_equal(const F& f, const DenseMatrix<F>& x, const DenseMatrix<F>& y) {
  if (x.n != y.n || x.m != y.m) return false;
  for (std::size_t i = 0; i < x.a.size(); ++i)
    if (!f.eq(x.a[i], y.a[i])) return false;
  return true;
}

template <class F>
Poly<F> char_poly(const F& f, const DenseMatrix<F>& m) {
  std::size_t n = m.n;
  std::vector<typename F::Elem> prev{f.one()};  // high-to-low
  for (std::size_t r = 1; r <= n; ++r) {
    std::size_t k = r - 1;  // new row/col index
    std::vector<typename F::Elem> t(r + 1, f.zero());
    t[0] = f.one();
    t[1] = f.neg(m(k, k));
    // w = S, then repeatedly M w; t[j] = -R M^{j-2} S
    std::vector<typename F::Elem> w(k);
    for (std::size_t i = 0; i < k; ++i) w[i] = m(i, k);
    for (std::size_t j = 2; j <= r; ++j) {
      auto dot = f.zero();
      for (std::size_t i = 0; i < k; ++i) dot = f.add(dot, f.mul(m(k, i), w[i]));
      t[j] = f.neg(dot);
      std::vector<typename F::Elem> nw(k, f.zero());
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t l = 0; l < k; ++l) nw[i] = f.add(nw[i], f.mul(m(i, l), w[l]));
      w = std::move(nw);
    }
    std::vector<typename F::Elem> next(r + 1, f.zero());
    for (std::size_t i = 0; i <= r; ++i)
      for (std::size_t j = 0; j <= std::min(i, r - 1); ++j) next[i] = f.add(next[i], f.mul(t[i - j], prev[j]));
    prev = std::move(next);
  }
  Poly<F> out(prev.rbegin(), prev.rend());
  return out;
}

template <class F>
Eigenspaces<F> eigenspaces(const F& f, const DenseMatrix<F>& m) {
  Eigenspaces<F> out;
  std::size_t total = 0;
  for (auto& [lam, mult] : all_roots(f, char_poly(f, m))) {
    DenseMatrix<F> s = m;
    for (std::size_t i = 0; i < m.n; ++i) s(i, i) = f.sub(s(i, i), lam);
    auto ker = kernel(f, to_sparse(f, s));
    total += ker.dim();
    out.spaces.emplace_back(lam, std::move(ker));
  }
  out.diagonalizable = (total == m.n);
  return out;
}

#define FROBHH_INSTANTIATE_LINALG(F)                                                              \
  template SparseVec<F> to_sparse<F>(const F&, const DenseVec<F>&);                               \
  template DenseVec<F> to_dense<F>(const F&, const SparseVec<F>&, std::size_t);                   \
  template class Accumulator<F>;                                                                  \
  template class SparseMatrix<F>;                                                                 \
  template bool composes_to_zero<F>(const F&, const SparseMatrix<F>&, const SparseMatrix<F>&);    \
  template class Echelon<F>;                                                                      \
  template class Subspace<F>;                                                                     \
  template std::size_t rank<F>(const F&, const SparseMatrix<F>&);                                 \
  template Subspace<F> kernel<F>(const F&, const SparseMatrix<F>&);                               \
  template Subspace<F> image<F>(const F&, const SparseMatrix<F>&);                                \
  template std::optional<DenseVec<F>> solve<F>(const F&, const SparseMatrix<F>&, const DenseVec<F>&); \
  template struct QuotientBasis<F>;                                                               \
  template QuotientBasis<F> quotient_basis<F>(const F&, const Subspace<F>&, const Subspace<F>&);  \
  template DenseMatrix<F> dense_identity<F>(const F&, std::size_t);                               \
  template DenseMatrix<F> dense_mul<F>(const F&, const DenseMatrix<F>&, const DenseMatrix<F>&);   \
  template DenseVec<F> dense_apply<F>(const F&, const DenseMatrix<F>&, const DenseVec<F>&);       \
  template std::optional<DenseMatrix<F>> dense_inverse<F>(const F&, const DenseMatrix<F>&);       \
  template SparseMatrix<F> to_sparse<F>(const F&, const DenseMatrix<F>&);                         \
  template bool dense_equal<F>(const F&, const DenseMatrix<F>&, const DenseMatrix<F>&);           \
  template Poly<F> char_poly<F>(const F&, const DenseMatrix<F>&);                                 \
  template Eigenspaces<F> eigenspaces<F>(const F&, const DenseMatrix<F>&);

FROBHH_INSTANTIATE_LINALG(PrimeField)
FROBHH_INSTANTIATE_LINALG(ExtField)
FROBHH_INSTANTIATE_LINALG(RationalField)

}  // namespace frobhh
