#include "frobhh/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace frobhh {

template <class F>
Algebra<F>::Algebra(F field, std::vector<std::string> labels, std::vector<SparseVec<F>> table, DenseVec<F> unit,
                    std::vector<int> weights)
    : f_(std::move(field)), d_(labels.size()), labels_(std::move(labels)), table_(std::move(table)),
      unit_(std::move(unit)), weights_(std::move(weights)) {
  if (d_ == 0) fail(ErrorKind::InvalidPresentation, "algebra must have positive dimension");
  if (table_.size() != d_ * d_) fail(ErrorKind::InvalidPresentation, "structure table has wrong size");
  if (unit_.size() != d_) fail(ErrorKind::InvalidPresentation, "unit vector has wrong length");
  for (auto& v : table_)
    for (auto i : v.idx)
      if (i >= d_) fail(ErrorKind::InvalidPresentation, "structure constant index out of range");
  graded_ = !weights_.empty();
  if (!graded_) weights_.assign(d_, 0);
  if (weights_.size() != d_) fail(ErrorKind::InvalidPresentation, "weight list has wrong length");
}

template <class F>
DenseVec<F> Algebra<F>::mul(const DenseVec<F>& a, const DenseVec<F>& b) const {
  DenseVec<F> out(d_, f_.zero());
  for (std::size_t i = 0; i < d_; ++i) {
    if (f_.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < d_; ++j) {
      if (f_.is_zero(b[j])) continue;
      auto c = f_.mul(a[i], b[j]);
      const auto& p = product(i, j);
      for (std::size_t t = 0; t < p.nnz(); ++t) out[p.idx[t]] = f_.add(out[p.idx[t]], f_.mul(c, p.val[t]));
    }
  }
  return out;
}

template <class F>
DenseMatrix<F> Algebra<F>::left_matrix(const DenseVec<F>& a) const {
  DenseMatrix<F> m(f_, d_, d_);
  for (std::size_t j = 0; j < d_; ++j) {
    DenseVec<F> e(d_, f_.zero());
    e[j] = f_.one();
    auto col = mul(a, e);
    for (std::size_t i = 0; i < d_; ++i) m(i, j) = col[i];
  }
  return m;
}

template <class F>
std::optional<std::array<std::size_t, 3>> Algebra<F>::associativity_witness() const {
  Accumulator<F> acc(f_, d_);
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j)
      for (std::size_t k = 0; k < d_; ++k) {
        const auto& ij = product(i, j);
        for (std::size_t t = 0; t < ij.nnz(); ++t) {
          const auto& lk = product(ij.idx[t], k);
          for (std::size_t s = 0; s < lk.nnz(); ++s) acc.add_mul(lk.idx[s], ij.val[t], lk.val[s]);
        }
        const auto& jk = product(j, k);
        for (std::size_t t = 0; t < jk.nnz(); ++t) {
          const auto& il = product(i, jk.idx[t]);
          for (std::size_t s = 0; s < il.nnz(); ++s) acc.add(il.idx[s], f_.neg(f_.mul(jk.val[t], il.val[s])));
        }
        if (!acc.take().empty()) return std::array<std::size_t, 3>{i, j, k};
      }
  return std::nullopt;
}

template <class F>
std::optional<std::size_t> Algebra<F>::unit_witness() const {
  for (std::size_t i = 0; i < d_; ++i) {
    DenseVec<F> e(d_, f_.zero());
    e[i] = f_.one();
    auto l = mul(unit_, e), r = mul(e, unit_);
    for (std::size_t k = 0; k < d_; ++k)
      if (!f_.eq(l[k], e[k]) || !f_.eq(r[k], e[k])) return i;
  }
  return std::nullopt;
}

template <class F>
void Algebra<F>::validate() const {
  if (auto w = associativity_witness()) {
    auto [i, j, k] = *w;
    fail(ErrorKind::NonAssociative, "(" + labels_[i] + " " + labels_[j] + ") " + labels_[k] + " != " + labels_[i] +
                                        " (" + labels_[j] + " " + labels_[k] + ")");
  }
  if (auto w = unit_witness()) fail(ErrorKind::InvalidPresentation, "unit fails on basis element " + labels_[*w]);
}

// ---- quiver ----

std::vector<QuiverPresentation::Path> QuiverPresentation::basis() const {
  std::vector<Path> out;
  for (int l = 0; l < radical_power; ++l)
    for (int s = 0; s < vertices; ++s) out.push_back({s, l});
  return out;
}

int QuiverPresentation::index_of(int start, int length) const { return length * vertices + start; }

std::string QuiverPresentation::label(const Path& p) const {
  if (p.length == 0) return "e" + std::to_string(p.start + 1);
  std::string s;
  for (int k = 0; k < p.length; ++k) s += "a" + std::to_string((p.start + k) % vertices + 1);
  return s;
}

std::vector<std::size_t> nakayama_socle(const QuiverPresentation& q) {
  std::vector<std::size_t> out;
  for (int s = 0; s < q.vertices; ++s) out.push_back(std::size_t(q.index_of(s, q.radical_power - 1)));
  return out;
}

template <class F>
Algebra<F> build_algebra(const F& f, const QuiverPresentation& q) {
  if (q.vertices < 1) fail(ErrorKind::InvalidPresentation, "quiver needs at least one vertex");
  if (q.radical_power < 2) fail(ErrorKind::InvalidPresentation, "radical power must be at least 2");
  auto paths = q.basis();
  std::size_t d = paths.size();
  std::vector<std::string> labels;
  std::vector<int> weights;
  for (auto& p : paths) {
    labels.push_back(q.label(p));
    weights.push_back(p.length);
  }
  std::vector<SparseVec<F>> table(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      auto [s1, l1] = paths[i];
      auto [s2, l2] = paths[j];
      if ((s1 + l1) % q.vertices != s2 || l1 + l2 >= q.radical_power) continue;
      table[i * d + j].push(std::uint32_t(q.index_of(s1, l1 + l2)), f.one());
    }
  DenseVec<F> unit(d, f.zero());
  for (int s = 0; s < q.vertices; ++s) unit[q.index_of(s, 0)] = f.one();
  return Algebra<F>(f, std::move(labels), std::move(table), std::move(unit), std::move(weights));
}

// ---- Frobenius ----

template <class F>
typename F::Elem Frobenius<F>::pair(const F& f, const DenseVec<F>& x, const DenseVec<F>& y) const {
  auto s = f.zero();
  for (std::size_t i = 0; i < gram.n; ++i) {
    if (f.is_zero(x[i])) continue;
    for (std::size_t j = 0; j < gram.m; ++j) s = f.add(s, f.mul(f.mul(x[i], gram(i, j)), y[j]));
  }
  return s;
}

template <class F>
DenseVec<F> Frobenius<F>::dual_vector(const F&, std::size_t i) const {
  DenseVec<F> v(dual.n);
  for (std::size_t k = 0; k < dual.n; ++k) v[k] = dual(k, i);
  return v;
}

template <class F>
Frobenius<F> frobenius_from_gram(const Algebra<F>& a, const DenseMatrix<F>& gram) {
  const F& f = a.field();
  std::size_t d = a.dim();
  if (gram.n != d || gram.m != d) fail(ErrorKind::InvalidPresentation, "Gram matrix has wrong shape");
  auto ginv = dense_inverse(f, gram);
  if (!ginv) fail(ErrorKind::DegenerateForm, "Gram matrix is singular");
  Frobenius<F> fr;
  fr.gram = gram;
  fr.dual = DenseMatrix<F>(f, d, d);
  fr.nu = DenseMatrix<F>(f, d, d);
  fr.nu_inv = DenseMatrix<F>(f, d, d);
  // dual = G^{-T}, nu = G^{-1} G^T, nu^{-1} = G^{-T} G
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i) fr.dual(k, i) = (*ginv)(i, k);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      auto s = f.zero(), t = f.zero();
      for (std::size_t k = 0; k < d; ++k) {
        s = f.add(s, f.mul((*ginv)(i, k), gram(j, k)));
        t = f.add(t, f.mul((*ginv)(k, i), gram(k, j)));
      }
      fr.nu(i, j) = s;
      fr.nu_inv(i, j) = t;
    }
  if (a.graded()) {
    std::optional<int> deg;
    bool ok = true;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        if (f.is_zero(gram(i, j))) continue;
        int w = a.weights()[i] + a.weights()[j];
        if (!deg) deg = w;
        ok = ok && *deg == w;
      }
    fr.homogeneous = ok;
    fr.socle_degree = ok ? *deg : 0;
  }
  return fr;
}

template <class F>
Frobenius<F> socle_trace_form(const Algebra<F>& a, const std::vector<std::size_t>& socle) {
  const F& f = a.field();
  std::size_t d = a.dim();
  std::vector<char> in(d, 0);
  for (auto s : socle) {
    if (s >= d) fail(ErrorKind::InvalidPresentation, "socle index out of range");
    in[s] = 1;
  }
  DenseMatrix<F> g(f, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const auto& p = a.product(i, j);
      for (std::size_t t = 0; t < p.nnz(); ++t)
        if (in[p.idx[t]]) g(i, j) = f.add(g(i, j), p.val[t]);
    }
  return frobenius_from_gram(a, g);
}

template <class F>
std::optional<std::array<std::size_t, 3>> form_associativity_witness(const Algebra<F>& a, const DenseMatrix<F>& gram) {
  const F& f = a.field();
  std::size_t d = a.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        auto l = f.zero(), r = f.zero();
        const auto& ij = a.product(i, j);
        for (std::size_t t = 0; t < ij.nnz(); ++t) l = f.add(l, f.mul(ij.val[t], gram(ij.idx[t], k)));
        const auto& jk = a.product(j, k);
        for (std::size_t t = 0; t < jk.nnz(); ++t) r = f.add(r, f.mul(jk.val[t], gram(i, jk.idx[t])));
        if (!f.eq(l, r)) return std::array<std::size_t, 3>{i, j, k};
      }
  return std::nullopt;
}

template <class F>
std::optional<std::array<std::size_t, 2>> nakayama_relation_witness(const Algebra<F>& a, const Frobenius<F>& fr) {
  const F& f = a.field();
  std::size_t d = a.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      auto s = f.zero();
      for (std::size_t k = 0; k < d; ++k) s = f.add(s, f.mul(fr.gram(j, k), fr.nu(k, i)));
      if (!f.eq(fr.gram(i, j), s)) return std::array<std::size_t, 2>{i, j};
    }
  return std::nullopt;
}

template <class F>
std::optional<std::array<std::size_t, 2>> automorphism_witness(const Algebra<F>& a, const DenseMatrix<F>& sigma) {
  const F& f = a.field();
  std::size_t d = a.dim();
  auto col = [&](std::size_t j) {
    DenseVec<F> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = sigma(i, j);
    return v;
  };
  if (!dense_inverse(f, sigma)) return std::array<std::size_t, 2>{d, d};
  auto su = dense_apply(f, sigma, a.unit());
  for (std::size_t i = 0; i < d; ++i)
    if (!f.eq(su[i], a.unit()[i])) return std::array<std::size_t, 2>{d, d};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      DenseVec<F> e(d, f.zero());
      const auto& p = a.product(i, j);
      for (std::size_t t = 0; t < p.nnz(); ++t) e[p.idx[t]] = p.val[t];
      auto l = dense_apply(f, sigma, e);
      auto r = a.mul(col(i), col(j));
      for (std::size_t k = 0; k < d; ++k)
        if (!f.eq(l[k], r[k])) return std::array<std::size_t, 2>{i, j};
    }
  return std::nullopt;
}

template <class F>
std::optional<std::string> casimir_failure(const Algebra<F>& a, const Frobenius<F>& fr) {
  const F& f = a.field();
  std::size_t d = a.dim();
  auto basis = [&](std::size_t i) {
    DenseVec<F> e(d, f.zero());
    e[i] = f.one();
    return e;
  };
  auto u = [&](std::size_t i) { return basis(i); };
  auto v = [&](std::size_t i) { return fr.dual_vector(f, i); };
  auto tensor_add = [&](DenseVec<F>& acc, const DenseVec<F>& x, const DenseVec<F>& y) {
    for (std::size_t i = 0; i < d; ++i) {
      if (f.is_zero(x[i])) continue;
      for (std::size_t j = 0; j < d; ++j) acc[i * d + j] = f.add(acc[i * d + j], f.mul(x[i], y[j]));
    }
  };
  for (std::size_t ai = 0; ai < d; ++ai)
    for (std::size_t bi = 0; bi < d; ++bi) {
      auto x = basis(ai), y = basis(bi);
      DenseVec<F> l(d * d, f.zero()), r(d * d, f.zero());
      auto nib = dense_apply(f, fr.nu_inv, y);
      for (std::size_t i = 0; i < d; ++i) {
        tensor_add(l, a.mul(a.mul(x, u(i)), y), v(i));
        tensor_add(r, u(i), a.mul(a.mul(nib, v(i)), x));
      }
      if (l != r) return "sum a u_i b (x) v_i != sum u_i (x) nu^-1(b) v_i a at (" + a.labels()[ai] + ", " +
                         a.labels()[bi] + ")";
    }
  DenseVec<F> c1(d * d, f.zero()), c2(d * d, f.zero()), c3(d * d, f.zero());
  for (std::size_t i = 0; i < d; ++i) {
    tensor_add(c1, u(i), v(i));
    tensor_add(c2, v(i), dense_apply(f, fr.nu_inv, u(i)));
    tensor_add(c3, dense_apply(f, fr.nu, v(i)), u(i));
  }
  if (c1 != c2) return std::string("sum u_i (x) v_i != sum v_i (x) nu^-1(u_i)");
  if (c1 != c3) return std::string("sum u_i (x) v_i != sum nu(v_i) (x) u_i");
  for (std::size_t xi = 0; xi < d; ++xi) {
    auto x = basis(xi);
    DenseVec<F> s(d, f.zero());
    for (std::size_t i = 0; i < d; ++i) {
      auto c = fr.pair(f, x, u(i));
      auto vi = v(i);
      for (std::size_t k = 0; k < d; ++k) s[k] = f.add(s[k], f.mul(c, vi[k]));
    }
    if (s != x) return "dual expansion fails at " + a.labels()[xi];
  }
  return std::nullopt;
}

template <class F>
EigenData<F> eigendecompose(const Algebra<F>& a, const Frobenius<F>& fr) {
  const F& f = a.field();
  std::size_t d = a.dim();
  auto es = eigenspaces(f, fr.nu);
  // eigenvalue 1 first, others in discovery order
  std::stable_partition(es.spaces.begin(), es.spaces.end(), [&](auto& s) { return f.eq(s.first, f.one()); });
  EigenData<F> out;
  out.diagonalizable = es.diagonalizable;
  for (auto& [lam, sp] : es.spaces) {
    out.values.push_back(lam);
    std::vector<DenseVec<F>> b;
    for (auto& v : sp.basis()) b.push_back(to_dense(f, v, d));
    out.bases.push_back(std::move(b));
  }
  if (!out.diagonalizable) return out;
  for (std::size_t k = 0; k < out.values.size(); ++k)
    for (auto& b : out.bases[k]) {
      out.u.push_back(b);
      out.u_value.push_back(k);
    }
  // v = U G_u^{-T} with G_u = U^T G U
  DenseMatrix<F> gu(f, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) gu(i, j) = fr.pair(f, out.u[i], out.u[j]);
  auto gi = dense_inverse(f, gu);
  if (!gi) fail(ErrorKind::DegenerateForm, "form degenerates on the eigenbasis");
  for (std::size_t j = 0; j < d; ++j) {
    DenseVec<F> v(d, f.zero());
    for (std::size_t l = 0; l < d; ++l) {
      auto c = (*gi)(j, l);
      if (f.is_zero(c)) continue;
      for (std::size_t k = 0; k < d; ++k) v[k] = f.add(v[k], f.mul(c, out.u[l][k]));
    }
    out.v.push_back(std::move(v));
  }
  return out;
}

// ---- characters ----

template <class F>
std::uint32_t CharTable<F>::id(const E& v) {
  auto it = ids_.find(v);
  if (it != ids_.end()) return it->second;
  auto k = std::uint32_t(vals_.size());
  vals_.push_back(v);
  ids_.emplace(v, k);
  return k;
}

template <class F>
std::uint32_t CharTable<F>::mul(std::uint32_t a, std::uint32_t b) {
  if (a == 0) return b;
  if (b == 0) return a;
  auto key = std::minmax(a, b);
  auto it = mul_.find(key);
  if (it != mul_.end()) return it->second;
  auto r = id(f_.mul(vals_[a], vals_[b]));
  mul_.emplace(key, r);
  return r;
}

template <class F>
std::uint32_t CharTable<F>::inv(std::uint32_t a) {
  auto it = inv_.find(a);
  if (it != inv_.end()) return it->second;
  auto r = id(f_.inv(vals_[a]));
  inv_.emplace(a, r);
  return r;
}

// ---- workspace ----

namespace {

template <class F>
bool nu_preserves_weights(const Algebra<F>& a, const DenseMatrix<F>& nu) {
  const F& f = a.field();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (!f.is_zero(nu(i, j)) && a.weights()[i] != a.weights()[j]) return false;
  return true;
}

template <class F>
std::optional<int> homogeneous_weight(const Algebra<F>& a, const DenseVec<F>& v) {
  std::optional<int> w;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (a.field().is_zero(v[i])) continue;
    if (w && *w != a.weights()[i]) return std::nullopt;
    w = a.weights()[i];
  }
  return w ? w : std::optional<int>(0);
}

}  // namespace

template <class F>
Workspace<F>::Workspace(Algebra<F> algebra, Frobenius<F> frob)
    : alg_(std::move(algebra)), fr_(std::move(frob)), d_(alg_.dim()), chars_(alg_.field()) {
  const F& f = alg_.field();
  eig_ = eigendecompose(alg_, fr_);
  auto unit_w = homogeneous_weight(alg_, alg_.unit());
  graded_ = alg_.graded() && fr_.homogeneous && unit_w && *unit_w == 0 && nu_preserves_weights(alg_, fr_.nu);

  std::vector<DenseVec<F>> cols;
  std::vector<E> lam;
  Echelon<F> span(f, d_);
  auto take = [&](const DenseVec<F>& v, const E& l) {
    if (span.insert(to_sparse(f, v))) {
      cols.push_back(v);
      lam.push_back(l);
    }
  };
  take(alg_.unit(), f.one());
  if (eig_.diagonalizable) {
    std::vector<int> weights;
    if (graded_) {
      weights = alg_.weights();
      std::sort(weights.begin(), weights.end());
      weights.erase(std::unique(weights.begin(), weights.end()), weights.end());
    } else {
      weights = {0};
    }
    for (std::size_t k = 0; k < eig_.values.size(); ++k) {
      const E& l = eig_.values[k];
      for (int w : weights) {
        // kernel of nu - l on the weight-w coordinates
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < d_; ++i)
          if (!graded_ || alg_.weights()[i] == w) idx.push_back(i);
        SparseMatrix<F> m(d_, idx.size());
        for (auto j : idx) {
          SparseVec<F> c;
          for (std::size_t i = 0; i < d_; ++i) {
            auto x = fr_.nu(i, j);
            if (i == j) x = f.sub(x, l);
            if (!f.is_zero(x)) c.push(std::uint32_t(i), x);
          }
          m.append_column(c);
        }
        auto ker = kernel(f, m);
        for (auto& b : ker.basis()) {
          DenseVec<F> v(d_, f.zero());
          for (std::size_t t = 0; t < b.nnz(); ++t) v[idx[b.idx[t]]] = b.val[t];
          take(v, l);
        }
      }
    }
  } else {
    std::size_t j0 = 0;
    while (f.is_zero(alg_.unit()[j0])) ++j0;
    for (std::size_t j = 0; j < d_; ++j) {
      if (j == j0) continue;
      DenseVec<F> e(d_, f.zero());
      e[j] = f.one();
      take(e, f.one());
    }
  }
  if (cols.size() != d_) fail(ErrorKind::NotDiagonalizable, "working basis construction failed");

  p_ = DenseMatrix<F>(f, d_, d_);
  for (std::size_t j = 0; j < d_; ++j)
    for (std::size_t i = 0; i < d_; ++i) p_(i, j) = cols[j][i];
  pinv_ = *dense_inverse(f, p_);

  lam_ = lam;
  wt_.assign(d_, 0);
  ch_.assign(d_, 0);
  for (std::size_t j = 0; j < d_; ++j) {
    if (graded_) wt_[j] = *homogeneous_weight(alg_, cols[j]);
    if (eig_.diagonalizable) ch_[j] = chars_.id(lam_[j]);
  }

  table_.resize(d_ * d_);
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j) table_[i * d_ + j] = to_sparse(f, from_std(alg_.mul(cols[i], cols[j])));

  std::size_t r = d_ - 1;
  merge_.resize(r * r);
  merge_src_.resize(r);
  for (std::size_t x = 0; x < r; ++x)
    for (std::size_t y = 0; y < r; ++y) {
      SparseVec<F> s;
      const auto& p = mul(x + 1, y + 1);
      for (std::size_t t = 0; t < p.nnz(); ++t)
        if (p.idx[t] != 0) {
          s.push(p.idx[t] - 1, p.val[t]);
          merge_src_[p.idx[t] - 1].push_back({std::uint32_t(x), std::uint32_t(y), p.val[t]});
        }
      merge_[x * r + y] = std::move(s);
    }

  // <w_i, w_j> = (P^T G P)_ij
  DenseMatrix<F> pt(f, d_, d_);
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j) pt(i, j) = p_(j, i);
  gram_w_ = dense_mul(f, pt, dense_mul(f, fr_.gram, p_));
  auto gi = dense_inverse(f, gram_w_);
  if (!gi) fail(ErrorKind::DegenerateForm, "form degenerates on the working basis");
  dual_w_.resize(d_);
  for (std::size_t i = 0; i < d_; ++i) {
    SparseVec<F> v;
    for (std::size_t k = 0; k < d_; ++k)
      if (!f.is_zero((*gi)(i, k))) v.push(std::uint32_t(k), (*gi)(i, k));
    dual_w_[i] = std::move(v);
  }
  nu_w_ = dense_mul(f, pinv_, dense_mul(f, fr_.nu, p_));
  nu_inv_w_ = dense_mul(f, pinv_, dense_mul(f, fr_.nu_inv, p_));
}

template <class F>
DenseVec<F> Workspace<F>::mul(const DenseVec<F>& a, const DenseVec<F>& b) const {
  return to_dense(field(), mul(to_sparse(field(), a), to_sparse(field(), b)), d_);
}

template <class F>
SparseVec<F> Workspace<F>::mul(const SparseVec<F>& a, const SparseVec<F>& b) const {
  const F& f = field();
  Accumulator<F> acc(f, d_);
  for (std::size_t s = 0; s < a.nnz(); ++s)
    for (std::size_t t = 0; t < b.nnz(); ++t) {
      auto c = f.mul(a.val[s], b.val[t]);
      const auto& p = mul(a.idx[s], b.idx[t]);
      for (std::size_t k = 0; k < p.nnz(); ++k) acc.add_mul(p.idx[k], c, p.val[k]);
    }
  return acc.take();
}

template <class F>
typename F::Elem Workspace<F>::pair(const SparseVec<F>& x, const SparseVec<F>& y) const {
  const F& f = field();
  auto s = f.zero();
  for (std::size_t a = 0; a < x.nnz(); ++a)
    for (std::size_t b = 0; b < y.nnz(); ++b)
      s = f.add(s, f.mul(f.mul(x.val[a], y.val[b]), gram_w_(x.idx[a], y.idx[b])));
  return s;
}

template <class F>
SparseVec<F> Workspace<F>::apply(const DenseMatrix<F>& m, const SparseVec<F>& x) const {
  const F& f = field();
  Accumulator<F> acc(f, m.n);
  for (std::size_t t = 0; t < x.nnz(); ++t)
    for (std::size_t i = 0; i < m.n; ++i)
      if (!f.is_zero(m(i, x.idx[t]))) acc.add_mul(std::uint32_t(i), m(i, x.idx[t]), x.val[t]);
  return acc.take();
}

template <class F>
Bimodule<F> Workspace<F>::regular() const {
  Bimodule<F> m;
  m.dim = m.adim = d_;
  m.left.resize(d_ * d_);
  m.right.resize(d_ * d_);
  for (std::size_t a = 0; a < d_; ++a)
    for (std::size_t x = 0; x < d_; ++x) {
      m.left[a * d_ + x] = mul(a, x);
      m.right[a * d_ + x] = mul(x, a);
    }
  m.weight = wt_;
  m.character = ch_;
  return m;
}

template <class F>
Bimodule<F> Workspace<F>::twisted(const DenseMatrix<F>& sigma_w) const {
  const F& f = field();
  // automorphism check in working coordinates
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j) {
      SparseVec<F> ei, ej;
      ei.push(std::uint32_t(i), f.one());
      ej.push(std::uint32_t(j), f.one());
      auto l = apply(sigma_w, mul(i, j));
      auto r = mul(apply(sigma_w, ei), apply(sigma_w, ej));
      if (l.idx != r.idx || l.val != r.val)
        fail(ErrorKind::NotAutomorphism, "twist does not respect the product of w" + std::to_string(i) + " and w" +
                                             std::to_string(j));
    }
  if (!dense_inverse(f, sigma_w)) fail(ErrorKind::NotAutomorphism, "twist is not invertible");
  Bimodule<F> m = regular();
  bool diagonal = true;
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j)
      if (i != j && !f.is_zero(sigma_w(i, j))) diagonal = false;
  for (std::size_t a = 0; a < d_; ++a) {
    SparseVec<F> ea;
    ea.push(std::uint32_t(a), f.one());
    auto sa = apply(sigma_w, ea);
    for (std::size_t x = 0; x < d_; ++x) {
      SparseVec<F> ex;
      ex.push(std::uint32_t(x), f.one());
      m.right[a * d_ + x] = mul(ex, sa);
    }
  }
  if (!diagonal) {
    // without eigen-characters the weight grading survives when sigma preserves it
    bool keeps = graded_ && !eig_.diagonalizable;
    for (std::size_t i = 0; i < d_ && keeps; ++i)
      for (std::size_t j = 0; j < d_; ++j)
        if (!f.is_zero(sigma_w(i, j)) && wt_[i] != wt_[j]) keeps = false;
    if (!keeps) {
      m.weight.clear();
      m.character.clear();
    }
  }
  return m;
}

template <class F>
SparseMatrix<F> norm_map(const Workspace<F>& ws, const Bimodule<F>& m) {
  const F& f = ws.field();
  SparseMatrix<F> out(m.dim, m.dim);
  Accumulator<F> acc(f, m.dim);
  for (std::size_t x = 0; x < m.dim; ++x) {
    for (std::size_t i = 0; i < ws.dim(); ++i) {
      const auto& ux = m.l(i, x);
      const auto& vi = ws.dual(i);
      for (std::size_t s = 0; s < ux.nnz(); ++s)
        for (std::size_t t = 0; t < vi.nnz(); ++t) {
          auto c = f.mul(ux.val[s], vi.val[t]);
          const auto& r = m.r(vi.idx[t], ux.idx[s]);
          for (std::size_t k = 0; k < r.nnz(); ++k) acc.add_mul(r.idx[k], c, r.val[k]);
        }
    }
    out.append_column(acc.take());
  }
  return out;
}

template <class F>
DenseMatrix<F> norm_map_std(const Algebra<F>& a, const std::vector<DenseVec<F>>& u, const std::vector<DenseVec<F>>& v) {
  const F& f = a.field();
  std::size_t d = a.dim();
  DenseMatrix<F> out(f, d, d);
  for (std::size_t j = 0; j < d; ++j) {
    DenseVec<F> e(d, f.zero());
    e[j] = f.one();
    for (std::size_t i = 0; i < u.size(); ++i) {
      auto t = a.mul(a.mul(u[i], e), v[i]);
      for (std::size_t k = 0; k < d; ++k) out(k, j) = f.add(out(k, j), t[k]);
    }
  }
  return out;
}

template <class F>
std::optional<std::array<std::size_t, 2>> actions_commute_witness(const Workspace<F>& ws, const Bimodule<F>& m) {
  const F& f = ws.field();
  Accumulator<F> acc(f, m.dim);
  for (std::size_t a = 0; a < m.adim; ++a)
    for (std::size_t b = 0; b < m.adim; ++b)
      for (std::size_t x = 0; x < m.dim; ++x) {
        const auto& lx = m.l(a, x);
        for (std::size_t s = 0; s < lx.nnz(); ++s) {
          const auto& r = m.r(b, lx.idx[s]);
          for (std::size_t k = 0; k < r.nnz(); ++k) acc.add_mul(r.idx[k], lx.val[s], r.val[k]);
        }
        const auto& rx = m.r(b, x);
        for (std::size_t s = 0; s < rx.nnz(); ++s) {
          const auto& l = m.l(a, rx.idx[s]);
          for (std::size_t k = 0; k < l.nnz(); ++k) acc.add(l.idx[k], f.neg(f.mul(rx.val[s], l.val[k])));
        }
        if (!acc.take().empty()) return std::array<std::size_t, 2>{a, b};
      }
  // w_0 = 1 acts trivially on both sides
  for (std::size_t x = 0; x < m.dim; ++x) {
    const auto& l = m.l(0, x);
    const auto& r = m.r(0, x);
    bool ok = l.nnz() == 1 && l.idx[0] == x && f.eq(l.val[0], f.one()) && r.nnz() == 1 && r.idx[0] == x &&
              f.eq(r.val[0], f.one());
    if (!ok) return std::array<std::size_t, 2>{0, 0};
  }
  return std::nullopt;
}

#define FROBHH_INSTANTIATE_ALGEBRA(F)                                                                         \
  template class Algebra<F>;                                                                                  \
  template Algebra<F> build_algebra<F>(const F&, const QuiverPresentation&);                                  \
  template struct Frobenius<F>;                                                                               \
  template Frobenius<F> frobenius_from_gram<F>(const Algebra<F>&, const DenseMatrix<F>&);                     \
  template Frobenius<F> socle_trace_form<F>(const Algebra<F>&, const std::vector<std::size_t>&);              \
  template std::optional<std::array<std::size_t, 3>> form_associativity_witness<F>(const Algebra<F>&,         \
                                                                                   const DenseMatrix<F>&);    \
  template std::optional<std::array<std::size_t, 2>> nakayama_relation_witness<F>(const Algebra<F>&,          \
                                                                                  const Frobenius<F>&);       \
  template std::optional<std::array<std::size_t, 2>> automorphism_witness<F>(const Algebra<F>&,               \
                                                                             const DenseMatrix<F>&);          \
  template std::optional<std::string> casimir_failure<F>(const Algebra<F>&, const Frobenius<F>&);             \
  template EigenData<F> eigendecompose<F>(const Algebra<F>&, const Frobenius<F>&);                            \
  template class CharTable<F>;                                                                                \
  template class Workspace<F>;                                                                                \
  template SparseMatrix<F> norm_map<F>(const Workspace<F>&, const Bimodule<F>&);                              \
  template DenseMatrix<F> norm_map_std<F>(const Algebra<F>&, const std::vector<DenseVec<F>>&,                 \
                                          const std::vector<DenseVec<F>>&);                                   \
  template std::optional<std::array<std::size_t, 2>> actions_commute_witness<F>(const Workspace<F>&,          \
                                                                                const Bimodule<F>&);

FROBHH_INSTANTIATE_ALGEBRA(PrimeField)
FROBHH_INSTANTIATE_ALGEBRA(ExtField)
FROBHH_INSTANTIATE_ALGEBRA(RationalField)

}  // namespace frobhh
