#include "frobhh/bv.hpp"

namespace frobhh {

namespace {

template <class F>
using E = typename F::Elem;

struct Term {
  std::size_t rank;
  std::size_t k;  // index into the coefficient table
};

// pi(sigma(w_{x+1})) for each reduced index x.
template <class F>
std::vector<SparseVec<F>> bar_images(const Workspace<F>& ws, const DenseMatrix<F>& sigma) {
  std::vector<SparseVec<F>> out(ws.rdim());
  for (std::size_t x = 0; x < ws.rdim(); ++x)
    for (std::size_t i = 1; i < ws.dim(); ++i)
      if (!ws.field().is_zero(sigma(i, x + 1))) out[x].push(std::uint32_t(i - 1), sigma(i, x + 1));
  return out;
}

// Multilinear expansion of img(t_lo) (x) ... (x) img(t_{hi-1}) as (rank, coefficient) pairs.
template <class F>
std::vector<std::pair<std::size_t, E<F>>> expand(const F& f, const std::vector<SparseVec<F>>& img,
                                                  const std::vector<std::uint32_t>& t, std::size_t lo, std::size_t hi,
                                                  std::size_t R) {
  std::vector<std::pair<std::size_t, E<F>>> cur{{0, f.one()}}, next;
  for (std::size_t p = lo; p < hi; ++p) {
    next.clear();
    const auto& v = img[t[p]];
    for (auto& [r, c] : cur)
      for (std::size_t k = 0; k < v.nnz(); ++k) next.emplace_back(r * R + v.idx[k], f.mul(c, v.val[k]));
    std::swap(cur, next);
  }
  return cur;
}

void unrank(std::size_t idx, std::size_t R, std::size_t len, std::vector<std::uint32_t>& t) {
  t.resize(len);
  for (std::size_t i = len; i-- > 0;) {
    t[i] = std::uint32_t(idx % R);
    idx /= R;
  }
}

std::size_t rank_range(const std::vector<std::uint32_t>& t, std::size_t R, std::size_t lo, std::size_t hi) {
  std::size_t r = 0;
  for (std::size_t i = lo; i < hi; ++i) r = r * R + t[i];
  return r;
}

template <class F>
SparseMatrix<F> matrix_of(std::size_t rows, std::size_t cols, const std::function<SparseVec<F>(std::size_t)>& col) {
  SparseMatrix<F> m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) m.append_column(col(j));
  return m;
}

template <class F>
SparseVec<F> negate(const F& f, SparseVec<F> v) {
  for (auto& x : v.val) x = f.neg(x);
  return v;
}

template <class F>
SparseVec<F> axpy(const F& f, std::size_t n, const SparseVec<F>& a, const SparseVec<F>& b, bool subtract = false) {
  Accumulator<F> acc(f, n);
  for (std::size_t k = 0; k < a.nnz(); ++k) acc.add(a.idx[k], a.val[k]);
  for (std::size_t k = 0; k < b.nnz(); ++k) acc.add(b.idx[k], subtract ? f.neg(b.val[k]) : b.val[k]);
  return acc.take();
}

template <class F>
SparseVec<F> signed_vec(const F& f, const SparseVec<F>& v, int e) {
  return ((e % 2) + 2) % 2 ? negate(f, v) : v;
}

}  // namespace

template <class F>
SparseVec<F> connes_twisted(const Workspace<F>& ws, const DenseMatrix<F>& sigma, int r, const SparseVec<F>& z) {
  const F& f = ws.field();
  const std::size_t d = ws.dim(), R = ws.rdim();
  auto img = bar_images(ws, sigma);
  Accumulator<F> acc(f, int_pow(R, r + 1) * d);
  std::vector<std::uint32_t> t;
  // sum_i (-1)^{ir} 1 (x) a_i..a_r (x) a_0 (x) sigma(a_1)..sigma(a_{i-1})
  for (std::size_t k = 0; k < z.nnz(); ++k) {
    std::size_t a0 = z.idx[k] % d;
    if (a0 == 0) continue;
    unrank(z.idx[k] / d, R, r, t);
    for (int i = 1; i <= r + 1; ++i) {
      std::size_t head = rank_range(t, R, i - 1, r) * R + (a0 - 1);
      E<F> c = (i * r) % 2 ? f.neg(z.val[k]) : z.val[k];
      const std::size_t w = int_pow(R, i - 1);
      for (auto& [rk, s] : expand(f, img, t, 0, i - 1, R)) acc.add_mul(std::uint32_t((head * w + rk) * d), c, s);
    }
  }
  return acc.take();
}

template <class F>
SparseVec<F> twist_T(const Workspace<F>& ws, const DenseMatrix<F>& sigma, int r, const SparseVec<F>& z) {
  const F& f = ws.field();
  const std::size_t d = ws.dim(), R = ws.rdim();
  auto img = bar_images(ws, sigma);
  Accumulator<F> acc(f, int_pow(R, r) * d);
  std::vector<std::uint32_t> t;
  for (std::size_t k = 0; k < z.nnz(); ++k) {
    std::size_t a0 = z.idx[k] % d;
    unrank(z.idx[k] / d, R, r, t);
    auto ex = expand(f, img, t, 0, r, R);
    for (std::size_t i = 0; i < d; ++i) {
      if (f.is_zero(sigma(i, a0))) continue;
      E<F> c = f.mul(z.val[k], sigma(i, a0));
      for (auto& [rk, s] : ex) acc.add_mul(std::uint32_t(rk * d + i), c, s);
    }
  }
  return acc.take();
}

template <class F>
SparseMatrix<F> connes_matrix(const Workspace<F>& ws, const DenseMatrix<F>& sigma, int r) {
  const std::size_t d = ws.dim(), R = ws.rdim();
  return matrix_of<F>(int_pow(R, r + 1) * d, int_pow(R, r) * d, [&](std::size_t j) {
    SparseVec<F> e;
    e.push(std::uint32_t(j), ws.field().one());
    return connes_twisted(ws, sigma, r, e);
  });
}

template <class F>
SparseMatrix<F> twist_matrix(const Workspace<F>& ws, const DenseMatrix<F>& sigma, int r) {
  const std::size_t n = int_pow(ws.rdim(), r) * ws.dim();
  return matrix_of<F>(n, n, [&](std::size_t j) {
    SparseVec<F> e;
    e.push(std::uint32_t(j), ws.field().one());
    return twist_T(ws, sigma, r, e);
  });
}

template <class F>
SparseVec<F> delta_nu(const Workspace<F>& ws, int r, const SparseVec<F>& fv) {
  if (r < 1) fail(ErrorKind::DegreeTooLow, "Delta^nu needs r >= 1");
  const F& f = ws.field();
  const std::size_t d = ws.dim(), R = ws.rdim();
  auto img = bar_images(ws, ws.nu());
  // <f(t), 1> per input tensor
  std::vector<E<F>> tr(int_pow(R, r), f.zero());
  for (std::size_t k = 0; k < fv.nnz(); ++k) {
    auto& x = tr[fv.idx[k] / d];
    x = f.add(x, f.mul(fv.val[k], ws.trace(fv.idx[k] % d)));
  }
  // <Delta(f)(a_1..a_{r-1}), w_j> = sum_i (-1)^{i(r-1)} <f(a_i..a_{r-1}, w_j, nu a_1..nu a_{i-1}), 1>
  // and Delta(f)(a) = sum_j <Delta(f)(a), w_j> v_j.
  const std::size_t nout = int_pow(R, r - 1);
  Accumulator<F> acc(f, nout * d);
  std::vector<std::uint32_t> t;
  for (std::size_t w = 0; w < nout; ++w) {
    unrank(w, R, r - 1, t);
    for (std::size_t j = 1; j < d; ++j) {
      E<F> c = f.zero();
      for (int i = 1; i <= r; ++i) {
        std::size_t head = rank_range(t, R, i - 1, r - 1) * R + (j - 1);
        const std::size_t ww = int_pow(R, i - 1);
        E<F> s = f.zero();
        for (auto& [rk, e] : expand(f, img, t, 0, i - 1, R)) s = f.add(s, f.mul(e, tr[head * ww + rk]));
        c = (i * (r - 1)) % 2 ? f.sub(c, s) : f.add(c, s);
      }
      if (f.is_zero(c)) continue;
      const auto& v = ws.dual(j);
      for (std::size_t k = 0; k < v.nnz(); ++k) acc.add_mul(std::uint32_t(w * d + v.idx[k]), c, v.val[k]);
    }
  }
  return acc.take();
}

template <class F>
SparseMatrix<F> delta_nu_matrix(const Workspace<F>& ws, int r) {
  const std::size_t d = ws.dim(), R = ws.rdim();
  return matrix_of<F>(int_pow(R, r - 1) * d, int_pow(R, r) * d, [&](std::size_t j) {
    SparseVec<F> e;
    e.push(std::uint32_t(j), ws.field().one());
    return delta_nu(ws, r, e);
  });
}

template <class F>
SparseVec<F> delta_hat_chain(const Workspace<F>& ws, int r, const SparseVec<F>& x, NegativeSign sign) {
  if (r >= 1) return delta_nu(ws, r, x);
  if (r == 0) return {};
  const int len = -r - 1;
  auto b = connes_twisted(ws, ws.nu_inv(), len, x);
  return signed_vec(ws.field(), b, sign == NegativeSign::PowR ? r : len);
}

template <class F>
SparseVec<F> unit_component(CompleteComplex<F>& cc, int r, const SparseVec<F>& x) {
  const auto& ws = cc.ws();
  if (!ws.diagonalizable()) fail(ErrorKind::NotDiagonalizable, "Delta-hat needs a diagonalizable Nakayama automorphism");
  auto p = cc.project(r, x, ws.chars().id(ws.field().one()));
  auto rest = axpy(ws.field(), cc.dim(r), x, p, true);
  if (!rest.empty() && !cc.complex().is_coboundary(r, rest))
    fail(ErrorKind::ValidationFailure, "part outside the (1)-component is not a coboundary in degree " + std::to_string(r));
  return p;
}

template <class F>
SparseVec<F> bv_delta(CompleteComplex<F>& cc, int r, const SparseVec<F>& x, NegativeSign sign) {
  return delta_hat_chain(cc.ws(), r, unit_component(cc, r, x), sign);
}

template <class F>
SparseVec<F> bv_bracket(CompleteComplex<F>& cc, int a, const SparseVec<F>& x0, int b, const SparseVec<F>& y0,
                        NegativeSign sign) {
  const auto& ws = cc.ws();
  const F& f = ws.field();
  auto x = unit_component(cc, a, x0), y = unit_component(cc, b, y0);
  const std::size_t n = cc.dim(a + b - 1);
  // (-1)^{ab+a+b} ((-1)^{a+1} D(x y) + (-1)^a D(x) y + x D(y))
  auto t1 = signed_vec(f, delta_hat_chain(ws, a + b, star(ws, a, x, b, y), sign), a + 1);
  auto t2 = signed_vec(f, star(ws, a - 1, delta_hat_chain(ws, a, x, sign), b, y), a);
  auto t3 = star(ws, a, x, b - 1, delta_hat_chain(ws, b, y, sign));
  return signed_vec(f, axpy(f, n, axpy(f, n, t1, t2), t3), a * b + a + b);
}

template <class F>
BvCheck<F> verify_bv_identity(CompleteComplex<F>& cc, int a, const SparseVec<F>& x0, int b, const SparseVec<F>& y0,
                              int c, const SparseVec<F>& z0, NegativeSign sign) {
  const auto& ws = cc.ws();
  const F& f = ws.field();
  auto x = unit_component(cc, a, x0), y = unit_component(cc, b, y0), z = unit_component(cc, c, z0);
  auto D = [&](int r, const SparseVec<F>& v) { return delta_hat_chain(ws, r, v, sign); };
  auto S = [&](int p, const SparseVec<F>& u, int q, const SparseVec<F>& v) { return star(ws, p, u, q, v); };
  const int s = a + b + c;
  const std::size_t n = cc.dim(s - 1);
  auto xy = S(a, x, b, y), yz = S(b, y, c, z), xz = S(a, x, c, z);
  auto lhs = D(s, S(a + b, xy, c, z));
  std::vector<SparseVec<F>> rhs = {
      S(a + b - 1, D(a + b, xy), c, z),
      signed_vec(f, S(a, x, b + c - 1, D(b + c, yz)), a),
      signed_vec(f, S(b, y, a + c - 1, D(a + c, xz)), b * (a - 1)),
      negate(f, S(a + b - 1, S(a - 1, D(a, x), b, y), c, z)),
      signed_vec(f, S(a + b - 1, S(a, x, b - 1, D(b, y)), c, z), a + 1),
      signed_vec(f, S(a + b, xy, c - 1, D(c, z)), a + b + 1),
  };
  BvCheck<F> out;
  out.degree = s - 1;
  out.residual = lhs;
  for (auto& t : rhs) out.residual = axpy(f, n, out.residual, t, true);
  out.holds = cc.complex().is_coboundary(s - 1, out.residual);
  return out;
}

template <class F>
BvTable<F> bv_table(CompleteComplex<F>& cc, int lo, int hi, NegativeSign sign) {
  const F& f = cc.ws().field();
  auto& cx = cc.complex();
  BvTable<F> t;
  t.lo = lo;
  t.hi = hi;
  for (int r = lo; r <= hi; ++r) {
    auto reps = cx.representatives(r);
    std::size_t rows = cx.cohomology_dim(r - 1);
    DenseMatrix<F> m(f, rows, reps.size());
    for (std::size_t j = 0; j < reps.size(); ++j) {
      auto img = bv_delta(cc, r, reps[j], sign);
      if (!cx.is_cocycle(r - 1, img))
        fail(ErrorKind::ValidationFailure, "Delta-hat of a cocycle is not a cocycle in degree " + std::to_string(r));
      auto c = cx.classify(r - 1, img);
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = c[i];
    }
    t.delta[r] = std::move(m);
  }
  return t;
}

#define FROBHH_INSTANTIATE_BV(F)                                                                                   \
  template SparseVec<F> connes_twisted<F>(const Workspace<F>&, const DenseMatrix<F>&, int, const SparseVec<F>&);   \
  template SparseVec<F> twist_T<F>(const Workspace<F>&, const DenseMatrix<F>&, int, const SparseVec<F>&);          \
  template SparseMatrix<F> connes_matrix<F>(const Workspace<F>&, const DenseMatrix<F>&, int);                      \
  template SparseMatrix<F> twist_matrix<F>(const Workspace<F>&, const DenseMatrix<F>&, int);                       \
  template SparseVec<F> delta_nu<F>(const Workspace<F>&, int, const SparseVec<F>&);                                \
  template SparseMatrix<F> delta_nu_matrix<F>(const Workspace<F>&, int);                                           \
  template SparseVec<F> delta_hat_chain<F>(const Workspace<F>&, int, const SparseVec<F>&, NegativeSign);           \
  template SparseVec<F> unit_component<F>(CompleteComplex<F>&, int, const SparseVec<F>&);                          \
  template SparseVec<F> bv_delta<F>(CompleteComplex<F>&, int, const SparseVec<F>&, NegativeSign);                  \
  template SparseVec<F> bv_bracket<F>(CompleteComplex<F>&, int, const SparseVec<F>&, int, const SparseVec<F>&,     \
                                      NegativeSign);                                                               \
  template BvCheck<F> verify_bv_identity<F>(CompleteComplex<F>&, int, const SparseVec<F>&, int,                    \
                                            const SparseVec<F>&, int, const SparseVec<F>&, NegativeSign);          \
  template BvTable<F> bv_table<F>(CompleteComplex<F>&, int, int, NegativeSign);

FROBHH_INSTANTIATE_BV(PrimeField)
FROBHH_INSTANTIATE_BV(ExtField)
FROBHH_INSTANTIATE_BV(RationalField)

}  // namespace frobhh
