#include "frobhh/products.hpp"

#include <algorithm>
#include <random>

namespace frobhh {

namespace {

template <class F>
using E = typename F::Elem;

// Entries of a sorted sparse vector whose index lies in [rank * width, (rank + 1) * width).
template <class F>
std::pair<std::size_t, std::size_t> slice(const SparseVec<F>& v, std::size_t rank, std::size_t width) {
  auto lo = std::lower_bound(v.idx.begin(), v.idx.end(), std::uint32_t(rank * width));
  auto hi = std::lower_bound(lo, v.idx.end(), std::uint32_t((rank + 1) * width));
  return {std::size_t(lo - v.idx.begin()), std::size_t(hi - v.idx.begin())};
}

std::size_t rank_of(const std::vector<std::uint32_t>& t, std::size_t R, std::size_t lo, std::size_t hi) {
  std::size_t r = 0;
  for (std::size_t i = lo; i < hi; ++i) r = r * R + t[i];
  return r;
}

void unrank_into(std::size_t idx, std::size_t R, std::size_t len, std::vector<std::uint32_t>& t) {
  t.resize(len);
  for (std::size_t i = len; i-- > 0;) {
    t[i] = std::uint32_t(idx % R);
    idx /= R;
  }
}

template <class F>
SparseVec<F> basis_vec(const F& f, std::size_t i) {
  SparseVec<F> e;
  e.push(std::uint32_t(i), f.one());
  return e;
}

// Per-workspace tables shared by the product formulas.
template <class F>
struct Tables {
  const Workspace<F>& ws;
  const F& f;
  std::size_t d, R;
  std::vector<SparseVec<F>> nu, nu_inv;  // images of w_k
  // T[j * R + x] = sum_i [w_{x+1}](u_i nu(w_j)) v_i,  S[j * R + x] = sum_i [w_{x+1}](v_i) u_i nu(w_j)
  std::vector<SparseVec<F>> T, S;

  explicit Tables(const Workspace<F>& w) : ws(w), f(w.field()), d(w.dim()), R(w.rdim()) {
    for (std::size_t k = 0; k < d; ++k) {
      nu.push_back(ws.apply(ws.nu(), basis_vec(f, k)));
      nu_inv.push_back(ws.apply(ws.nu_inv(), basis_vec(f, k)));
    }
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<Accumulator<F>> ta(R, Accumulator<F>(f, d)), sa(R, Accumulator<F>(f, d));
      for (std::size_t i = 0; i < d; ++i) {
        auto un = ws.mul(basis_vec(f, i), nu[j]);
        const auto& v = ws.dual(i);
        for (std::size_t k = 0; k < un.nnz(); ++k)
          if (un.idx[k] > 0)
            for (std::size_t t = 0; t < v.nnz(); ++t) ta[un.idx[k] - 1].add_mul(v.idx[t], un.val[k], v.val[t]);
        for (std::size_t k = 0; k < v.nnz(); ++k)
          if (v.idx[k] > 0)
            for (std::size_t t = 0; t < un.nnz(); ++t) sa[v.idx[k] - 1].add_mul(un.idx[t], v.val[k], un.val[t]);
      }
      for (std::size_t x = 0; x < R; ++x) {
        T.push_back(ta[x].take());
        S.push_back(sa[x].take());
      }
    }
  }
};

template <class F>
void add_scaled(Accumulator<F>& acc, std::size_t offset, const SparseVec<F>& v, const E<F>& c) {
  for (std::size_t k = 0; k < v.nnz(); ++k) acc.add_mul(std::uint32_t(offset + v.idx[k]), c, v.val[k]);
}

// d_q on one basis element a0 (x) t (x) b of Bar_q.
template <class F>
void bar_term(const Workspace<F>& ws, int q, std::size_t a0, const std::vector<std::uint32_t>& t, std::size_t b,
              const E<F>& c, Accumulator<F>& acc) {
  const F& f = ws.field();
  const std::size_t d = ws.dim(), R = ws.rdim();
  if (q == 0) {
    add_scaled(acc, 0, ws.mul(a0, b), c);
    return;
  }
  const std::size_t ntm = int_pow(R, q - 1);
  const std::size_t tail = rank_of(t, R, 1, q), head = rank_of(t, R, 0, q - 1);
  const auto& l = ws.mul(a0, t[0] + 1);
  for (std::size_t k = 0; k < l.nnz(); ++k) acc.add_mul(std::uint32_t((l.idx[k] * ntm + tail) * d + b), c, l.val[k]);
  for (int i = 1; i <= q - 1; ++i) {
    E<F> ci = i % 2 ? f.neg(c) : c;
    std::size_t hi = rank_of(t, R, 0, i - 1), lo = rank_of(t, R, i + 1, q);
    std::size_t wlo = int_pow(R, q - i - 1);
    const auto& mg = ws.merge(t[i - 1], t[i]);
    for (std::size_t k = 0; k < mg.nnz(); ++k)
      acc.add_mul(std::uint32_t((a0 * ntm + (hi * R + mg.idx[k]) * wlo + lo) * d + b), ci, mg.val[k]);
  }
  E<F> cl = q % 2 ? f.neg(c) : c;
  const auto& r = ws.mul(t[q - 1] + 1, b);
  for (std::size_t k = 0; k < r.nnz(); ++k) acc.add_mul(std::uint32_t((a0 * ntm + head) * d + r.idx[k]), cl, r.val[k]);
}

// Projections of one Omega^p value (ambient coordinates).
template <class F>
SparseVec<F> proj_r(const Workspace<F>& ws, int p, const SparseVec<F>& x) {
  if (p == 0) return x;
  const std::size_t d = ws.dim(), R = ws.rdim(), nt = int_pow(R, p - 1), ntp = nt * R;
  Accumulator<F> acc(ws.field(), d * ntp);
  for (std::size_t k = 0; k < x.nnz(); ++k) {
    std::size_t b = x.idx[k] % d, rk = (x.idx[k] / d) % nt, a0 = x.idx[k] / d / nt;
    if (b) acc.add(std::uint32_t(a0 * ntp + rk * R + b - 1), x.val[k]);
  }
  return acc.take();
}

template <class F>
SparseVec<F> proj_b(const Workspace<F>& ws, int p, const SparseVec<F>& x) {
  const std::size_t d = ws.dim(), R = ws.rdim();
  if (p == 0) {
    SparseVec<F> out;
    for (std::size_t k = 0; k < x.nnz(); ++k)
      if (x.idx[k]) out.push(x.idx[k] - 1, x.val[k]);
    return out;
  }
  const std::size_t nt = int_pow(R, p - 1);
  Accumulator<F> acc(ws.field(), nt * R * R);
  for (std::size_t k = 0; k < x.nnz(); ++k) {
    std::size_t b = x.idx[k] % d, rk = (x.idx[k] / d) % nt, a0 = x.idx[k] / d / nt;
    if (a0 && b) acc.add(std::uint32_t(((a0 - 1) * nt + rk) * R + b - 1), x.val[k]);
  }
  return acc.take();
}

template <class F>
SparseVec<F> proj_l(const Workspace<F>& ws, int p, const SparseVec<F>& x) {
  if (p == 0) return x;
  const std::size_t d = ws.dim(), R = ws.rdim(), nt = int_pow(R, p - 1);
  Accumulator<F> acc(ws.field(), nt * R * d);
  for (std::size_t k = 0; k < x.nnz(); ++k) {
    std::size_t b = x.idx[k] % d, rk = (x.idx[k] / d) % nt, a0 = x.idx[k] / d / nt;
    if (a0) acc.add(std::uint32_t(((a0 - 1) * nt + rk) * d + b), x.val[k]);
  }
  return acc.take();
}

}  // namespace

std::size_t bar_dim(std::size_t d, std::size_t R, int q) { return d * int_pow(R, q) * d; }
std::size_t omega_ambient(std::size_t d, std::size_t R, int p) { return p == 0 ? d : bar_dim(d, R, p - 1); }

template <class F>
SparseVec<F> unit_cochain(const Workspace<F>& ws) {
  return basis_vec(ws.field(), 0);
}

// ---- classical products ----

template <class F>
SparseVec<F> cup(const Workspace<F>& ws, int m, const SparseVec<F>& f, int n, const SparseVec<F>& g) {
  const F& fl = ws.field();
  const std::size_t d = ws.dim(), Rn = int_pow(ws.rdim(), n);
  Accumulator<F> acc(fl, int_pow(ws.rdim(), m + n) * d);
  for (std::size_t a = 0; a < f.nnz(); ++a) {
    std::size_t tf = f.idx[a] / d, kf = f.idx[a] % d;
    for (std::size_t b = 0; b < g.nnz(); ++b) {
      std::size_t tg = g.idx[b] / d, kg = g.idx[b] % d;
      add_scaled(acc, (tf * Rn + tg) * d, ws.mul(kf, kg), fl.mul(f.val[a], g.val[b]));
    }
  }
  return acc.take();
}

template <class F>
SparseVec<F> cap(const Workspace<F>& ws, int p, const SparseVec<F>& z, int m, const SparseVec<F>& f) {
  if (p < m) fail(ErrorKind::DegreeMismatch, "cap needs chain degree >= cochain degree");
  Tables<F> tb(ws);
  const F& fl = ws.field();
  const std::size_t d = ws.dim(), Rs = int_pow(ws.rdim(), p - m);
  Accumulator<F> acc(fl, Rs * d);
  // a0 nu^-1(f(a_1..a_m)) (x) a_{m+1..p}
  for (std::size_t a = 0; a < z.nnz(); ++a) {
    std::size_t t = z.idx[a] / d, a0 = z.idx[a] % d;
    std::size_t pre = t / Rs, suf = t % Rs;
    auto [lo, hi] = slice(f, pre, d);
    for (std::size_t b = lo; b < hi; ++b) {
      auto prod = ws.mul(basis_vec(fl, a0), tb.nu_inv[f.idx[b] % d]);
      add_scaled(acc, suf * d, prod, fl.mul(z.val[a], f.val[b]));
    }
  }
  return acc.take();
}

template <class F>
SparseVec<F> circle(const Workspace<F>& ws, int m, const SparseVec<F>& f, int n, const SparseVec<F>& g) {
  const F& fl = ws.field();
  const std::size_t d = ws.dim(), R = ws.rdim();
  if (m == 0) return {};
  const int out_len = m + n - 1;
  Accumulator<F> acc(fl, int_pow(R, out_len) * d);
  std::vector<std::uint32_t> s, t;
  // sum_i (-1)^{(i-1)(n-1)} f(a_{1..i-1} (x) pi g(a_{i..i+n-1}) (x) ..)
  for (std::size_t b = 0; b < g.nnz(); ++b) {
    std::size_t kg = g.idx[b] % d;
    if (kg == 0) continue;
    unrank_into(g.idx[b] / d, R, n, s);
    for (std::size_t a = 0; a < f.nnz(); ++a) {
      unrank_into(f.idx[a] / d, R, m, t);
      std::size_t kf = f.idx[a] % d;
      for (int i = 1; i <= m; ++i) {
        if (t[i - 1] != kg - 1) continue;
        std::size_t r = rank_of(t, R, 0, i - 1);
        for (auto x : s) r = r * R + x;
        for (int j = i; j < m; ++j) r = r * R + t[j];
        E<F> c = fl.mul(f.val[a], g.val[b]);
        if (((i - 1) * (n - 1)) % 2) c = fl.neg(c);
        acc.add(std::uint32_t(r * d + kf), c);
      }
    }
  }
  return acc.take();
}

template <class F>
SparseVec<F> gerstenhaber_bracket(const Workspace<F>& ws, int m, const SparseVec<F>& f, int n,
                                  const SparseVec<F>& g) {
  const F& fl = ws.field();
  auto x = circle(ws, m, f, n, g), y = circle(ws, n, g, m, f);
  bool neg = ((m - 1) * (n - 1)) % 2 != 0;
  Accumulator<F> acc(fl, int_pow(ws.rdim(), m + n - 1) * ws.dim());
  add_scaled(acc, 0, x, fl.one());
  add_scaled(acc, 0, y, neg ? fl.one() : fl.neg(fl.one()));
  return acc.take();
}

// ---- star ----

int star_case(int a, int b) {
  if (a >= 0 && b >= 0) return 1;
  if (a < 0 && b < 0) return 4;
  int p = a < 0 ? -a - 1 : -b - 1, m = a < 0 ? b : a;
  return p >= m ? 2 : 3;
}

// Fixed by requiring the Leibniz rule with sign(0, 0) = 1; this determines every other value.
int star_sign(int a, int b) {
  auto par = [](long e) { return e % 2 == 0 ? 1 : -1; };
  switch (star_case(a, b)) {
    case 1:
      return 1;
    case 2: {
      long m = a < 0 ? b : a, p = a < 0 ? -a - 1 : -b - 1;
      return par(m * p + m * (m - 1) / 2);
    }
    case 3: {
      long p = a < 0 ? -a - 1 : -b - 1;
      return par(p * (p + 1) / 2);
    }
    default:
      return par(long(a) * b);
  }
}

template <class F>
SparseVec<F> star_raw(const Workspace<F>& ws, int a, const SparseVec<F>& x, int b, const SparseVec<F>& y) {
  const F& fl = ws.field();
  const std::size_t d = ws.dim(), R = ws.rdim();
  const int c = star_case(a, b);
  if (c == 1) return cup(ws, a, x, b, y);
  Tables<F> tb(ws);
  if (c == 2) {
    if (a < 0) return cap(ws, -a - 1, x, b, y);
    // f(a_{p-m+1..p}) a0 (x) a_{1..p-m}
    const int m = a, p = -b - 1;
    const std::size_t Rm = int_pow(R, m);
    Accumulator<F> acc(fl, int_pow(R, p - m) * d);
    for (std::size_t k = 0; k < y.nnz(); ++k) {
      std::size_t t = y.idx[k] / d, a0 = y.idx[k] % d;
      auto [lo, hi] = slice(x, t % Rm, d);
      for (std::size_t j = lo; j < hi; ++j)
        add_scaled(acc, (t / Rm) * d, ws.mul(x.idx[j] % d, a0), fl.mul(x.val[j], y.val[k]));
    }
    return acc.take();
  }
  if (c == 3) {
    const bool f_first = a >= 0;
    const SparseVec<F>& fv = f_first ? x : y;
    const SparseVec<F>& al = f_first ? y : x;
    const int m = f_first ? a : b, p = f_first ? -b - 1 : -a - 1;
    const int out = m - p - 1;
    const std::size_t Rp = int_pow(R, p), Ro = int_pow(R, out);
    Accumulator<F> acc(fl, Ro * d);
    std::vector<std::uint32_t> s;
    for (std::size_t k = 0; k < fv.nnz(); ++k) {
      std::size_t t = fv.idx[k] / d, kf = fv.idx[k] % d;
      if (f_first) {
        // sum_i f(b (x) pi(u_i nu(a0)) (x) a_{1..p}) v_i
        std::size_t tail = t % Rp, x0 = (t / Rp) % R, head = t / Rp / R;
        auto [lo, hi] = slice(al, tail, d);
        for (std::size_t j = lo; j < hi; ++j) {
          auto prod = ws.mul(basis_vec(fl, kf), tb.T[(al.idx[j] % d) * R + x0]);
          add_scaled(acc, head * d, prod, fl.mul(fv.val[k], al.val[j]));
        }
      } else {
        // sum_i u_i nu(a0) f(a_{1..p} (x) pi(v_i) (x) b)
        std::size_t tail = t % Ro, x0 = (t / Ro) % R, head = t / Ro / R;
        auto [lo, hi] = slice(al, head, d);
        for (std::size_t j = lo; j < hi; ++j) {
          auto prod = ws.mul(tb.S[(al.idx[j] % d) * R + x0], basis_vec(fl, kf));
          add_scaled(acc, tail * d, prod, fl.mul(fv.val[k], al.val[j]));
        }
      }
    }
    return acc.take();
  }
  // sum_i v_i b0 (x) b_{1..q} (x) pi(u_i nu(a0)) (x) a_{1..p}
  const int p = -a - 1, q = -b - 1;
  const std::size_t Rp = int_pow(R, p);
  Accumulator<F> acc(fl, int_pow(R, p + q + 1) * d);
  for (std::size_t i = 0; i < x.nnz(); ++i) {
    std::size_t ta = x.idx[i] / d, a0 = x.idx[i] % d;
    for (std::size_t j = 0; j < y.nnz(); ++j) {
      std::size_t tbk = y.idx[j] / d, b0 = y.idx[j] % d;
      E<F> c0 = fl.mul(x.val[i], y.val[j]);
      for (std::size_t x0 = 0; x0 < R; ++x0) {
        const auto& tv = tb.T[a0 * R + x0];
        if (tv.empty()) continue;
        auto prod = ws.mul(tv, basis_vec(fl, b0));
        add_scaled(acc, ((tbk * R + x0) * Rp + ta) * d, prod, c0);
      }
    }
  }
  return acc.take();
}

template <class F>
SparseVec<F> star(const Workspace<F>& ws, int a, const SparseVec<F>& x, int b, const SparseVec<F>& y) {
  auto out = star_raw(ws, a, x, b, y);
  if (star_sign(a, b) < 0)
    for (auto& v : out.val) v = ws.field().neg(v);
  return out;
}

template <class F>
std::vector<std::pair<int, int>> star_leibniz_audit(CompleteComplex<F>& cc, int lo, int hi, std::uint64_t seed,
                                                    int trials) {
  const auto& ws = cc.ws();
  const F& fl = ws.field();
  auto& cx = cc.complex();
  std::mt19937_64 rng(seed);
  auto rnd = [&](std::size_t n) {
    SparseVec<F> v;
    for (std::size_t i = 0; i < n; ++i) {
      auto c = fl.from_int(long(rng() % 7) - 3);
      if (!fl.is_zero(c)) v.push(std::uint32_t(i), c);
    }
    return v;
  };
  std::vector<std::pair<int, int>> bad;
  for (int a = lo; a <= hi; ++a)
    for (int b = lo; b <= hi; ++b)
      for (int t = 0; t < trials; ++t) {
        auto x = rnd(cc.dim(a)), y = rnd(cc.dim(b));
        auto lhs = cx.differential(a + b).apply(fl, star(ws, a, x, b, y));
        auto r1 = star(ws, a + 1, cx.differential(a).apply(fl, x), b, y);
        auto r2 = star(ws, a, x, b + 1, cx.differential(b).apply(fl, y));
        Accumulator<F> acc(fl, cc.dim(a + b + 1));
        add_scaled(acc, 0, lhs, fl.one());
        add_scaled(acc, 0, r1, fl.neg(fl.one()));
        add_scaled(acc, 0, r2, a % 2 ? fl.one() : fl.neg(fl.one()));
        if (!acc.take().empty()) {
          bad.emplace_back(a, b);
          break;
        }
      }
  return bad;
}

// ---- singular cochains ----

template <class F>
SparseVec<F> SgCochain<F>::flat(std::size_t ambient) const {
  SparseVec<F> out;
  for (std::size_t t = 0; t < val.size(); ++t)
    for (std::size_t k = 0; k < val[t].nnz(); ++k) out.push(std::uint32_t(t * ambient + val[t].idx[k]), val[t].val[k]);
  return out;
}

template <class F>
SgCochain<F> sg_zero(const Workspace<F>& ws, int m, int p) {
  SgCochain<F> s;
  s.m = m;
  s.p = p;
  s.val.assign(int_pow(ws.rdim(), m), SparseVec<F>{});
  return s;
}

template <class F>
SgCochain<F> sg_from_cochain(const Workspace<F>& ws, int m, const SparseVec<F>& f) {
  auto s = sg_zero(ws, m, 0);
  const std::size_t d = ws.dim();
  for (std::size_t k = 0; k < f.nnz(); ++k) s.val[f.idx[k] / d].push(f.idx[k] % d, f.val[k]);
  return s;
}

template <class F>
SparseVec<F> sg_to_omega_coords(const Workspace<F>& ws, const SgCochain<F>& f, const OmegaModule<F>& om) {
  if (om.p != f.p) fail(ErrorKind::DegreeMismatch, "Omega degree differs from the cochain's");
  const std::size_t n = om.space.dim();
  SparseVec<F> out;
  for (std::size_t t = 0; t < f.val.size(); ++t) {
    if (f.val[t].empty()) continue;
    auto c = om.from_ambient(ws.field(), f.val[t]);
    if (!c) fail(ErrorKind::NotASubspace, "cochain value outside Omega^" + std::to_string(f.p));
    for (std::size_t k = 0; k < c->nnz(); ++k) out.push(std::uint32_t(t * n + c->idx[k]), c->val[k]);
  }
  return out;
}

template <class F>
SgCochain<F> sg_from_omega_coords(const Workspace<F>& ws, int m, const SparseVec<F>& x, const OmegaModule<F>& om) {
  auto s = sg_zero(ws, m, om.p);
  const std::size_t n = om.space.dim();
  std::vector<SparseVec<F>> parts(s.val.size());
  for (std::size_t k = 0; k < x.nnz(); ++k) parts[x.idx[k] / n].push(x.idx[k] % n, x.val[k]);
  for (std::size_t t = 0; t < parts.size(); ++t)
    if (!parts[t].empty()) s.val[t] = om.to_ambient(ws.field(), parts[t]);
  return s;
}

template <class F>
SparseVec<F> bar_apply(const Workspace<F>& ws, int q, const SparseVec<F>& x) {
  const std::size_t d = ws.dim(), R = ws.rdim(), nt = int_pow(R, q);
  Accumulator<F> acc(ws.field(), q == 0 ? d : bar_dim(d, R, q - 1));
  std::vector<std::uint32_t> t;
  for (std::size_t k = 0; k < x.nnz(); ++k) {
    std::size_t b = x.idx[k] % d, rk = (x.idx[k] / d) % nt, a0 = x.idx[k] / d / nt;
    unrank_into(rk, R, q, t);
    bar_term(ws, q, a0, t, b, x.val[k], acc);
  }
  return acc.take();
}

template <class F>
SgProjections<F> sg_projections(const Workspace<F>& ws, const SgCochain<F>& f) {
  if (f.p < 1) fail(ErrorKind::DegreeTooLow, "edge projections need p >= 1");
  SgProjections<F> out;
  for (const auto& v : f.val) {
    out.l.push_back(proj_l(ws, f.p, v));
    out.r.push_back(proj_r(ws, f.p, v));
    out.b.push_back(proj_b(ws, f.p, v));
  }
  return out;
}

template <class F>
SparseVec<F> phi_iso(const Workspace<F>& ws, int p, const SparseVec<F>& x, int q, const SparseVec<F>& y) {
  const F& fl = ws.field();
  const std::size_t d = ws.dim(), R = ws.rdim();
  const int n = p + q;
  Accumulator<F> acc(fl, omega_ambient(d, R, n));
  const std::size_t ntp = p ? int_pow(R, p - 1) : 1, ntq = q ? int_pow(R, q - 1) : 1;
  for (std::size_t i = 0; i < x.nnz(); ++i)
    for (std::size_t j = 0; j < y.nnz(); ++j) {
      E<F> c = fl.mul(x.val[i], y.val[j]);
      if (p == 0 && q == 0) {
        add_scaled(acc, 0, ws.mul(x.idx[i], y.idx[j]), c);
        continue;
      }
      if (p == 0) {
        std::size_t b = y.idx[j] % d, rk = (y.idx[j] / d) % ntq, b0 = y.idx[j] / d / ntq;
        const auto& pr = ws.mul(x.idx[i], b0);
        for (std::size_t k = 0; k < pr.nnz(); ++k)
          acc.add_mul(std::uint32_t((pr.idx[k] * ntq + rk) * d + b), c, pr.val[k]);
        continue;
      }
      std::size_t ap = x.idx[i] % d, rs = (x.idx[i] / d) % ntp, a0 = x.idx[i] / d / ntp;
      if (q == 0) {
        const auto& pr = ws.mul(ap, y.idx[j]);
        for (std::size_t k = 0; k < pr.nnz(); ++k) acc.add_mul(std::uint32_t((a0 * ntp + rs) * d + pr.idx[k]), c, pr.val[k]);
        continue;
      }
      std::size_t b = y.idx[j] % d, rk = (y.idx[j] / d) % ntq, b0 = y.idx[j] / d / ntq;
      const std::size_t ntn = int_pow(R, n - 1);
      const auto& pr = ws.mul(ap, b0);
      for (std::size_t k = 0; k < pr.nnz(); ++k) {
        if (pr.idx[k] == 0) continue;
        std::size_t rank = (rs * R + pr.idx[k] - 1) * ntq + rk;
        acc.add_mul(std::uint32_t((a0 * ntn + rank) * d + b), c, pr.val[k]);
      }
    }
  return acc.take();
}

template <class F>
SgCochain<F> cup_sg(const Workspace<F>& ws, const SgCochain<F>& f, const SgCochain<F>& g) {
  auto out = sg_zero(ws, f.m + g.m, f.p + g.p);
  const std::size_t Rn = int_pow(ws.rdim(), g.m);
  for (std::size_t w = 0; w < out.val.size(); ++w) {
    const auto& x = f.val[w / Rn];
    const auto& y = g.val[w % Rn];
    if (!x.empty() && !y.empty()) out.val[w] = phi_iso(ws, f.p, x, g.p, y);
  }
  return out;
}

template <class F>
SgCochain<F> bullet(const Workspace<F>& ws, const SgCochain<F>& f, const SgCochain<F>& g, int i) {
  const int m = f.m, p = f.p, n = g.m, q = g.p;
  if (m < 1 || n < 1) fail(ErrorKind::DegreeTooLow, "bullet needs m, n >= 1");
  if (i == 0 || i > m || i < -q) fail(ErrorKind::IndexOutOfRange, "bullet index " + std::to_string(i));
  const F& fl = ws.field();
  const std::size_t d = ws.dim(), R = ws.rdim();
  const int M = m + n - 1, s = p + q;
  auto out = sg_zero(ws, M, s);
  const std::size_t nts = int_pow(R, s);
  std::vector<std::uint32_t> w, u, word;
  Accumulator<F> elem(fl, bar_dim(d, R, s));
  for (std::size_t wr = 0; wr < out.val.size(); ++wr) {
    unrank_into(wr, R, M, w);
    if (i > 0) {
      auto gb = proj_b(ws, q, g.val[rank_of(w, R, i - 1, i - 1 + n)]);
      for (std::size_t k = 0; k < gb.nnz(); ++k) {
        unrank_into(gb.idx[k], R, q + 1, u);
        word.assign(w.begin(), w.begin() + (i - 1));
        word.insert(word.end(), u.begin(), u.end());
        word.insert(word.end(), w.begin() + (i - 1 + n), w.end());
        auto fr = proj_r(ws, p, f.val[rank_of(word, R, 0, m)]);
        std::size_t tail = rank_of(word, R, m, m + q), ntp = int_pow(R, p), nq = int_pow(R, q);
        for (std::size_t j = 0; j < fr.nnz(); ++j) {
          std::size_t a0 = fr.idx[j] / ntp, rk = fr.idx[j] % ntp;
          elem.add_mul(std::uint32_t((a0 * nts + rk * nq + tail) * d), gb.val[k], fr.val[j]);
        }
      }
    } else {
      const int ii = -i;
      auto gr = proj_r(ws, q, g.val[rank_of(w, R, 0, n)]);
      const std::size_t ntq = int_pow(R, q);
      for (std::size_t k = 0; k < gr.nnz(); ++k) {
        std::size_t a0 = gr.idx[k] / ntq;
        unrank_into(gr.idx[k] % ntq, R, q, word);
        word.insert(word.end(), w.begin() + n, w.end());
        auto fb = proj_b(ws, p, f.val[rank_of(word, R, ii - 1, ii - 1 + m)]);
        for (std::size_t j = 0; j < fb.nnz(); ++j) {
          unrank_into(fb.idx[j], R, p + 1, u);
          std::size_t r = rank_of(word, R, 0, ii - 1);
          for (auto x : u) r = r * R + x;
          for (std::size_t t = ii - 1 + m; t < word.size(); ++t) r = r * R + word[t];
          elem.add_mul(std::uint32_t((a0 * nts + r) * d), gr.val[k], fb.val[j]);
        }
      }
    }
    auto e = elem.take();
    if (!e.empty()) out.val[wr] = bar_apply(ws, s, e);
  }
  return out;
}

namespace {

template <class F>
void sg_axpy(const F& fl, SgCochain<F>& acc, const SgCochain<F>& x, bool negate) {
  for (std::size_t t = 0; t < acc.val.size(); ++t) {
    if (x.val[t].empty()) continue;
    std::size_t n = 0;
    for (auto i : acc.val[t].idx) n = std::max<std::size_t>(n, i + 1);
    for (auto i : x.val[t].idx) n = std::max<std::size_t>(n, i + 1);
    Accumulator<F> a(fl, n);
    add_scaled(a, 0, acc.val[t], fl.one());
    add_scaled(a, 0, x.val[t], negate ? fl.neg(fl.one()) : fl.one());
    acc.val[t] = a.take();
  }
}

}  // namespace

template <class F>
SgCochain<F> bullet_sum(const Workspace<F>& ws, const SgCochain<F>& f, const SgCochain<F>& g) {
  const int m = f.m, p = f.p, n = g.m, q = g.p;
  auto out = sg_zero(ws, m + n - 1, p + q);
  auto odd = [](int e) { return ((e % 2) + 2) % 2 == 1; };
  for (int i = 1; i <= m; ++i) sg_axpy(ws.field(), out, bullet(ws, f, g, i), odd(p + q + (i - 1) * (q - n - 1)));
  // p + q + i(m + p - 1) on the negative side; this is what makes the bracket of cocycles closed
  for (int i = 1; i <= q; ++i) sg_axpy(ws.field(), out, bullet(ws, f, g, -i), odd(p + q + i * (m + p - 1)));
  return out;
}

template <class F>
SgCochain<F> sg_bracket(const Workspace<F>& ws, const SgCochain<F>& f, const SgCochain<F>& g) {
  auto out = bullet_sum(ws, f, g);
  int e = ((f.m - f.p - 1) * (g.m - g.p - 1)) % 2;
  sg_axpy(ws.field(), out, bullet_sum(ws, g, f), e == 0);
  return out;
}

template <class F>
SgCochain<F> theta_connecting(const Workspace<F>& ws, const SgCochain<F>& f) {
  const F& fl = ws.field();
  const std::size_t d = ws.dim(), R = ws.rdim();
  const int k = f.m, p = f.p;
  auto out = sg_zero(ws, k + 1, p + 1);
  const std::size_t ntp = int_pow(R, p), nt1 = ntp * R;
  Accumulator<F> elem(fl, bar_dim(d, R, p + 1));
  for (std::size_t w = 0; w < out.val.size(); ++w) {
    auto fr = proj_r(ws, p, f.val[w / R]);
    if (fr.empty()) continue;
    std::size_t last = w % R;
    for (std::size_t j = 0; j < fr.nnz(); ++j) {
      std::size_t a0 = fr.idx[j] / ntp, rk = fr.idx[j] % ntp;
      elem.add(std::uint32_t((a0 * nt1 + rk * R + last) * d), k % 2 ? fl.neg(fr.val[j]) : fr.val[j]);
    }
    out.val[w] = bar_apply(ws, p + 1, elem.take());
  }
  return out;
}

template <class F>
SgCochain<F> phi_connecting(const Workspace<F>& ws, const SgCochain<F>& f) {
  const int m = f.m - f.p, i = std::max(0, -m);
  int e = f.p == i ? m + i : m;
  auto out = theta_connecting(ws, f);
  if (((e % 2) + 2) % 2)
    for (auto& v : out.val)
      for (auto& x : v.val) x = ws.field().neg(x);
  return out;
}

template <class F>
SgCochain<F> phi_power(const Workspace<F>& ws, const SgCochain<F>& f, int q) {
  SgCochain<F> out = f;
  for (int j = 0; j < q; ++j) out = phi_connecting(ws, out);
  return out;
}

template <class F>
SgCochain<F> kappa(const Workspace<F>& ws, int r, const SparseVec<F>& z, int p) {
  if (r < 1) fail(ErrorKind::DegreeTooLow, "kappa needs r >= 1");
  Tables<F> tb(ws);
  const F& fl = ws.field();
  const std::size_t d = ws.dim(), R = ws.rdim();
  const int s = r + p;
  auto out = sg_zero(ws, p, s);
  const std::size_t nts = int_pow(R, s), Rp = int_pow(R, p);
  // sum_i d_{r+p}(u_i nu(a0) (x) a_{1..r-1} (x) pi(v_i) (x) b_{1..p} (x) 1)
  std::vector<std::tuple<std::size_t, std::size_t, E<F>>> head;  // (x0, tensor rank up to v_i, coefficient)
  for (std::size_t k = 0; k < z.nnz(); ++k) {
    std::size_t t = z.idx[k] / d, a0 = z.idx[k] % d;
    for (std::size_t i = 0; i < d; ++i) {
      auto x = ws.mul(basis_vec(fl, i), tb.nu[a0]);
      const auto& v = ws.dual(i);
      for (std::size_t a = 0; a < x.nnz(); ++a)
        for (std::size_t b = 0; b < v.nnz(); ++b)
          if (v.idx[b] > 0)
            head.emplace_back(x.idx[a], t * R + v.idx[b] - 1, fl.mul(z.val[k], fl.mul(x.val[a], v.val[b])));
    }
  }
  Accumulator<F> elem(fl, bar_dim(d, R, s));
  for (std::size_t w = 0; w < out.val.size(); ++w) {
    for (auto& [x0, rk, c] : head) elem.add(std::uint32_t((x0 * nts + rk * Rp + w) * d), c);
    auto e = elem.take();
    if (!e.empty()) out.val[w] = bar_apply(ws, s, e);
  }
  return out;
}

#define FROBHH_INSTANTIATE_PRODUCTS(F)                                                                          \
  template SparseVec<F> unit_cochain<F>(const Workspace<F>&);                                                   \
  template SparseVec<F> cup<F>(const Workspace<F>&, int, const SparseVec<F>&, int, const SparseVec<F>&);        \
  template SparseVec<F> cap<F>(const Workspace<F>&, int, const SparseVec<F>&, int, const SparseVec<F>&);        \
  template SparseVec<F> circle<F>(const Workspace<F>&, int, const SparseVec<F>&, int, const SparseVec<F>&);     \
  template SparseVec<F> gerstenhaber_bracket<F>(const Workspace<F>&, int, const SparseVec<F>&, int,             \
                                                const SparseVec<F>&);                                           \
  template SparseVec<F> star_raw<F>(const Workspace<F>&, int, const SparseVec<F>&, int, const SparseVec<F>&);   \
  template SparseVec<F> star<F>(const Workspace<F>&, int, const SparseVec<F>&, int, const SparseVec<F>&);       \
  template std::vector<std::pair<int, int>> star_leibniz_audit<F>(CompleteComplex<F>&, int, int, std::uint64_t, int); \
  template struct SgCochain<F>;                                                                                 \
  template SgCochain<F> sg_zero<F>(const Workspace<F>&, int, int);                                              \
  template SgCochain<F> sg_from_cochain<F>(const Workspace<F>&, int, const SparseVec<F>&);                      \
  template SparseVec<F> sg_to_omega_coords<F>(const Workspace<F>&, const SgCochain<F>&, const OmegaModule<F>&); \
  template SgCochain<F> sg_from_omega_coords<F>(const Workspace<F>&, int, const SparseVec<F>&,                  \
                                                const OmegaModule<F>&);                                         \
  template SparseVec<F> bar_apply<F>(const Workspace<F>&, int, const SparseVec<F>&);                            \
  template SgProjections<F> sg_projections<F>(const Workspace<F>&, const SgCochain<F>&);                        \
  template SparseVec<F> phi_iso<F>(const Workspace<F>&, int, const SparseVec<F>&, int, const SparseVec<F>&);    \
  template SgCochain<F> cup_sg<F>(const Workspace<F>&, const SgCochain<F>&, const SgCochain<F>&);               \
  template SgCochain<F> bullet<F>(const Workspace<F>&, const SgCochain<F>&, const SgCochain<F>&, int);          \
  template SgCochain<F> bullet_sum<F>(const Workspace<F>&, const SgCochain<F>&, const SgCochain<F>&);           \
  template SgCochain<F> sg_bracket<F>(const Workspace<F>&, const SgCochain<F>&, const SgCochain<F>&);           \
  template SgCochain<F> theta_connecting<F>(const Workspace<F>&, const SgCochain<F>&);                          \
  template SgCochain<F> phi_connecting<F>(const Workspace<F>&, const SgCochain<F>&);                            \
  template SgCochain<F> phi_power<F>(const Workspace<F>&, const SgCochain<F>&, int);                            \
  template SgCochain<F> kappa<F>(const Workspace<F>&, int, const SparseVec<F>&, int);

FROBHH_INSTANTIATE_PRODUCTS(PrimeField)
FROBHH_INSTANTIATE_PRODUCTS(ExtField)
FROBHH_INSTANTIATE_PRODUCTS(RationalField)

}  // namespace frobhh
