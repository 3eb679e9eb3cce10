#include "frobhh/verify.hpp"

#include <array>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "frobhh/bv.hpp"

namespace frobhh {

std::size_t VerifyReport::failures() const {
  std::size_t n = 0;
  for (auto& r : results) n += r.failed();
  return n;
}

namespace {

struct Outcome {
  std::size_t instances = 0;
  std::string witness;  // empty: pass
  std::string skip;

  static Outcome skipped(std::string why) {
    Outcome o;
    o.skip = std::move(why);
    return o;
  }
};

template <class F>
SparseVec<F> axpy(const F& f, std::size_t n, const SparseVec<F>& a, const SparseVec<F>& b, const typename F::Elem& c) {
  Accumulator<F> acc(f, n);
  for (std::size_t k = 0; k < a.nnz(); ++k) acc.add(a.idx[k], a.val[k]);
  for (std::size_t k = 0; k < b.nnz(); ++k) acc.add_mul(b.idx[k], b.val[k], c);
  return acc.take();
}

template <class F>
SparseVec<F> unit_vec(const F& f, std::size_t j) {
  SparseVec<F> e;
  e.push(std::uint32_t(j), f.one());
  return e;
}

template <class F>
bool matrices_equal(const F& f, const SparseMatrix<F>& a, const SparseMatrix<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  auto m = f.neg(f.one());
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!axpy(f, a.rows(), a.column(j), b.column(j), m).empty()) return false;
  return true;
}

template <class F>
class Suite {
 public:
  using E = typename F::Elem;

  Suite(const Algebra<F>& a, const DenseMatrix<F>& gram, std::optional<Preset> preset, const VerifyOptions& opt)
      : a_(a), f_(a.field()), gram_(gram), preset_(preset), opt_(opt), rng_(opt.seed) {}

  VerifyReport run();

 private:
  void check(const std::string& id, const std::function<Outcome()>& fn);
  std::string label(std::size_t i) const { return a_.labels().at(i); }
  E rand_elem() { return f_.random(rng_); }
  SparseVec<F> random_class(int r);
  std::string degrees(std::initializer_list<int> ds) const;

  // sections
  void field_linalg();
  void algebra_form();
  void eigen();
  void complexes();
  void products();
  void bv();
  void presets();

  // Degrees in [-R, R] whose sum stays inside the window when possible.
  std::array<int, 3> triple() {
    std::uniform_int_distribution<int> deg(-opt_.product_radius, opt_.product_radius);
    std::array<int, 3> t{};
    for (int k = 0; k < 100; ++k) {
      t = {deg(rng_), deg(rng_), deg(rng_)};
      if (t[0] + t[1] + t[2] >= opt_.lo && t[0] + t[1] + t[2] <= opt_.hi) break;
    }
    return t;
  }
  bool need_ws(Outcome& o) const {
    if (ws_) return true;
    o = Outcome::skipped(ws_error_.empty() ? "no Frobenius structure" : "no Frobenius structure (" + ws_error_ + ")");
    return false;
  }
  bool need_diag(Outcome& o) const {
    if (!need_ws(o)) return false;
    if (ws_->diagonalizable()) return true;
    o = Outcome::skipped("not diagonalizable");
    return false;
  }

  const Algebra<F>& a_;
  const F& f_;
  DenseMatrix<F> gram_;
  std::optional<Preset> preset_;
  VerifyOptions opt_;
  std::mt19937_64 rng_;
  std::optional<Frobenius<F>> fr_;
  std::shared_ptr<const Workspace<F>> ws_;
  std::unique_ptr<CompleteComplex<F>> cc_;
  std::string ws_error_;
  VerifyReport rep_;
};

template <class F>
void Suite<F>::check(const std::string& id, const std::function<Outcome()>& fn) {
  InvariantResult r;
  r.id = id;
  auto t0 = std::chrono::steady_clock::now();
  try {
    auto o = fn();
    r.instances = o.instances;
    if (!o.skip.empty()) {
      r.status = "skipped: " + o.skip;
    } else if (o.witness.empty()) {
      r.status = "pass";
    } else {
      r.status = "fail";
      r.witness = o.witness;
    }
  } catch (const Error& e) {
    r.status = "fail";
    r.witness = e.what();
    if (e.kind() == ErrorKind::BudgetExceeded) rep_.budget_exceeded = true;
  } catch (const std::exception& e) {
    r.status = "fail";
    r.witness = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rep_.results.push_back(std::move(r));
}

template <class F>
std::string Suite<F>::degrees(std::initializer_list<int> ds) const {
  std::ostringstream os;
  os << "degrees";
  for (int d : ds) os << " " << d;
  return os.str();
}

template <class F>
SparseVec<F> Suite<F>::random_class(int r) {
  auto& cx = cc_->complex();
  SparseVec<F> out;
  for (auto& x : cx.representatives(r)) out = axpy(f_, cc_->dim(r), out, x, rand_elem());
  // plus a coboundary of a sparse random chain
  std::size_t n = cc_->dim(r - 1);
  SparseVec<F> y;
  for (int k = 0; k < 4 && n; ++k) {
    auto i = std::uint32_t(rng_() % n);
    y = axpy(f_, n, y, unit_vec(f_, i), rand_elem());
  }
  return axpy(f_, cc_->dim(r), out, cx.differential(r - 1).apply(f_, y), f_.one());
}

template <class F>
void Suite<F>::field_linalg() {
  check("field.axioms", [&] {
    Outcome o;
    for (int k = 0; k < 200; ++k, ++o.instances) {
      E x = rand_elem(), y = rand_elem(), z = rand_elem();
      bool ok = f_.eq(f_.add(f_.add(x, y), z), f_.add(x, f_.add(y, z))) &&
                f_.eq(f_.mul(f_.mul(x, y), z), f_.mul(x, f_.mul(y, z))) &&
                f_.eq(f_.mul(x, f_.add(y, z)), f_.add(f_.mul(x, y), f_.mul(x, z))) &&
                f_.is_zero(f_.add(x, f_.neg(x))) && f_.eq(f_.mul(x, y), f_.mul(y, x));
      if (!ok) {
        o.witness = "(" + f_.to_string(x) + ", " + f_.to_string(y) + ", " + f_.to_string(z) + ")";
        break;
      }
    }
    return o;
  });
  check("field.inverse", [&] {
    Outcome o;
    for (int k = 0; k < 200; ++k) {
      E x = rand_elem();
      if (f_.is_zero(x)) continue;
      ++o.instances;
      if (!f_.eq(f_.mul(x, f_.inv(x)), f_.one())) {
        o.witness = f_.to_string(x);
        break;
      }
    }
    return o;
  });
  auto random_matrix = [&](std::size_t rows, std::size_t cols) {
    std::vector<std::tuple<std::uint32_t, std::uint32_t, E>> t;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (rng_() % 3 == 0) t.emplace_back(std::uint32_t(i), std::uint32_t(j), rand_elem());
    return SparseMatrix<F>::from_triplets(f_, rows, cols, t);
  };
  check("linalg.rank_nullity", [&] {
    Outcome o;
    for (int k = 0; k < 10; ++k, ++o.instances) {
      auto m = random_matrix(6 + k % 4, 9);
      if (rank(f_, m) + kernel(f_, m).dim() != m.cols()) {
        o.witness = "random matrix " + std::to_string(k);
        break;
      }
    }
    return o;
  });
  check("linalg.kernel", [&] {
    Outcome o;
    for (int k = 0; k < 10; ++k) {
      auto m = random_matrix(5, 8 + k % 3);
      auto ker = kernel(f_, m);
      for (auto& v : ker.basis()) {
        ++o.instances;
        if (!m.apply(f_, v).empty()) o.witness = "random matrix " + std::to_string(k);
      }
    }
    return o;
  });
}

template <class F>
void Suite<F>::algebra_form() {
  const std::size_t d = a_.dim();
  check("algebra.associativity", [&] {
    Outcome o;
    o.instances = d * d * d;
    if (auto w = a_.associativity_witness())
      o.witness = "(" + label((*w)[0]) + ", " + label((*w)[1]) + ", " + label((*w)[2]) + ")";
    return o;
  });
  check("algebra.unit", [&] {
    Outcome o;
    o.instances = d;
    if (auto w = a_.unit_witness()) o.witness = label(*w);
    return o;
  });
  check("form.associativity", [&] {
    Outcome o;
    o.instances = d * d * d;
    if (auto w = form_associativity_witness(a_, gram_))
      o.witness = "<" + label((*w)[0]) + " " + label((*w)[1]) + ", " + label((*w)[2]) + "> != <" + label((*w)[0]) +
                  ", " + label((*w)[1]) + " " + label((*w)[2]) + ">";
    return o;
  });
  check("form.nondegenerate", [&] {
    Outcome o;
    o.instances = 1;
    fr_ = frobenius_from_gram(a_, gram_);
    // later checks need the working basis; an invalid form leaves them skipped
    try {
      auto ws = std::make_shared<const Workspace<F>>(a_, *fr_);
      cc_ = std::make_unique<CompleteComplex<F>>(ws, opt_.budget);
      ws_ = ws;
    } catch (const Error& e) {
      ws_error_ = e.what();
    }
    return o;
  });
  check("form.nakayama_relation", [&] {
    Outcome o;
    if (!need_ws(o)) return o;
    o.instances = d * d;
    if (auto w = nakayama_relation_witness(a_, *fr_)) o.witness = "(" + label((*w)[0]) + ", " + label((*w)[1]) + ")";
    return o;
  });
  check("form.dual_expansion", [&] {
    Outcome o;
    if (!need_ws(o)) return o;
    // x = sum_i <x, b_i> v_i
    for (std::size_t j = 0; j < d; ++j, ++o.instances) {
      DenseVec<F> x(d, f_.zero()), sum(d, f_.zero());
      x[j] = f_.one();
      for (std::size_t i = 0; i < d; ++i) {
        DenseVec<F> b(d, f_.zero());
        b[i] = f_.one();
        auto c = fr_->pair(f_, x, b);
        auto v = fr_->dual_vector(f_, i);
        for (std::size_t k = 0; k < d; ++k) sum[k] = f_.add(sum[k], f_.mul(c, v[k]));
      }
      if (sum != x) {
        o.witness = label(j);
        break;
      }
    }
    return o;
  });
  check("nu.automorphism", [&] {
    Outcome o;
    if (!need_ws(o)) return o;
    o.instances = d * d;
    if (auto w = automorphism_witness(a_, fr_->nu)) o.witness = "(" + label((*w)[0]) + ", " + label((*w)[1]) + ")";
    return o;
  });
  check("nu.inverse", [&] {
    Outcome o;
    if (!need_ws(o)) return o;
    o.instances = 1;
    if (!dense_equal(f_, dense_mul(f_, fr_->nu, fr_->nu_inv), dense_identity(f_, d))) o.witness = "nu nu^-1 != id";
    return o;
  });
  check("casimir.identities", [&] {
    Outcome o;
    if (!need_ws(o)) return o;
    o.instances = d * d + 2;
    if (auto w = casimir_failure(a_, *fr_)) o.witness = *w;
    return o;
  });
  check("bimodule.actions_commute", [&] {
    Outcome o;
    if (!need_ws(o)) return o;
    for (const auto* s : {&ws_->nu(), &ws_->nu_inv()}) {
      auto m = ws_->twisted(*s);
      o.instances += d * d * m.dim;
      if (auto w = actions_commute_witness(*ws_, m)) o.witness = "twisted module, working pair " +
                                                                 std::to_string((*w)[0]) + ", " +
                                                                 std::to_string((*w)[1]);
    }
    auto reg = ws_->regular();
    o.instances += d * d * reg.dim;
    if (auto w = actions_commute_witness(*ws_, reg))
      o.witness = "regular module, working pair " + std::to_string((*w)[0]) + ", " + std::to_string((*w)[1]);
    return o;
  });
}

template <class F>
void Suite<F>::eigen() {
  const std::size_t d = a_.dim();
  auto nu_apply = [&](const DenseVec<F>& x) { return dense_apply(f_, fr_->nu, x); };
  auto scaled = [&](const DenseVec<F>& x, const E& c) {
    DenseVec<F> y(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = f_.mul(c, x[k]);
    return y;
  };
  check("eigen.direct_sum", [&] {
    Outcome o;
    if (!need_diag(o)) return o;
    const auto& e = ws_->eigen();
    if (e.u.size() != d) o.witness = "eigenspaces span " + std::to_string(e.u.size()) + " of " + std::to_string(d);
    for (std::size_t j = 0; j < e.u.size() && o.witness.empty(); ++j, ++o.instances)
      if (nu_apply(e.u[j]) != scaled(e.u[j], e.values[e.u_value[j]])) o.witness = "eigenvector " + std::to_string(j);
    return o;
  });
  check("eigen.inverse_pairs", [&] {
    Outcome o;
    if (!need_diag(o)) return o;
    const auto& e = ws_->eigen();
    for (std::size_t i = 0; i < e.values.size(); ++i, ++o.instances) {
      bool found = false;
      for (std::size_t j = 0; j < e.values.size(); ++j)
        if (f_.eq(f_.mul(e.values[i], e.values[j]), f_.one()) && e.bases[i].size() == e.bases[j].size()) found = true;
      if (!found) o.witness = "eigenvalue " + f_.to_string(e.values[i]);
    }
    return o;
  });
  check("eigen.dual_pairing", [&] {
    Outcome o;
    if (!need_diag(o)) return o;
    const auto& e = ws_->eigen();
    for (std::size_t k = 0; k < d; ++k) {
      auto lam_inv = f_.inv(e.values[e.u_value[k]]);
      if (nu_apply(e.v[k]) != scaled(e.v[k], lam_inv)) o.witness = "v_" + std::to_string(k) + " not in A_{1/lambda}";
      for (std::size_t l = 0; l < d; ++l, ++o.instances) {
        auto p = fr_->pair(f_, e.v[k], e.u[l]);
        if (!f_.eq(p, k == l ? f_.one() : f_.zero()))
          o.witness = "<v_" + std::to_string(k) + ", u_" + std::to_string(l) + ">";
      }
    }
    return o;
  });
  check("eigen.product_grading", [&] {
    Outcome o;
    if (!need_diag(o)) return o;
    const auto& e = ws_->eigen();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j, ++o.instances) {
        auto p = a_.mul(e.u[i], e.u[j]);
        auto lam = f_.mul(e.values[e.u_value[i]], e.values[e.u_value[j]]);
        if (nu_apply(p) != scaled(p, lam)) o.witness = "u_" + std::to_string(i) + " u_" + std::to_string(j);
      }
    return o;
  });
  check("norm.basis_independence", [&] {
    Outcome o;
    if (!need_diag(o)) return o;
    std::vector<DenseVec<F>> u, v;
    for (std::size_t i = 0; i < d; ++i) {
      DenseVec<F> b(d, f_.zero());
      b[i] = f_.one();
      u.push_back(b);
      v.push_back(fr_->dual_vector(f_, i));
    }
    o.instances = 1;
    const auto& e = ws_->eigen();
    if (!dense_equal(f_, norm_map_std(a_, u, v), norm_map_std(a_, e.u, e.v))) o.witness = "eigen dual bases";
    return o;
  });
}

template <class F>
void Suite<F>::complexes() {
  const std::size_t d = a_.dim();
  check("complex.d_squared", [&] {
    Outcome o;
    if (!need_ws(o)) return o;
    auto& cx = cc_->complex();
    for (int r = opt_.lo - 1; r < opt_.hi; ++r, ++o.instances)
      if (!composes_to_zero(f_, cx.differential(r + 1), cx.differential(r))) {
        o.witness = "degree " + std::to_string(r);
        break;
      }
    return o;
  });
  check("complex.hh0_oracle", [&] {
    Outcome o;
    if (!need_ws(o)) return o;
    // center: kernel of z -> (z b_i - b_i z)_i
    std::vector<std::tuple<std::uint32_t, std::uint32_t, E>> t;
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) {
        for (auto& [p, neg] : {std::pair{&a_.product(j, i), false}, std::pair{&a_.product(i, j), true}})
          for (std::size_t k = 0; k < p->nnz(); ++k)
            t.emplace_back(std::uint32_t(i * d + p->idx[k]), std::uint32_t(j), neg ? f_.neg(p->val[k]) : p->val[k]);
      }
    auto center = kernel(f_, SparseMatrix<F>::from_triplets(f_, d * d, d, t)).dim();
    std::vector<DenseVec<F>> u, v;
    for (std::size_t i = 0; i < d; ++i) {
      DenseVec<F> b(d, f_.zero());
      b[i] = f_.one();
      u.push_back(b);
      v.push_back(fr_->dual_vector(f_, i));
    }
    auto norm = rank(f_, to_sparse(f_, norm_map_std(a_, u, v)));
    o.instances = 1;
    auto got = cc_->complex().cohomology_dim(0);
    if (got != center - norm)
      o.witness = "dim Z(A) - rank mu = " + std::to_string(center - norm) + ", complex gives " + std::to_string(got);
    return o;
  });
  check("complex.hh_minus1_oracle", [&] {
    Outcome o;
    if (!need_ws(o)) return o;
    std::vector<DenseVec<F>> u, v;
    std::vector<SparseVec<F>> comm;
    for (std::size_t i = 0; i < d; ++i) {
      DenseVec<F> b(d, f_.zero());
      b[i] = f_.one();
      u.push_back(b);
      v.push_back(fr_->dual_vector(f_, i));
    }
    // boundaries of C_1(A, A_{nu^-1}): m nu^{-1}(a) - a m
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        auto x = a_.mul(u[i], dense_apply(f_, fr_->nu_inv, u[j]));
        auto y = a_.mul(u[j], u[i]);
        for (std::size_t k = 0; k < d; ++k) x[k] = f_.sub(x[k], y[k]);
        comm.push_back(to_sparse(f_, x));
      }
    auto ker = d - rank(f_, to_sparse(f_, norm_map_std(a_, u, v)));
    auto bnd = Subspace<F>(f_, d, comm).dim();
    o.instances = 1;
    auto got = cc_->complex().cohomology_dim(-1);
    if (got != ker - bnd)
      o.witness = "dim Ker mu - dim boundaries = " + std::to_string(ker - bnd) + ", complex gives " + std::to_string(got);
    return o;
  });
  check("complex.eigencomponent_vanishing", [&] {
    Outcome o;
    if (!need_diag(o)) return o;
    auto one = ws_->chars().id(f_.one());
    for (int r = opt_.lo; r <= opt_.hi; ++r)
      for (auto [ch, n] : cc_->complex().cohomology_by_char(r)) {
        ++o.instances;
        if (ch != one && n != 0)
          o.witness = "degree " + std::to_string(r) + ", eigenvalue " + f_.to_string(ws_->chars().value(ch));
      }
    return o;
  });
  check("theta.duality_dims", [&] {
    Outcome o;
    if (!need_ws(o)) return o;
    auto reg = std::make_shared<const Bimodule<F>>(ws_->regular());
    auto tw = std::make_shared<const Bimodule<F>>(ws_->twisted(ws_->nu()));
    auto co = cochain_complex(ws_, reg, opt_.budget);
    auto ch = chain_complex(ws_, tw, opt_.budget);
    for (int r = 0; r <= std::min(opt_.hi, 2); ++r, ++o.instances)
      if (co.cohomology_dim(r) != ch.cohomology_dim(-r)) o.witness = "degree " + std::to_string(r);
    return o;
  });
  check("theta.inverse", [&] {
    Outcome o;
    if (!need_ws(o)) return o;
    for (int r = 0; r <= 2; ++r, ++o.instances) {
      auto p = theta_matrix(*ws_, r).multiply(f_, theta_inverse_matrix(*ws_, r));
      if (!matrices_equal(f_, p, SparseMatrix<F>::identity(f_, p.rows()))) o.witness = "degree " + std::to_string(r);
    }
    return o;
  });
}

template <class F>
void Suite<F>::products() {
  const int R = opt_.product_radius;
  std::uniform_int_distribution<int> deg(-R, R);
  auto diff_is_coboundary = [&](int r, const SparseVec<F>& x, const SparseVec<F>& y, const E& c) {
    return cc_->complex().is_coboundary(r, axpy(f_, cc_->dim(r), x, y, f_.neg(c)));
  };
  check("star.unit", [&] {
    Outcome o;
    if (!need_ws(o)) return o;
    auto one = unit_cochain(*ws_);
    for (int r = -R; r <= R; ++r, ++o.instances) {
      auto x = random_class(r);
      if (!diff_is_coboundary(r, star(*ws_, 0, one, r, x), x, f_.one()) ||
          !diff_is_coboundary(r, star(*ws_, r, x, 0, one), x, f_.one()))
        o.witness = degrees({r});
    }
    return o;
  });
  check("star.graded_commutative", [&] {
    Outcome o;
    if (!need_ws(o)) return o;
    for (int k = 0; k < opt_.trials; ++k, ++o.instances) {
      int a = deg(rng_), b = deg(rng_);
      auto x = random_class(a), y = random_class(b);
      E s = (a * b) % 2 ? f_.neg(f_.one()) : f_.one();
      if (!diff_is_coboundary(a + b, star(*ws_, a, x, b, y), star(*ws_, b, y, a, x), s)) {
        o.witness = degrees({a, b});
        break;
      }
    }
    return o;
  });
  check("star.associative", [&] {
    Outcome o;
    if (!need_ws(o)) return o;
    for (int k = 0; k < opt_.trials; ++k, ++o.instances) {
      auto [a, b, c] = triple();
      auto x = random_class(a), y = random_class(b), z = random_class(c);
      auto l = star(*ws_, a + b, star(*ws_, a, x, b, y), c, z);
      auto r = star(*ws_, a, x, b + c, star(*ws_, b, y, c, z));
      if (!diff_is_coboundary(a + b + c, l, r, f_.one())) {
        o.witness = degrees({a, b, c});
        break;
      }
    }
    return o;
  });
  check("star.leibniz", [&] {
    Outcome o;
    if (!need_ws(o)) return o;
    o.instances = std::size_t((2 * R + 1) * (2 * R + 1));
    auto bad = star_leibniz_audit(*cc_, -R, R, opt_.seed);
    if (!bad.empty()) o.witness = degrees({bad.front().first, bad.front().second});
    return o;
  });
  check("star.sg_cocycle_closure", [&] {
    Outcome o;
    if (!need_ws(o)) return o;
    // bracket of cocycles with Omega coefficients is a cocycle
    auto om1 = omega_module(*ws_, 1, opt_.budget);
    auto cx1 = cochain_complex(ws_, om1.bimodule, opt_.budget);
    for (int m = 1; m <= 2; ++m)
      for (int n = 1; n <= 2; ++n) {
        auto reps_m = cx1.representatives(m);
        auto reps_n = cc_->complex().representatives(n);
        if (reps_m.empty() || reps_n.empty()) continue;
        ++o.instances;
        auto f = sg_from_omega_coords(*ws_, m, reps_m.front(), om1);
        auto g = sg_from_cochain(*ws_, n, reps_n.front());
        auto b = sg_bracket(*ws_, f, g);
        auto om = omega_module(*ws_, b.p, opt_.budget);
        auto cx = cochain_complex(ws_, om.bimodule, opt_.budget);
        if (!cx.is_cocycle(b.m, sg_to_omega_coords(*ws_, b, om))) o.witness = degrees({m, n});
      }
    return o;
  });
}

template <class F>
void Suite<F>::bv() {
  const int R = opt_.product_radius;
  std::uniform_int_distribution<int> deg(-R, R);
  check("connes.homotopy", [&] {
    Outcome o;
    if (!need_ws(o)) return o;
    const auto id = dense_identity(f_, ws_->dim());
    for (const auto* s : {&id, &ws_->nu(), &ws_->nu_inv()}) {
      auto ch = chain_complex(ws_, std::make_shared<const Bimodule<F>>(ws_->twisted(*s)), opt_.budget);
      for (int r = 0; r <= 1; ++r) {
        const std::size_t n = int_pow(ws_->rdim(), r) * ws_->dim();
        for (std::size_t j = 0; j < n; ++j, ++o.instances) {
          auto e = unit_vec(f_, j);
          auto lhs = ch.differential(-(r + 1)).apply(f_, connes_twisted(*ws_, *s, r, e));
          if (r > 0) lhs = axpy(f_, n, lhs, connes_twisted(*ws_, *s, r - 1, ch.differential(-r).apply(f_, e)), f_.one());
          // -(e - T e)
          auto rhs = axpy(f_, n, twist_T(*ws_, *s, r, e), e, f_.neg(f_.one()));
          if (!axpy(f_, n, lhs, rhs, f_.neg(f_.one())).empty()) {
            o.witness = "chain length " + std::to_string(r) + ", basis " + std::to_string(j);
            return o;
          }
        }
      }
    }
    return o;
  });
  check("connes.square_unit_component", [&] {
    Outcome o;
    if (!need_diag(o)) return o;
    auto& cx = cc_->complex();
    auto one = ws_->chars().id(f_.one());
    for (int len = 0; len <= 1; ++len)
      for (auto& z : cx.representatives(-len - 1)) {
        ++o.instances;
        auto p = cc_->project(-len - 1, z, one);
        auto bb = connes_twisted(*ws_, ws_->nu_inv(), len + 1, connes_twisted(*ws_, ws_->nu_inv(), len, p));
        if (!cx.is_coboundary(-len - 3, bb)) o.witness = "chain length " + std::to_string(len);
      }
    return o;
  });
  check("delta_nu.dual", [&] {
    Outcome o;
    if (!need_ws(o)) return o;
    for (int r = 1; r <= 2; ++r, ++o.instances) {
      auto bt = connes_matrix(*ws_, ws_->nu(), r - 1).transpose();
      auto via = theta_matrix(*ws_, r - 1).multiply(f_, bt.multiply(f_, theta_inverse_matrix(*ws_, r)));
      if (!matrices_equal(f_, delta_nu_matrix(*ws_, r), via)) o.witness = "degree " + std::to_string(r);
    }
    return o;
  });
  check("bv.delta_squared", [&] {
    Outcome o;
    if (!need_diag(o)) return o;
    auto t = bv_table(*cc_, opt_.lo, opt_.hi);
    for (int r = opt_.lo + 1; r <= opt_.hi; ++r, ++o.instances) {
      auto sq = dense_mul(f_, t.delta.at(r - 1), t.delta.at(r));
      for (auto& x : sq.a)
        if (!f_.is_zero(x)) o.witness = "degree " + std::to_string(r);
    }
    return o;
  });
  check("bv.degree_zero", [&] {
    Outcome o;
    if (!need_diag(o)) return o;
    for (auto& x : cc_->complex().representatives(0)) {
      ++o.instances;
      if (!cc_->complex().is_coboundary(-1, bv_delta(*cc_, 0, x))) o.witness = "class of degree 0";
    }
    return o;
  });
  check("bv.seven_term", [&] {
    Outcome o;
    if (!need_diag(o)) return o;
    for (int k = 0; k < opt_.trials; ++k, ++o.instances) {
      auto [a, b, c] = triple();
      auto x = random_class(a), y = random_class(b), z = random_class(c);
      if (!verify_bv_identity(*cc_, a, x, b, y, c, z).holds) {
        o.witness = degrees({a, b, c});
        break;
      }
    }
    return o;
  });
  check("bv.bracket_antisymmetry", [&] {
    Outcome o;
    if (!need_diag(o)) return o;
    for (int k = 0; k < opt_.trials; ++k, ++o.instances) {
      int a = deg(rng_), b = deg(rng_);
      auto x = random_class(a), y = random_class(b);
      // {x, y} = -(-1)^{(a-1)(b-1)} {y, x}
      E s = ((a - 1) * (b - 1)) % 2 ? f_.one() : f_.neg(f_.one());
      int r = a + b - 1;
      auto l = bv_bracket(*cc_, a, x, b, y), rr = bv_bracket(*cc_, b, y, a, x);
      if (!cc_->complex().is_coboundary(r, axpy(f_, cc_->dim(r), l, rr, f_.neg(s)))) {
        o.witness = degrees({a, b});
        break;
      }
    }
    return o;
  });
  check("bv.gerstenhaber_agreement", [&] {
    Outcome o;
    if (!need_diag(o)) return o;
    for (int m = 1; m <= 2; ++m)
      for (int n = 1; n <= 2; ++n) {
        if (m + n - 1 > opt_.hi) continue;
        ++o.instances;
        auto x = random_class(m), y = random_class(n);
        auto diff = axpy(f_, cc_->dim(m + n - 1), bv_bracket(*cc_, m, x, n, y), gerstenhaber_bracket(*ws_, m, x, n, y),
                         f_.neg(f_.one()));
        if (!cc_->complex().is_coboundary(m + n - 1, diff)) o.witness = degrees({m, n});
      }
    return o;
  });
}

template <class F>
void Suite<F>::presets() {
  auto gate = [&](Outcome& o) {
    if (!preset_) {
      o = Outcome::skipped("not a preset algebra");
      return false;
    }
    try {
      check_admissible(f_, *preset_);
    } catch (const Error& e) {
      o = Outcome::skipped(e.what());
      return false;
    }
    return true;
  };
  check("preset.exact", [&] {
    Outcome o;
    if (!gate(o)) return o;
    PresetResolution<F> res(f_, *preset_);
    if (rank(f_, res.phi(0)) != res.algebra().dim()) o.witness = "P_0 -> A not onto";
    for (int m = 0; m <= 2 * preset_data(*preset_).period + 1; ++m, ++o.instances) {
      auto lo = res.phi(m), hi = res.phi(m + 1);
      if (!composes_to_zero(f_, lo, hi) || rank(f_, hi) + rank(f_, lo) != res.projective_dim(m))
        o.witness = "P_" + std::to_string(m);
    }
    return o;
  });
  check("preset.d_squared", [&] {
    Outcome o;
    if (!gate(o)) return o;
    PresetResolution<F> res(f_, *preset_);
    for (int r = -13; r <= 12; ++r, ++o.instances)
      if (!composes_to_zero(f_, res.differential(r + 1), res.differential(r))) o.witness = "degree " + std::to_string(r);
    return o;
  });
  check("preset.cross_validate", [&] {
    Outcome o;
    if (!gate(o)) return o;
    auto rep = cross_validate(f_, *preset_, opt_.lo, opt_.hi, opt_.budget, true);
    o.instances = rep.bar.size();
    if (!rep.match()) {
      int r = rep.mismatches.front();
      o.witness = "degree " + std::to_string(r) + ": preset " + std::to_string(rep.preset[r]) + ", bar " +
                  std::to_string(rep.bar[r]);
    }
    return o;
  });
}

template <class F>
VerifyReport Suite<F>::run() {
  field_linalg();
  algebra_form();
  eigen();
  complexes();
  products();
  bv();
  presets();
  return std::move(rep_);
}

}  // namespace

template <class F>
VerifyReport run_verify(const Algebra<F>& a, const DenseMatrix<F>& gram, std::optional<Preset> preset,
                        const VerifyOptions& opt) {
  if (opt.lo > opt.hi) fail(ErrorKind::DegreeOutOfWindow, "empty window");
  Suite<F> s(a, gram, preset, opt);
  return s.run();
}

template VerifyReport run_verify<PrimeField>(const Algebra<PrimeField>&, const DenseMatrix<PrimeField>&,
                                             std::optional<Preset>, const VerifyOptions&);
template VerifyReport run_verify<ExtField>(const Algebra<ExtField>&, const DenseMatrix<ExtField>&,
                                           std::optional<Preset>, const VerifyOptions&);
template VerifyReport run_verify<RationalField>(const Algebra<RationalField>&, const DenseMatrix<RationalField>&,
                                                std::optional<Preset>, const VerifyOptions&);

}  // namespace frobhh
