#include <doctest.h>

#include "frobhh/hochschild.hpp"

using namespace frobhh;

namespace {

template <class F>
std::shared_ptr<const Workspace<F>> make_ws(const F& f, int s, int n) {
  QuiverPresentation q{s, n};
  auto a = build_algebra(f, q);
  auto fr = socle_trace_form(a, nakayama_socle(q));
  return std::make_shared<const Workspace<F>>(a, fr);
}

// dim of the center by brute force in the input basis
template <class F>
std::size_t center_dim(const Algebra<F>& a) {
  const F& f = a.field();
  std::size_t d = a.dim();
  // rows: (i, k) coefficient of z b_i - b_i z
  std::vector<std::tuple<std::uint32_t, std::uint32_t, typename F::Elem>> t;
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) {
      for (auto [idx, s] : {std::pair{&a.product(j, i), 1}, std::pair{&a.product(i, j), -1}})
        for (std::size_t k = 0; k < idx->nnz(); ++k)
          t.emplace_back(std::uint32_t(i * d + idx->idx[k]), std::uint32_t(j),
                         s > 0 ? idx->val[k] : f.neg(idx->val[k]));
    }
  auto m = SparseMatrix<F>::from_triplets(f, d * d, d, t);
  return kernel(f, m).dim();
}

// dim of span{a b - b a}
template <class F>
std::size_t commutator_dim(const Algebra<F>& a) {
  const F& f = a.field();
  std::size_t d = a.dim();
  std::vector<SparseVec<F>> span;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      DenseVec<F> v(d, f.zero());
      for (std::size_t k = 0; k < a.product(i, j).nnz(); ++k) v[a.product(i, j).idx[k]] = a.product(i, j).val[k];
      for (std::size_t k = 0; k < a.product(j, i).nnz(); ++k)
        v[a.product(j, i).idx[k]] = f.sub(v[a.product(j, i).idx[k]], a.product(j, i).val[k]);
      span.push_back(to_sparse(f, v));
    }
  return Subspace<F>(f, d, span).dim();
}

}  // namespace

TEST_CASE("tensor indices round-trip") {
  TensorIndex ti{3, 4};
  std::vector<std::uint32_t> t;
  for (std::size_t i = 0; i < ti.size(); ++i) {
    ti.unrank(i, t);
    CHECK(ti.rank(t) == i);
  }
  CHECK(make_key(-5, 7) != make_key(5, 7));
  CHECK(key_weight(make_key(-5, 7)) == -5);
  CHECK(key_char(make_key(-5, 7)) == 7);
}

TEST_CASE("bar differentials square to zero") {
  PrimeField f(5);
  auto ws = make_ws(f, 2, 2);
  for (int p = 1; p <= 5; ++p) CHECK(composes_to_zero(f, bar_differential(*ws, p - 1), bar_differential(*ws, p)));
  // Omega^1 = ker(multiplication), dim 16 - 4
  CHECK(rank(f, bar_differential(*ws, 1)) == 12);
  // d_1(1 (x) a (x) 1) = a (x) 1 - 1 (x) a for a = w_1
  auto d1 = bar_differential(*ws, 1);
  auto c = d1.column((0 * 3 + 0) * 4 + 0);
  REQUIRE(c.nnz() == 2);
  CHECK(c.idx[0] == 0 * 4 + 1);
  CHECK(c.val[0] == 4);
  CHECK(c.idx[1] == 1 * 4 + 0);
  CHECK(c.val[1] == 1);
}

TEST_CASE("Hochschild complexes in low degrees") {
  PrimeField f(5);
  auto ws = make_ws(f, 2, 2);
  auto reg = std::make_shared<const Bimodule<PrimeField>>(ws->regular());
  auto cc = cochain_complex(ws, reg);
  // [e1, p a1 + q a2] = p a1 - q a2, so Z(A) = k 1 and [A, A] = span{a1, a2}
  CHECK(center_dim(ws->algebra()) == 1);
  CHECK(cc.cohomology_dim(0) == center_dim(ws->algebra()));
  CHECK(cc.rank_out(0) == 3);
  auto ch = chain_complex(ws, reg);
  CHECK(ch.cohomology_dim(0) == 2);
  CHECK(ch.cohomology_dim(0) == 4 - commutator_dim(ws->algebra()));
  for (int r = 0; r <= 3; ++r) CHECK(composes_to_zero(f, cc.differential(r + 1), cc.differential(r)));
  for (int r = -4; r <= -1; ++r) CHECK(composes_to_zero(f, ch.differential(r + 1), ch.differential(r)));

  PrimeField f7(7);
  auto ws3 = make_ws(f7, 3, 3);
  auto reg3 = std::make_shared<const Bimodule<PrimeField>>(ws3->regular());
  auto cc3 = cochain_complex(ws3, reg3);
  CHECK(composes_to_zero(f7, cc3.differential(1), cc3.differential(0)));
  CHECK(cc3.cohomology_dim(0) == center_dim(ws3->algebra()));
}

TEST_CASE("graded and ungraded complexes agree") {
  PrimeField f(5);
  auto ws = make_ws(f, 2, 2);
  auto reg = std::make_shared<const Bimodule<PrimeField>>(ws->regular());
  auto graded = cochain_complex(ws, reg);
  REQUIRE(graded.graded());
  typename Complex<PrimeField>::Source s;
  s.kind = "flat";
  s.dim = [&](int r) { return graded.dim(r); };
  s.diff = [&](int r) { return graded.differential(r); };
  Complex<PrimeField> flat(f, s);
  for (int r = 0; r <= 4; ++r) CHECK(flat.cohomology_dim(r) == graded.cohomology_dim(r));
}

TEST_CASE("complete complex of the two-vertex algebra") {
  for (int which = 0; which < 2; ++which) {
    auto run = [&](auto f) {
      using F = decltype(f);
      auto ws = make_ws(f, 2, 2);
      CompleteComplex<F> cc(ws);
      auto& cx = cc.complex();
      for (int r = -4; r <= 4; ++r) CHECK(cx.cohomology_dim(r) == 1);
      for (int r = -4; r <= 3; ++r) CHECK(composes_to_zero(f, cx.differential(r + 1), cx.differential(r)));
      // positive degrees agree with Hochschild cohomology
      auto reg = std::make_shared<const Bimodule<F>>(ws->regular());
      auto hh = cochain_complex(ws, reg);
      for (int r = 1; r <= 4; ++r) CHECK(hh.cohomology_dim(r) == cx.cohomology_dim(r));
      // only the trivial character carries cohomology
      auto one = ws->chars().id(f.one());
      for (int r = -3; r <= 3; ++r) {
        auto by = cx.cohomology_by_char(r);
        CHECK(by.size() == 1);
        CHECK(by.begin()->first == one);
      }
      auto comp = cx.component(one);
      for (int r = -3; r <= 3; ++r) CHECK(comp.cohomology_dim(r) == cx.cohomology_dim(r));
      auto other = ws->chars().id(f.neg(f.one()));
      auto neg = cx.component(other);
      std::size_t total = 0;
      for (int r = -3; r <= 3; ++r) {
        CHECK(neg.cohomology_dim(r) == 0);
        total += comp.dim(r) + neg.dim(r);
        CHECK(comp.dim(r) + neg.dim(r) == cx.dim(r));
      }
      CHECK(total > 0);
    };
    if (which == 0) run(PrimeField(5));
    else run(RationalField());
  }
}

TEST_CASE("representatives and classification") {
  PrimeField f(5);
  auto ws = make_ws(f, 2, 2);
  CompleteComplex<PrimeField> cc(ws);
  auto& cx = cc.complex();
  for (int r = -3; r <= 3; ++r) {
    auto reps = cx.representatives(r);
    REQUIRE(reps.size() == 1);
    CHECK(cx.is_cocycle(r, reps[0]));
    CHECK_FALSE(cx.is_coboundary(r, reps[0]));
    auto c = cx.classify(r, reps[0]);
    CHECK(c == DenseVec<PrimeField>{1});
    // adding a coboundary keeps the class
    if (cx.dim(r - 1) > 0) {
      auto b = cx.differential(r - 1).column(0);
      Accumulator<PrimeField> acc(f, cx.dim(r));
      for (std::size_t k = 0; k < reps[0].nnz(); ++k) acc.add_mul(reps[0].idx[k], 3, reps[0].val[k]);
      for (std::size_t k = 0; k < b.nnz(); ++k) acc.add(b.idx[k], b.val[k]);
      CHECK(cx.classify(r, acc.take()) == DenseVec<PrimeField>{3});
      if (!b.empty()) CHECK(cx.is_coboundary(r, b));
    }
  }
}

TEST_CASE("degree zero and minus one closed forms") {
  // HH^0 = A^A / N(A), HH^-1 = ker(mu) / span{m nu^-1(a) - a m}, in the input basis
  auto check = [](auto f, int s, int n) {
    using F = decltype(f);
    auto ws = make_ws(f, s, n);
    const auto& a = ws->algebra();
    const auto& fr = ws->frobenius();
    std::size_t d = a.dim();
    std::vector<DenseVec<F>> u, v;
    for (std::size_t i = 0; i < d; ++i) {
      DenseVec<F> e(d, f.zero());
      e[i] = f.one();
      u.push_back(e);
      v.push_back(fr.dual_vector(f, i));
    }
    auto mu = to_sparse(f, norm_map_std(a, u, v));
    std::size_t z = center_dim(a);
    std::size_t n_img = rank(f, mu);
    std::size_t ker_mu = d - n_img;
    std::vector<SparseVec<F>> comm;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        auto nb = dense_apply(f, fr.nu_inv, u[j]);
        auto x = a.mul(u[i], nb), y = a.mul(u[j], u[i]);
        for (std::size_t k = 0; k < d; ++k) x[k] = f.sub(x[k], y[k]);
        comm.push_back(to_sparse(f, x));
      }
    std::size_t ia = Subspace<F>(f, d, comm).dim();
    CompleteComplex<F> cc(ws);
    CHECK(cc.complex().cohomology_dim(0) == z - n_img);
    CHECK(cc.complex().cohomology_dim(-1) == ker_mu - ia);
  };
  check(PrimeField(5), 2, 2);
  check(PrimeField(7), 3, 2);
  check(PrimeField(7), 3, 3);
  check(RationalField(), 1, 3);
}

TEST_CASE("theta duality") {
  PrimeField f(5);
  auto ws = make_ws(f, 2, 2);
  auto nu_mod = ws->twisted(ws->nu());
  for (int r = 0; r <= 2; ++r) {
    auto t = theta_matrix(*ws, r), ti = theta_inverse_matrix(*ws, r);
    auto id = SparseMatrix<PrimeField>::identity(f, t.rows());
    auto a = t.multiply(f, ti), b = ti.multiply(f, t);
    CHECK(a.to_dense(f) == id.to_dense(f));
    CHECK(b.to_dense(f) == id.to_dense(f));
    // delta^r Theta_r = Theta_{r+1} partial_{r+1}^T
    auto reg = ws->regular();
    auto lhs = cochain_differential(*ws, reg, r).multiply(f, t);
    auto rhs = theta_matrix(*ws, r + 1).multiply(f, chain_differential(*ws, nu_mod, r + 1).transpose());
    CHECK(lhs.to_dense(f) == rhs.to_dense(f));
  }
  auto wsp = ws;
  auto reg = std::make_shared<const Bimodule<PrimeField>>(ws->regular());
  auto nm = std::make_shared<const Bimodule<PrimeField>>(nu_mod);
  auto hc = cochain_complex(wsp, reg);
  auto hh = chain_complex(wsp, nm);
  for (int r = 0; r <= 3; ++r) CHECK(hc.cohomology_dim(r) == hh.cohomology_dim(-r));
}

TEST_CASE("Omega modules") {
  PrimeField f(5);
  auto ws = make_ws(f, 2, 2);
  auto o0 = omega_module(*ws, 0);
  CHECK(o0.space.dim() == 4);
  auto o1 = omega_module(*ws, 1);
  CHECK(o1.space.dim() == 12);
  auto o2 = omega_module(*ws, 2);
  CHECK(o2.space.dim() == 48 - 12);
  CHECK_FALSE(actions_commute_witness(*ws, *o2.bimodule));
  // Ext^1(A, Omega^2) matches the degree -1 complete cohomology
  auto c = cochain_complex(ws, o2.bimodule);
  CompleteComplex<PrimeField> cc(ws);
  CHECK(c.cohomology_dim(1) == cc.complex().cohomology_dim(-1));
  CHECK(c.cohomology_dim(1) == 1);
}

TEST_CASE("budget guard") {
  PrimeField f(5);
  auto ws = make_ws(f, 3, 3);
  CHECK_THROWS_AS(cochain_differential(*ws, ws->regular(), 6, 1000), Error);
  try {
    chain_differential(*ws, ws->regular(), 6, 1000);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
}
