#pragma once

#include <memory>
#include <random>

#include "frobhh/hochschild.hpp"

namespace testing {

using namespace frobhh;

template <class F>
std::shared_ptr<const Workspace<F>> nakayama_ws(const F& f, int s, int n) {
  QuiverPresentation q{s, n};
  auto a = build_algebra(f, q);
  auto fr = socle_trace_form(a, nakayama_socle(q));
  return std::make_shared<const Workspace<F>>(a, fr);
}

// Random vector with roughly the given fraction of nonzero entries.
template <class F>
SparseVec<F> random_vec(const F& f, std::size_t n, std::mt19937& rng, double density = 0.5) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> c(1, 6);
  SparseVec<F> v;
  for (std::size_t i = 0; i < n; ++i)
    if (u(rng) < density) {
      auto x = f.from_int(c(rng));
      if (!f.is_zero(x)) v.push(std::uint32_t(i), x);
    }
  return v;
}

template <class F>
SparseVec<F> combine(const F& f, std::size_t n, const SparseVec<F>& a, long ca, const SparseVec<F>& b, long cb) {
  Accumulator<F> acc(f, n);
  for (std::size_t k = 0; k < a.nnz(); ++k) acc.add_mul(a.idx[k], a.val[k], f.from_int(ca));
  for (std::size_t k = 0; k < b.nnz(); ++k) acc.add_mul(b.idx[k], b.val[k], f.from_int(cb));
  return acc.take();
}

template <class F>
SparseVec<F> scaled(const F& f, const SparseVec<F>& a, const typename F::Elem& c) {
  SparseVec<F> out;
  if (f.is_zero(c)) return out;
  for (std::size_t k = 0; k < a.nnz(); ++k) out.push(a.idx[k], f.mul(a.val[k], c));
  return out;
}

template <class F>
bool same(const F& f, std::size_t n, const SparseVec<F>& a, const SparseVec<F>& b) {
  return combine(f, n, a, 1, b, -1).empty();
}

}  // namespace testing
