#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "frobhh/hochschild.hpp"

namespace frobhh {

// Elements of D^r use CompleteComplex coordinates: index rank(t) * d + coefficient, with
// cochains C^r(A, A) for r >= 0 and chains C_{-r-1}(A, A_{nu^-1}) for r <= -1.

template <class F>
SparseVec<F> unit_cochain(const Workspace<F>& ws);

template <class F>
SparseVec<F> cup(const Workspace<F>& ws, int m, const SparseVec<F>& f, int n, const SparseVec<F>& g);

// z in C_p(A, A_{nu^-1}), f in C^m(A, A), p >= m; result in C_{p-m}(A, A_{nu^-1}).
template <class F>
SparseVec<F> cap(const Workspace<F>& ws, int p, const SparseVec<F>& z, int m, const SparseVec<F>& f);

template <class F>
SparseVec<F> circle(const Workspace<F>& ws, int m, const SparseVec<F>& f, int n, const SparseVec<F>& g);
template <class F>
SparseVec<F> gerstenhaber_bracket(const Workspace<F>& ws, int m, const SparseVec<F>& f, int n,
                                  const SparseVec<F>& g);

// Which of the four product formulas applies to degrees (a, b): 1 cochain-cochain,
// 2 result is a chain, 3 mixed with cochain result, 4 chain-chain.
int star_case(int a, int b);

// Global sign put in front of each literal formula so that
// d(x * y) = dx * y + (-1)^a x * dy holds on the chain level.
int star_sign(int a, int b);

template <class F>
SparseVec<F> star_raw(const Workspace<F>& ws, int a, const SparseVec<F>& x, int b, const SparseVec<F>& y);
template <class F>
SparseVec<F> star(const Workspace<F>& ws, int a, const SparseVec<F>& x, int b, const SparseVec<F>& y);

// Degree pairs in [lo, hi]^2 where the chain-level Leibniz rule fails on random inputs.
template <class F>
std::vector<std::pair<int, int>> star_leibniz_audit(CompleteComplex<F>& cc, int lo, int hi, std::uint64_t seed,
                                                    int trials = 2);

// Cochains with values in Omega^p, stored per tensor as vectors of the ambient space
// A (p = 0) or A (x) Abar^{p-1} (x) A, index (a0 * R^{p-1} + rank) * d + b.
template <class F>
struct SgCochain {
  int m = 0;  // cochain degree
  int p = 0;
  std::vector<SparseVec<F>> val;  // size R^m

  // Flattened coordinates rank(t) * ambient + v.
  SparseVec<F> flat(std::size_t ambient) const;
};

std::size_t bar_dim(std::size_t d, std::size_t R, int q);      // A (x) Abar^q (x) A
std::size_t omega_ambient(std::size_t d, std::size_t R, int p);  // A when p = 0

template <class F>
SgCochain<F> sg_from_cochain(const Workspace<F>& ws, int m, const SparseVec<F>& f);
template <class F>
SgCochain<F> sg_zero(const Workspace<F>& ws, int m, int p);

// Values in the coordinates of Omega's subspace basis; throws NotASubspace if a value leaves it.
template <class F>
SparseVec<F> sg_to_omega_coords(const Workspace<F>& ws, const SgCochain<F>& f, const OmegaModule<F>& om);
template <class F>
SgCochain<F> sg_from_omega_coords(const Workspace<F>& ws, int m, const SparseVec<F>& x, const OmegaModule<F>& om);

// d_q on Bar_q in the ambient coordinates above (target A when q = 0).
template <class F>
SparseVec<F> bar_apply(const Workspace<F>& ws, int q, const SparseVec<F>& x);

// Edge projections for p >= 1: (l) onto Abar^p (x) A [rank * d + b],
// (r) onto A (x) Abar^p [a0 * R^p + rank], (b) onto Abar^{p+1} [rank].
template <class F>
struct SgProjections {
  std::vector<SparseVec<F>> l, r, b;
};
template <class F>
SgProjections<F> sg_projections(const Workspace<F>& ws, const SgCochain<F>& f);

// Phi_{p+q}(x (x)_A y) for x in Omega^p, y in Omega^q (ambient coordinates).
template <class F>
SparseVec<F> phi_iso(const Workspace<F>& ws, int p, const SparseVec<F>& x, int q, const SparseVec<F>& y);

template <class F>
SgCochain<F> cup_sg(const Workspace<F>& ws, const SgCochain<F>& f, const SgCochain<F>& g);

// f bullet_i g for i in [1, m] or [-q, -1].
template <class F>
SgCochain<F> bullet(const Workspace<F>& ws, const SgCochain<F>& f, const SgCochain<F>& g, int i);
template <class F>
SgCochain<F> bullet_sum(const Workspace<F>& ws, const SgCochain<F>& f, const SgCochain<F>& g);
template <class F>
SgCochain<F> sg_bracket(const Workspace<F>& ws, const SgCochain<F>& f, const SgCochain<F>& g);

// theta_{k,p}(f)(a_1..a_{k+1}) = (-1)^k d_{p+1}(f(a_1..a_k) (x) a_{k+1} (x) 1)
template <class F>
SgCochain<F> theta_connecting(const Workspace<F>& ws, const SgCochain<F>& f);
// phi with the sign schedule of the modified inductive system; Tate degree f.m - f.p.
template <class F>
SgCochain<F> phi_connecting(const Workspace<F>& ws, const SgCochain<F>& f);
template <class F>
SgCochain<F> phi_power(const Workspace<F>& ws, const SgCochain<F>& f, int q);

// kappa_{r-1,p}: z in C_{r-1}(A, A_{nu^-1}) (degree -r, r >= 1) to C^p(A, Omega^{r+p}).
template <class F>
SgCochain<F> kappa(const Workspace<F>& ws, int r, const SparseVec<F>& z, int p);

}  // namespace frobhh
