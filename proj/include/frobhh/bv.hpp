#pragma once

#include <functional>
#include <map>

#include "frobhh/products.hpp"

namespace frobhh {

// B^sigma_r : C_r(A, A_sigma) -> C_{r+1}(A, A_sigma), sigma in working coordinates.
template <class F>
SparseVec<F> connes_twisted(const Workspace<F>& ws, const DenseMatrix<F>& sigma, int r, const SparseVec<F>& z);
// T(a0 (x) a_1..a_r) = sigma(a0) (x) sigma(a_1)..sigma(a_r)
template <class F>
SparseVec<F> twist_T(const Workspace<F>& ws, const DenseMatrix<F>& sigma, int r, const SparseVec<F>& z);
template <class F>
SparseMatrix<F> connes_matrix(const Workspace<F>& ws, const DenseMatrix<F>& sigma, int r);
template <class F>
SparseMatrix<F> twist_matrix(const Workspace<F>& ws, const DenseMatrix<F>& sigma, int r);

// Delta^nu_r : C^r(A, A) -> C^{r-1}(A, A), r >= 1, solved through the form.
template <class F>
SparseVec<F> delta_nu(const Workspace<F>& ws, int r, const SparseVec<F>& f);
template <class F>
SparseMatrix<F> delta_nu_matrix(const Workspace<F>& ws, int r);

// Sign in front of B^{nu^-1}_{-r-1} in negative degrees r: (-1)^r or (-1)^{-r-1}.
// Only the second satisfies the seven-term identity with the star product.
enum class NegativeSign { PowR, PowChainLength };
inline constexpr NegativeSign kNegativeSign = NegativeSign::PowChainLength;

// Chain-level Delta-hat on D^r, no projection.
template <class F>
SparseVec<F> delta_hat_chain(const Workspace<F>& ws, int r, const SparseVec<F>& x,
                             NegativeSign sign = kNegativeSign);

// Delta-hat on a cocycle: projects to the (1)-component (the rest must be a coboundary,
// ValidationFailure otherwise) and applies the chain-level operator.
template <class F>
SparseVec<F> bv_delta(CompleteComplex<F>& cc, int r, const SparseVec<F>& x, NegativeSign sign = kNegativeSign);

// Part of a cocycle in the (1)-component, after checking the rest is a coboundary.
template <class F>
SparseVec<F> unit_component(CompleteComplex<F>& cc, int r, const SparseVec<F>& x);

template <class F>
SparseVec<F> bv_bracket(CompleteComplex<F>& cc, int a, const SparseVec<F>& x, int b, const SparseVec<F>& y,
                        NegativeSign sign = kNegativeSign);

template <class F>
struct BvCheck {
  bool holds = false;
  int degree = 0;
  SparseVec<F> residual;  // cocycle in D^degree
};

// Seven-term identity for Delta-hat with the star product.
template <class F>
BvCheck<F> verify_bv_identity(CompleteComplex<F>& cc, int a, const SparseVec<F>& x, int b, const SparseVec<F>& y,
                              int c, const SparseVec<F>& z, NegativeSign sign = kNegativeSign);

// Matrices of Delta-hat_r : H^r -> H^{r-1} on the representative bases, r in [lo, hi].
template <class F>
struct BvTable {
  int lo = 0, hi = 0;
  std::map<int, DenseMatrix<F>> delta;
};
template <class F>
BvTable<F> bv_table(CompleteComplex<F>& cc, int lo, int hi, NegativeSign sign = kNegativeSign);

}  // namespace frobhh
