#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frobhh/linalg.hpp"

namespace frobhh {

// Finite-dimensional associative unital algebra given by structure constants.
template <class F>
class Algebra {
 public:
  using E = typename F::Elem;

  Algebra() = default;
  // table[i * d + j] = basis_i * basis_j
  Algebra(F field, std::vector<std::string> labels, std::vector<SparseVec<F>> table, DenseVec<F> unit,
          std::vector<int> weights = {});

  const F& field() const { return f_; }
  std::size_t dim() const { return d_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const SparseVec<F>& product(std::size_t i, std::size_t j) const { return table_[i * d_ + j]; }
  const DenseVec<F>& unit() const { return unit_; }
  // Path-length style grading (all zero when absent).
  const std::vector<int>& weights() const { return weights_; }
  bool graded() const { return graded_; }

  DenseVec<F> mul(const DenseVec<F>& a, const DenseVec<F>& b) const;
  DenseMatrix<F> left_matrix(const DenseVec<F>& a) const;

  // First basis triple violating associativity, if any.
  std::optional<std::array<std::size_t, 3>> associativity_witness() const;
  std::optional<std::size_t> unit_witness() const;
  void validate() const;  // throws NonAssociative

 private:
  F f_{};
  std::size_t d_ = 0;
  std::vector<std::string> labels_;
  std::vector<SparseVec<F>> table_;
  DenseVec<F> unit_;
  std::vector<int> weights_;
  bool graded_ = false;
};

// Cyclic quiver with s vertices modulo paths of length N.
struct QuiverPresentation {
  int vertices = 1;
  int radical_power = 2;

  struct Path {
    int start;  // 0-based vertex
    int length;
  };
  std::vector<Path> basis() const;  // ordered by length, then start
  int index_of(int start, int length) const;
  std::string label(const Path& p) const;
};

template <class F>
Algebra<F> build_algebra(const F& f, const QuiverPresentation& q);

// Frobenius form data; u_i is the standard basis.
template <class F>
struct Frobenius {
  DenseMatrix<F> gram;     // gram(i, j) = <b_i, b_j>
  DenseMatrix<F> dual;     // column i holds v_i, <v_i, b_j> = delta_ij
  DenseMatrix<F> nu;       // nu(x) = sum <x, v_i> u_i
  DenseMatrix<F> nu_inv;   // nu^{-1}(x) = sum <u_i, x> v_i
  int socle_degree = 0;    // weight D with <x, y> != 0 only when wt x + wt y = D
  bool homogeneous = false;

  typename F::Elem pair(const F& f, const DenseVec<F>& x, const DenseVec<F>& y) const;
  DenseVec<F> dual_vector(const F& f, std::size_t i) const;
};

template <class F>
Frobenius<F> frobenius_from_gram(const Algebra<F>& a, const DenseMatrix<F>& gram);  // throws DegenerateForm

template <class F>
Frobenius<F> socle_trace_form(const Algebra<F>& a, const std::vector<std::size_t>& socle);

std::vector<std::size_t> nakayama_socle(const QuiverPresentation& q);

template <class F>
std::optional<std::array<std::size_t, 3>> form_associativity_witness(const Algebra<F>& a, const DenseMatrix<F>& gram);

template <class F>
std::optional<std::array<std::size_t, 2>> nakayama_relation_witness(const Algebra<F>& a, const Frobenius<F>& fr);

template <class F>
std::optional<std::array<std::size_t, 2>> automorphism_witness(const Algebra<F>& a, const DenseMatrix<F>& sigma);

// Casimir identities; returns a description of the first failure.
template <class F>
std::optional<std::string> casimir_failure(const Algebra<F>& a, const Frobenius<F>& fr);

template <class F>
struct EigenData {
  bool diagonalizable = false;
  std::vector<typename F::Elem> values;          // eigenvalue 1 first when present
  std::vector<std::vector<DenseVec<F>>> bases;   // eigenbasis of A_lambda per value
  // Concatenated eigenbasis u and its dual v under the form; v_j lies in A_{lambda^{-1}}.
  std::vector<DenseVec<F>> u, v;
  std::vector<std::size_t> u_value;              // index into values per u_j
};

template <class F>
EigenData<F> eigendecompose(const Algebra<F>& a, const Frobenius<F>& fr);

// Registry of eigen-characters with memoised products.
template <class F>
class CharTable {
 public:
  using E = typename F::Elem;
  explicit CharTable(const F& f) : f_(f) { id(f.one()); }
  std::uint32_t id(const E& v);
  const E& value(std::uint32_t id) const { return vals_[id]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b);
  std::uint32_t inv(std::uint32_t a);
  std::size_t size() const { return vals_.size(); }

 private:
  F f_;
  std::vector<E> vals_;
  std::map<E, std::uint32_t> ids_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> mul_;
  std::map<std::uint32_t, std::uint32_t> inv_;
};

// Bimodule over the working basis of a workspace, with actions tabulated per basis pair.
template <class F>
struct Bimodule {
  std::size_t dim = 0;
  std::size_t adim = 0;
  std::vector<SparseVec<F>> left;   // left[a * dim + m] = w_a . m
  std::vector<SparseVec<F>> right;  // right[a * dim + m] = m . w_a
  // Optional homogeneous grading of the module basis.
  std::vector<int> weight;
  std::vector<std::uint32_t> character;

  const SparseVec<F>& l(std::size_t a, std::size_t m) const { return left[a * dim + m]; }
  const SparseVec<F>& r(std::size_t a, std::size_t m) const { return right[a * dim + m]; }
  bool graded() const { return !weight.empty(); }
};

// The algebra in a working basis w_0 = 1_A, w_1..w_{d-1}; the reduced space is spanned by
// the classes of w_1..w_{d-1}. With diagonalizable nu the working basis consists of
// homogeneous eigenvectors, otherwise it is the input basis with one unit coordinate
// replaced by 1_A.
template <class F>
class Workspace {
 public:
  using E = typename F::Elem;

  Workspace(Algebra<F> algebra, Frobenius<F> frob);

  const F& field() const { return alg_.field(); }
  const Algebra<F>& algebra() const { return alg_; }
  const Frobenius<F>& frobenius() const { return fr_; }
  const EigenData<F>& eigen() const { return eig_; }
  bool diagonalizable() const { return eig_.diagonalizable; }
  bool graded() const { return graded_; }
  std::size_t dim() const { return d_; }
  std::size_t rdim() const { return d_ - 1; }

  // working-basis structure
  const SparseVec<F>& mul(std::size_t i, std::size_t j) const { return table_[i * d_ + j]; }
  // pi(w_{x+1} w_{y+1}) in reduced coordinates
  const SparseVec<F>& merge(std::size_t x, std::size_t y) const { return merge_[x * (d_ - 1) + y]; }
  // (x, y, c) with coefficient c of reduced index k in merge(x, y)
  struct MergeSource {
    std::uint32_t x, y;
    E c;
  };
  const std::vector<MergeSource>& merge_sources(std::size_t k) const { return merge_src_[k]; }
  int weight(std::size_t i) const { return wt_[i]; }
  std::uint32_t character(std::size_t i) const { return ch_[i]; }
  const E& eigenvalue(std::size_t i) const { return lam_[i]; }
  int socle_degree() const { return fr_.socle_degree; }
  CharTable<F>& chars() const { return chars_; }

  const DenseMatrix<F>& gram() const { return gram_w_; }  // <w_i, w_j>
  const SparseVec<F>& dual(std::size_t i) const { return dual_w_[i]; }  // v_i, dual to u_i = w_i
  const DenseMatrix<F>& nu() const { return nu_w_; }
  const DenseMatrix<F>& nu_inv() const { return nu_inv_w_; }
  const E& trace(std::size_t i) const { return gram_w_(i, 0); }  // <w_i, 1>

  // change of basis: to_std(x) = P x
  const DenseMatrix<F>& to_std_matrix() const { return p_; }
  const DenseMatrix<F>& from_std_matrix() const { return pinv_; }
  DenseVec<F> to_std(const DenseVec<F>& x) const { return dense_apply(field(), p_, x); }
  DenseVec<F> from_std(const DenseVec<F>& x) const { return dense_apply(field(), pinv_, x); }

  DenseVec<F> mul(const DenseVec<F>& a, const DenseVec<F>& b) const;
  SparseVec<F> mul(const SparseVec<F>& a, const SparseVec<F>& b) const;
  E pair(const SparseVec<F>& x, const SparseVec<F>& y) const;
  SparseVec<F> apply(const DenseMatrix<F>& m, const SparseVec<F>& x) const;

  // A, A_sigma (m . a = m sigma(a)) and related bimodules in working coordinates.
  Bimodule<F> regular() const;
  Bimodule<F> twisted(const DenseMatrix<F>& sigma_w) const;

 private:
  Algebra<F> alg_;
  Frobenius<F> fr_;
  EigenData<F> eig_;
  std::size_t d_;
  bool graded_ = false;
  DenseMatrix<F> p_, pinv_;
  std::vector<SparseVec<F>> table_, merge_;
  std::vector<std::vector<MergeSource>> merge_src_;
  std::vector<int> wt_;
  std::vector<std::uint32_t> ch_;
  std::vector<E> lam_;
  mutable CharTable<F> chars_;
  DenseMatrix<F> gram_w_, nu_w_, nu_inv_w_;
  std::vector<SparseVec<F>> dual_w_;
};

// mu(m) = sum u_i m v_i with the actions of M (M untwisted).
template <class F>
SparseMatrix<F> norm_map(const Workspace<F>& ws, const Bimodule<F>& m);
// Same map computed from an arbitrary pair of dual bases (standard coordinates in, out).
template <class F>
DenseMatrix<F> norm_map_std(const Algebra<F>& a, const std::vector<DenseVec<F>>& u, const std::vector<DenseVec<F>>& v);

template <class F>
std::optional<std::array<std::size_t, 2>> actions_commute_witness(const Workspace<F>& ws, const Bimodule<F>& m);

}  // namespace frobhh
