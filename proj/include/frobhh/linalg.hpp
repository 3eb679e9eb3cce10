#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "frobhh/field.hpp"

namespace frobhh {

template <class F>
using DenseVec = std::vector<typename F::Elem>;

// Sorted (index, value) list without stored zeros.
template <class F>
struct SparseVec {
  std::vector<std::uint32_t> idx;
  std::vector<typename F::Elem> val;

  std::size_t nnz() const { return idx.size(); }
  bool empty() const { return idx.empty(); }
  void push(std::uint32_t i, typename F::Elem v) {
    idx.push_back(i);
    val.push_back(std::move(v));
  }
};

template <class F>
SparseVec<F> to_sparse(const F& f, const DenseVec<F>& v);

template <class F>
DenseVec<F> to_dense(const F& f, const SparseVec<F>& v, std::size_t n);

// Dense scratch vector that remembers which entries were touched.
template <class F>
class Accumulator {
 public:
  using E = typename F::Elem;
  Accumulator(const F& f, std::size_t n) : f_(&f), val_(n, f.zero()), mark_(n, 0) {}

  void add(std::uint32_t i, const E& v) {
    if (!mark_[i]) {
      mark_[i] = 1;
      touched_.push_back(i);
      val_[i] = v;
    } else {
      val_[i] = f_->add(val_[i], v);
    }
  }
  void add_mul(std::uint32_t i, const E& a, const E& b) { add(i, f_->mul(a, b)); }
  std::size_t size() const { return val_.size(); }

  // Drains into a sorted sparse vector.
  SparseVec<F> take();

 private:
  const F* f_;
  std::vector<E> val_;
  std::vector<char> mark_;
  std::vector<std::uint32_t> touched_;
};

// Compressed sparse column matrix.
template <class F>
class SparseMatrix {
 public:
  using E = typename F::Elem;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), ptr_(1, 0) {}

  static SparseMatrix from_triplets(const F& f, std::size_t rows, std::size_t cols,
                                    std::vector<std::tuple<std::uint32_t, std::uint32_t, E>> t);
  static SparseMatrix from_dense(const F& f, std::size_t rows, std::size_t cols, const std::vector<E>& row_major);
  static SparseMatrix identity(const F& f, std::size_t n);

  // Columns must be appended in order.
  void append_column(const SparseVec<F>& c);
  void append_column(SparseVec<F>&& c);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return idx_.size(); }
  bool complete() const { return ptr_.size() == cols_ + 1; }

  std::size_t col_begin(std::size_t j) const { return ptr_[j]; }
  std::size_t col_end(std::size_t j) const { return ptr_[j + 1]; }
  std::uint32_t row_at(std::size_t k) const { return idx_[k]; }
  const E& val_at(std::size_t k) const { return val_[k]; }
  SparseVec<F> column(std::size_t j) const;

  DenseVec<F> apply(const F& f, const DenseVec<F>& x) const;
  SparseVec<F> apply(const F& f, const SparseVec<F>& x) const;
  SparseMatrix transpose() const;
  SparseMatrix multiply(const F& f, const SparseMatrix& rhs) const;  // this * rhs
  std::vector<E> to_dense(const F& f) const;                          // row-major
  bool is_zero() const { return idx_.empty(); }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::size_t> ptr_{0};
  std::vector<std::uint32_t> idx_;
  std::vector<E> val_;
};

template <class F>
bool composes_to_zero(const F& f, const SparseMatrix<F>& after, const SparseMatrix<F>& before);

// Incremental echelon basis. Each stored vector has a pivot where it is 1 and vanishes
// on the pivots of every earlier vector; reduction runs in creation order.
// Optional tracking expresses stored vectors through tagged inputs.
template <class F>
class Echelon {
 public:
  using E = typename F::Elem;

  Echelon(const F& f, std::size_t ambient, bool track = false);

  // Markowitz-style costs: pivot chosen at the cheapest nonzero coordinate.
  void set_pivot_costs(std::vector<std::uint32_t> costs) { costs_ = std::move(costs); }

  // Returns true when v was independent. With tracking, a dependent v leaves the
  // relation (tagged combination summing to zero) in last_relation().
  bool insert(const SparseVec<F>& v, std::int64_t tag = -1);

  // v = residual + sum coords[t] * input_t (coords only with tracking).
  SparseVec<F> reduce(const SparseVec<F>& v, SparseVec<F>* coords = nullptr);

  bool contains(const SparseVec<F>& v) { return reduce(v).empty(); }
  std::size_t rank() const { return rows_.size(); }
  std::size_t ambient() const { return ambient_; }
  const SparseVec<F>& last_relation() const { return relation_; }

  std::uint32_t pivot(std::size_t k) const { return rows_[k].pivot; }
  const SparseVec<F>& row(std::size_t k) const { return rows_[k].v; }
  const SparseVec<F>& combo(std::size_t k) const { return rows_[k].combo; }

  // Fully reduced rows sorted by pivot (leading-entry pivots are forced).
  std::vector<SparseVec<F>> rref_rows() const;

 private:
  struct Row {
    std::uint32_t pivot;
    SparseVec<F> v;
    SparseVec<F> combo;
  };
  SparseVec<F> run(const SparseVec<F>& v, std::int64_t tag, SparseVec<F>* combo);

  const F* f_;
  std::size_t ambient_;
  bool track_;
  std::vector<Row> rows_;
  std::vector<std::int32_t> owner_;
  std::vector<std::uint32_t> costs_;
  std::vector<char> queued_;
  SparseVec<F> relation_;
};

// Subspace with canonical reduced-row-echelon basis (pivots = leading entries).
template <class F>
class Subspace {
 public:
  Subspace() = default;
  Subspace(const F& f, std::size_t ambient, const std::vector<SparseVec<F>>& spanning);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<SparseVec<F>>& basis() const { return basis_; }
  const std::vector<std::uint32_t>& pivots() const { return pivots_; }
  bool contains(const F& f, const SparseVec<F>& v) const;
  // Coordinates of a member in the basis (values at pivots).
  DenseVec<F> coordinates(const F& f, const SparseVec<F>& v) const;
  bool operator==(const Subspace& o) const;

 private:
  std::size_t ambient_ = 0;
  std::vector<SparseVec<F>> basis_;
  std::vector<std::uint32_t> pivots_;
};

template <class F>
std::size_t rank(const F& f, const SparseMatrix<F>& m);
template <class F>
Subspace<F> kernel(const F& f, const SparseMatrix<F>& m);
template <class F>
Subspace<F> image(const F& f, const SparseMatrix<F>& m);
template <class F>
std::optional<DenseVec<F>> solve(const F& f, const SparseMatrix<F>& m, const DenseVec<F>& b);

template <class F>
struct QuotientBasis {
  std::vector<SparseVec<F>> reps;
  Echelon<F> ech;  // W then reps (tagged 0..k-1)

  // Coordinates of v in V/W; v must lie in V.
  DenseVec<F> project(const F& f, const SparseVec<F>& v);
};

template <class F>
QuotientBasis<F> quotient_basis(const F& f, const Subspace<F>& V, const Subspace<F>& W);

// Small dense square matrices, row-major.
template <class F>
struct DenseMatrix {
  std::size_t n = 0, m = 0;
  std::vector<typename F::Elem> a;

  DenseMatrix() = default;
  DenseMatrix(const F& f, std::size_t rows, std::size_t cols) : n(rows), m(cols), a(rows * cols, f.zero()) {}
  typename F::Elem& operator()(std::size_t i, std::size_t j) { return a[i * m + j]; }
  const typename F::Elem& operator()(std::size_t i, std::size_t j) const { return a[i * m + j]; }
};

template <class F>
DenseMatrix<F> dense_identity(const F& f, std::size_t n);
template <class F>
DenseMatrix<F> dense_mul(const F& f, const DenseMatrix<F>& x, const DenseMatrix<F>& y);
template <class F>
DenseVec<F> dense_apply(const F& f, const DenseMatrix<F>& x, const DenseVec<F>& v);
template <class F>
std::optional<DenseMatrix<F>> dense_inverse(const F& f, const DenseMatrix<F>& x);
template <class F>
SparseMatrix<F> to_sparse(const F& f, const DenseMatrix<F>& x);
template <class F>
bool dense_equal(const F& f, const DenseMatrix<F>& x, const DenseMatrix<F>& y);

// det(xI - M), low-to-high coefficients (Berkowitz, division free).
template <class F>
Poly<F> char_poly(const F& f, const DenseMatrix<F>& m);

template <class F>
struct Eigenspaces {
  std::vector<std::pair<typename F::Elem, Subspace<F>>> spaces;
  bool diagonalizable = false;
};

template <class F>
Eigenspaces<F> eigenspaces(const F& f, const DenseMatrix<F>& m);

}  // namespace frobhh
