#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "frobhh/algebra.hpp"

namespace frobhh {

inline constexpr std::size_t kDefaultBudget = 10'000'000;

// Tuples over {0..base-1} of fixed length, first slot most significant.
struct TensorIndex {
  std::size_t base = 1;
  int length = 0;

  std::size_t size() const;
  std::size_t rank(const std::vector<std::uint32_t>& t) const;
  void unrank(std::size_t idx, std::vector<std::uint32_t>& t) const;
};

std::size_t int_pow(std::size_t b, int e);

// Block key: (weight, character id) packed into 64 bits.
using BlockKey = std::uint64_t;
inline BlockKey make_key(long weight, std::uint32_t ch) {
  return (std::uint64_t(weight + (1L << 30)) << 32) | ch;
}
inline long key_weight(BlockKey k) { return long(k >> 32) - (1L << 30); }
inline std::uint32_t key_char(BlockKey k) { return std::uint32_t(k & 0xffffffffu); }

// Differentials. Coordinates: cochains and chains index (t, m) as rank(t) * dim M + m.
template <class F>
SparseMatrix<F> cochain_differential(const Workspace<F>& ws, const Bimodule<F>& m, int r,
                                     std::size_t budget = kDefaultBudget);  // delta^r
template <class F>
SparseMatrix<F> chain_differential(const Workspace<F>& ws, const Bimodule<F>& m, int p,
                                   std::size_t budget = kDefaultBudget);  // partial_p, p >= 1
// d_p on A (x) Abar^p (x) A, index (a0 * R^p + rank(t)) * d + a_{p+1}; d_0 is multiplication.
template <class F>
SparseMatrix<F> bar_differential(const Workspace<F>& ws, int p, std::size_t budget = kDefaultBudget);

// Cohomological complex with lazily built differentials d^r: C^r -> C^{r+1}.
template <class F>
class Complex {
 public:
  using E = typename F::Elem;
  struct Source {
    std::string kind;
    std::function<std::size_t(int)> dim;
    std::function<SparseMatrix<F>(int)> diff;
    std::function<BlockKey(int, std::size_t)> key;  // optional grading
  };

  Complex(const F& f, Source src) : f_(f), src_(std::move(src)) {}

  const F& field() const { return f_; }
  const std::string& kind() const { return src_.kind; }
  std::size_t dim(int r);
  const SparseMatrix<F>& differential(int r);
  BlockKey key(int r, std::size_t i) const { return src_.key ? src_.key(r, i) : 0; }
  bool graded() const { return bool(src_.key); }

  std::size_t cohomology_dim(int r);
  // dimension per character id
  std::map<std::uint32_t, std::size_t> cohomology_by_char(int r);
  std::size_t rank_out(int r);  // rank of d^r

  // Representatives of a cohomology basis (first lifts in echelon order, blocks by key).
  std::vector<SparseVec<F>> representatives(int r);
  bool is_cocycle(int r, const SparseVec<F>& x);
  // Class coordinates of a cocycle; throws ValidationFailure when x is not a cocycle.
  DenseVec<F> classify(int r, const SparseVec<F>& x);
  bool is_coboundary(int r, const SparseVec<F>& x);
  // Rebuilds a cocycle from class coordinates.
  SparseVec<F> lift(int r, const DenseVec<F>& coords);
  // Character of each cohomology basis vector.
  std::vector<std::uint32_t> class_chars(int r);

  // Subcomplex spanned by basis elements whose key has the given character.
  Complex component(std::uint32_t ch);

 private:
  struct Layout {
    std::vector<BlockKey> keys;               // sorted block keys
    std::vector<std::uint32_t> block_of;      // per global index
    std::vector<std::uint32_t> local;         // local index inside block
    std::vector<std::vector<std::uint32_t>> members;
  };
  struct Block {
    std::size_t h = 0;
    std::vector<SparseVec<F>> reps;  // local coordinates
    std::unique_ptr<Echelon<F>> eh;  // boundaries, then reps tagged 0..h-1
  };
  struct Degree {
    std::vector<Block> blocks;
    std::size_t total = 0;
    bool reps_built = false;
  };

  const Layout& layout(int r);
  const std::vector<std::size_t>& block_ranks(int r);  // rank of d^r per block of C^r
  SparseMatrix<F> block_matrix(int r, std::size_t b, bool* empty_target);
  Degree& degree(int r);
  void build_reps(int r);
  std::vector<SparseVec<F>> split(int r, const SparseVec<F>& x);

  F f_;
  Source src_;
  std::map<int, std::size_t> dims_;
  std::map<int, SparseMatrix<F>> diffs_;
  std::map<int, Layout> layouts_;
  std::map<int, std::vector<std::size_t>> ranks_;
  std::map<int, Degree> degrees_;
};

template <class F>
Complex<F> cochain_complex(std::shared_ptr<const Workspace<F>> ws, std::shared_ptr<const Bimodule<F>> m,
                           std::size_t budget = kDefaultBudget);
// Chains in cohomological degree r = -p.
template <class F>
Complex<F> chain_complex(std::shared_ptr<const Workspace<F>> ws, std::shared_ptr<const Bimodule<F>> m,
                         std::size_t budget = kDefaultBudget);

// D^r = C^r(A, A) for r >= 0 and C_{-r-1}(A, A_{nu^-1}) for r <= -1, spliced by mu.
template <class F>
class CompleteComplex {
 public:
  CompleteComplex(std::shared_ptr<const Workspace<F>> ws, std::size_t budget = kDefaultBudget);
  CompleteComplex(const CompleteComplex&) = delete;
  CompleteComplex& operator=(const CompleteComplex&) = delete;

  const Workspace<F>& ws() const { return *ws_; }
  std::shared_ptr<const Workspace<F>> ws_ptr() const { return ws_; }
  Complex<F>& complex() { return *cx_; }
  const Bimodule<F>& regular() const { return *reg_; }
  const Bimodule<F>& twisted() const { return *tw_; }
  std::size_t budget() const { return budget_; }

  // Tensor length and coefficient index of a basis element of D^r.
  int tensor_length(int r) const { return r >= 0 ? r : -r - 1; }
  std::size_t dim(int r) const;
  BlockKey key(int r, std::size_t idx) const;
  std::uint32_t character(int r, std::size_t idx) const { return key_char(key(r, idx)); }

  // Keeps only coordinates of the given character.
  SparseVec<F> project(int r, const SparseVec<F>& x, std::uint32_t ch) const;

 private:
  std::shared_ptr<const Workspace<F>> ws_;
  std::shared_ptr<const Bimodule<F>> reg_, tw_;
  std::unique_ptr<Complex<F>> cx_;
  std::size_t budget_;
};

// Omega^p = Im d_p inside A (x) Abar^{p-1} (x) A (Omega^0 = A).
template <class F>
struct OmegaModule {
  int p = 0;
  std::size_t ambient = 0;
  Subspace<F> space;
  std::shared_ptr<const Bimodule<F>> bimodule;  // in the coordinates of space's basis

  SparseVec<F> to_ambient(const F& f, const SparseVec<F>& coords) const;
  std::optional<SparseVec<F>> from_ambient(const F& f, const SparseVec<F>& x) const;
};

template <class F>
OmegaModule<F> omega_module(const Workspace<F>& ws, int p, std::size_t budget = kDefaultBudget);

// Ambient bimodule A (x) Abar^{q} (x) A in working coordinates.
template <class F>
Bimodule<F> ambient_bimodule(const Workspace<F>& ws, int q);

// Theta: (C_r(A, A_nu))^* -> C^r(A, A) and its inverse, as matrices on coefficient vectors.
template <class F>
SparseMatrix<F> theta_matrix(const Workspace<F>& ws, int r);
template <class F>
SparseMatrix<F> theta_inverse_matrix(const Workspace<F>& ws, int r);

}  // namespace frobhh
