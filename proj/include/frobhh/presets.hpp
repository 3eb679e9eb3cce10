#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "frobhh/hochschild.hpp"

namespace frobhh {

// Self-injective Nakayama algebras kQ/R^N on a cyclic quiver with built-in minimal
// complete resolutions.
enum class Preset { S2N2, S3N2, S3N3 };

std::optional<Preset> preset_for(int vertices, int radical_power);
QuiverPresentation preset_quiver(Preset p);
std::string preset_name(Preset p);  // "s2n2", ...
std::optional<Preset> parse_preset(const std::string& name);

// Throws InadmissibleCharacteristic (char 2 for s2n2, char 3 for the s = 3 presets,
// and no primitive cube root of unity for s3n2).
template <class F>
void check_admissible(const F& f, Preset p);

// One term c * x (x) y of a generator image, paths relative to the generator's first vertex i.
struct PresetTerm {
  long coef = 1;
  int x_start = 0, x_len = 0;
  int y_start = 0, y_len = 0;
};

// Generator images as text: terms "c*X|Y" joined by + and -, where X, Y are words in
// e<k> (idempotent e_{i+k}) and a<k> (arrow alpha_{i+k}).
std::vector<PresetTerm> parse_generator_image(const std::string& text);

struct PresetData {
  int s = 0, n = 0;
  int period = 0;
  std::vector<int> offset;         // P_m = sum_i P(i, i + offset[m % period])
  std::vector<std::string> image;  // phi_m(e_i (x) e_{i+offset}), m >= 1, by m % period
};
const PresetData& preset_data(Preset p);

// Minimal complete resolution of a preset and its complete complex: Hom_{A^e}(P_r, A) in
// degrees r >= 0, A_{nu^-1} (x)_{A^e} P_{-r-1} in degrees r <= -1, spliced through the norm map.
template <class F>
class PresetResolution {
 public:
  using E = typename F::Elem;

  PresetResolution(const F& f, Preset p);
  PresetResolution(const PresetResolution&) = delete;
  PresetResolution& operator=(const PresetResolution&) = delete;

  Preset id() const { return id_; }
  const Algebra<F>& algebra() const { return alg_; }
  const Frobenius<F>& frobenius() const { return fr_; }
  int offset(int m) const;

  // P_m as a vector space, basis (i, x, y) for x (e_i (x) e_j) y.
  std::size_t projective_dim(int m) const;
  // phi_m : P_m -> P_{m-1} for m >= 1, multiplication P_0 -> A for m = 0.
  SparseMatrix<F> phi(int m) const;

  std::size_t dim(int r) const;
  SparseMatrix<F> differential(int r) const;
  Complex<F>& complex() { return *cx_; }

  std::string basis_label(int r, std::size_t k) const;
  std::string describe(int r, const SparseVec<F>& x) const;

 private:
  struct Summand {
    Subspace<F> space;  // inside A, standard coordinates
  };
  const std::vector<Summand>& negative(int m) const;  // summands of A_{nu^-1} (x) P_m
  std::vector<std::pair<int, int>> hom_basis(int m) const;  // (vertex, path length)
  const std::vector<PresetTerm>& terms(int m) const;
  DenseVec<F> path_vec(int start, int len) const;
  int vert(int v) const { return ((v % q_.vertices) + q_.vertices) % q_.vertices; }

  F f_;
  Preset id_;
  QuiverPresentation q_;
  Algebra<F> alg_;
  Frobenius<F> fr_;
  DenseMatrix<F> norm_;
  std::vector<std::vector<PresetTerm>> terms_;
  mutable std::map<int, std::vector<Summand>> neg_;
  std::unique_ptr<Complex<F>> cx_;
};

struct PresetTable {
  std::string preset;
  int lo = 0, hi = 0;
  std::map<int, std::size_t> dims;
  std::map<int, std::vector<std::string>> generators;
};

template <class F>
PresetTable preset_complete_cohomology(const F& f, Preset p, int lo, int hi);

struct CrossReport {
  int lo = 0, hi = 0;
  std::map<int, std::size_t> preset, bar;
  std::vector<int> mismatches;
  bool match() const { return mismatches.empty(); }
};

// Compares preset dims with the bar-side complete complex; mismatch throws ValidationFailure
// unless report_only.
template <class F>
CrossReport cross_validate(const F& f, Preset p, int lo, int hi, std::size_t budget = kDefaultBudget,
                           bool report_only = false);

}  // namespace frobhh
