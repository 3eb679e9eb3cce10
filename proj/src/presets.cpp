#include "frobhh/presets.hpp"

#include <cctype>
#include <sstream>

namespace frobhh {

namespace {

// Generator images, one line per residue of the resolution degree. Each reads
// phi_m(e_i (x) e_{i+offset(m)}) = sum c * X (x) Y.
const PresetData kS2N2{2, 2, 2, {0, 1},
                       {
                           "e0|a1 + a0|e0",  // m even
                           "a0|e1 - e0|a0",  // m odd
                       }};

const PresetData kS3N2{3, 2, 6, {0, 1, 2, 0, 1, 2},
                       {
                           "e0|a2 + a0|e0",  // 6l+6
                           "a0|e1 - e0|a0",  // 6l+1
                           "e0|a1 + a0|e2",  // 6l+2
                           "a0|e0 - e0|a2",  // 6l+3
                           "e0|a0 + a0|e1",  // 6l+4
                           "a0|e2 - e0|a1",  // 6l+5
                       }};

const PresetData kS3N3{3, 3, 2, {0, 1},
                       {
                           "e0|a1a2 + a0|a2 + a0a1|e0",  // m even
                           "a0|e1 - e0|a0",              // m odd
                       }};

int mod(int a, int b) { return ((a % b) + b) % b; }

// Word in e<k> / a<k> tokens; returns (start, length).
std::pair<int, int> parse_word(const std::string& w) {
  std::size_t pos = 0;
  int start = 0, len = 0;
  bool first = true, idem = false;
  while (pos < w.size()) {
    char c = w[pos++];
    if ((c != 'e' && c != 'a') || pos >= w.size() || !std::isdigit(static_cast<unsigned char>(w[pos])))
      fail(ErrorKind::ParseError, "bad path word '" + w + "'");
    int k = 0;
    while (pos < w.size() && std::isdigit(static_cast<unsigned char>(w[pos]))) k = 10 * k + (w[pos++] - '0');
    if (c == 'e') {
      if (!first) fail(ErrorKind::ParseError, "idempotent inside a path in '" + w + "'");
      start = k;
      idem = true;
    } else {
      if (idem) fail(ErrorKind::ParseError, "idempotent inside a path in '" + w + "'");
      if (first)
        start = k;
      else if (k != start + len)
        fail(ErrorKind::ParseError, "arrows do not compose in '" + w + "'");
      ++len;
    }
    first = false;
  }
  if (first) fail(ErrorKind::ParseError, "empty path word");
  return {start, len};
}

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

}  // namespace

std::optional<Preset> preset_for(int vertices, int radical_power) {
  if (vertices == 2 && radical_power == 2) return Preset::S2N2;
  if (vertices == 3 && radical_power == 2) return Preset::S3N2;
  if (vertices == 3 && radical_power == 3) return Preset::S3N3;
  return std::nullopt;
}

QuiverPresentation preset_quiver(Preset p) {
  const auto& d = preset_data(p);
  return {d.s, d.n};
}

std::string preset_name(Preset p) {
  const auto& d = preset_data(p);
  return "s" + std::to_string(d.s) + "n" + std::to_string(d.n);
}

std::optional<Preset> parse_preset(const std::string& name) {
  for (Preset p : {Preset::S2N2, Preset::S3N2, Preset::S3N3})
    if (preset_name(p) == name) return p;
  return std::nullopt;
}

const PresetData& preset_data(Preset p) {
  switch (p) {
    case Preset::S2N2: return kS2N2;
    case Preset::S3N2: return kS3N2;
    case Preset::S3N3: return kS3N3;
  }
  fail(ErrorKind::InvalidPresentation, "unknown preset");
}

std::vector<PresetTerm> parse_generator_image(const std::string& text) {
  std::string s = strip(text);
  std::vector<PresetTerm> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    long sign = 1;
    if (s[pos] == '+' || s[pos] == '-') sign = s[pos++] == '-' ? -1 : 1;
    std::size_t end = s.find_first_of("+-", pos);
    std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    pos = end == std::string::npos ? s.size() : end;
    PresetTerm t;
    t.coef = sign;
    if (auto star = term.find('*'); star != std::string::npos) {
      t.coef *= std::stol(term.substr(0, star));
      term = term.substr(star + 1);
    }
    auto bar = term.find('|');
    if (bar == std::string::npos) fail(ErrorKind::ParseError, "term without '|' in '" + text + "'");
    std::tie(t.x_start, t.x_len) = parse_word(term.substr(0, bar));
    std::tie(t.y_start, t.y_len) = parse_word(term.substr(bar + 1));
    out.push_back(t);
  }
  if (out.empty()) fail(ErrorKind::ParseError, "empty generator image");
  return out;
}

template <class F>
void check_admissible(const F& f, Preset p) {
  auto c = f.characteristic();
  const auto& d = preset_data(p);
  if (d.s == 2 && c == 2) fail(ErrorKind::InadmissibleCharacteristic, preset_name(p) + " needs characteristic != 2");
  if (d.s == 3 && c == 3) fail(ErrorKind::InadmissibleCharacteristic, preset_name(p) + " needs characteristic != 3");
  if (p == Preset::S3N2 && all_roots(f, Poly<F>{f.one(), f.one(), f.one()}).empty())
    fail(ErrorKind::InadmissibleCharacteristic, "s3n2 needs a root of x^2 + x + 1 in the field");
}

template <class F>
PresetResolution<F>::PresetResolution(const F& f, Preset p)
    : f_(f), id_(p), q_(preset_quiver(p)), alg_(build_algebra(f, q_)),
      fr_(socle_trace_form(alg_, nakayama_socle(q_))) {
  const auto& d = preset_data(p);
  for (auto& text : d.image) terms_.push_back(parse_generator_image(text));
  // endpoints of every term must match the summands of P_m and P_{m-1}
  for (int m = 1; m <= d.period; ++m)
    for (auto& t : terms(m)) {
      int k = t.x_start + t.x_len, l = t.y_start;
      bool ok = mod(t.x_start, d.s) == 0 && mod(t.y_start + t.y_len - offset(m), d.s) == 0 &&
                mod(l - k - offset(m - 1), d.s) == 0 && t.x_len < d.n && t.y_len < d.n;
      if (!ok) fail(ErrorKind::InvalidPresentation, preset_name(p) + ": generator image of degree " +
                                                        std::to_string(m) + " has mismatched endpoints");
    }
  std::vector<DenseVec<F>> u, v;
  for (std::size_t i = 0; i < alg_.dim(); ++i) {
    DenseVec<F> e(alg_.dim(), f.zero());
    e[i] = f.one();
    u.push_back(e);
    v.push_back(fr_.dual_vector(f, i));
  }
  norm_ = norm_map_std(alg_, u, v);

  typename Complex<F>::Source src;
  src.kind = "preset " + preset_name(p);
  src.dim = [this](int r) { return dim(r); };
  src.diff = [this](int r) { return differential(r); };
  cx_ = std::make_unique<Complex<F>>(f_, std::move(src));
}

template <class F>
int PresetResolution<F>::offset(int m) const {
  const auto& d = preset_data(id_);
  return d.offset[std::size_t(mod(m, d.period))];
}

template <class F>
const std::vector<PresetTerm>& PresetResolution<F>::terms(int m) const {
  return terms_[std::size_t(mod(m, preset_data(id_).period))];
}

template <class F>
DenseVec<F> PresetResolution<F>::path_vec(int start, int len) const {
  DenseVec<F> v(alg_.dim(), f_.zero());
  if (len < q_.radical_power) v[std::size_t(q_.index_of(vert(start), len))] = f_.one();
  return v;
}

template <class F>
std::size_t PresetResolution<F>::projective_dim(int) const {
  std::size_t n = std::size_t(q_.radical_power);
  return std::size_t(q_.vertices) * n * n;
}

template <class F>
SparseMatrix<F> PresetResolution<F>::phi(int m) const {
  int s = q_.vertices, n = q_.radical_power;
  auto index = [&](int i, int xl, int yl) { return std::uint32_t((i * n + xl) * n + yl); };
  std::size_t rows = m == 0 ? alg_.dim() : projective_dim(m - 1);
  SparseMatrix<F> out(rows, projective_dim(m));
  Accumulator<F> acc(f_, rows);
  for (int i = 0; i < s; ++i)
    for (int xl = 0; xl < n; ++xl)
      for (int yl = 0; yl < n; ++yl) {
        if (m == 0) {
          if (offset(0) != 0) fail(ErrorKind::InvalidPresentation, "P_0 must be generated by e_i (x) e_i");
          if (xl + yl < n) acc.add(std::uint32_t(q_.index_of(vert(i - xl), xl + yl)), f_.one());
        } else {
          for (auto& t : terms(m)) {
            int lx = xl + t.x_len, ly = t.y_len + yl;
            if (lx >= n || ly >= n) continue;
            acc.add(index(vert(i + t.x_start + t.x_len), lx, ly), f_.from_int(t.coef));
          }
        }
        out.append_column(acc.take());
      }
  return out;
}

template <class F>
std::vector<std::pair<int, int>> PresetResolution<F>::hom_basis(int m) const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < q_.vertices; ++i)
    for (int l = 0; l < q_.radical_power; ++l)
      if (mod(l - offset(m), q_.vertices) == 0) out.emplace_back(i, l);
  return out;
}

template <class F>
const std::vector<typename PresetResolution<F>::Summand>& PresetResolution<F>::negative(int m) const {
  auto it = neg_.find(m);
  if (it != neg_.end()) return it->second;
  std::vector<Summand> out;
  std::size_t d = alg_.dim();
  for (int i = 0; i < q_.vertices; ++i) {
    // e_j A nu^{-1}(e_i), j = i + offset
    auto right = dense_apply(f_, fr_.nu_inv, path_vec(i, 0));
    auto left = path_vec(i + offset(m), 0);
    std::vector<SparseVec<F>> span;
    for (std::size_t b = 0; b < d; ++b) {
      DenseVec<F> e(d, f_.zero());
      e[b] = f_.one();
      span.push_back(to_sparse(f_, alg_.mul(alg_.mul(left, e), right)));
    }
    out.push_back({Subspace<F>(f_, d, span)});
  }
  return neg_.emplace(m, std::move(out)).first->second;
}

template <class F>
std::size_t PresetResolution<F>::dim(int r) const {
  if (r >= 0) return hom_basis(r).size();
  std::size_t n = 0;
  for (auto& s : negative(-r - 1)) n += s.space.dim();
  return n;
}

template <class F>
SparseMatrix<F> PresetResolution<F>::differential(int r) const {
  int n = q_.radical_power;
  if (r >= 0) {
    // (f phi)(e_i (x) e_j) = sum c x f(e_k (x) e_l) y
    auto src = hom_basis(r), dst = hom_basis(r + 1);
    std::map<std::pair<int, int>, std::uint32_t> pos;
    for (std::size_t k = 0; k < dst.size(); ++k) pos[dst[k]] = std::uint32_t(k);
    SparseMatrix<F> out(dst.size(), src.size());
    Accumulator<F> acc(f_, dst.size());
    for (auto [k, len] : src) {
      for (int i = 0; i < q_.vertices; ++i)
        for (auto& t : terms(r + 1)) {
          if (vert(i + t.x_start + t.x_len) != k) continue;
          int total = t.x_len + len + t.y_len;
          if (total >= n) continue;
          acc.add(pos.at({i, total}), f_.from_int(t.coef));
        }
      out.append_column(acc.take());
    }
    return out;
  }
  const auto& src = negative(-r - 1);
  if (r == -1) {
    // m (x) e_i (x) e_i -> (e_k (x) e_k -> e_k mu(m) e_k)
    auto dst = hom_basis(0);
    SparseMatrix<F> out(dst.size(), dim(r));
    for (auto& s : src)
      for (auto& b : s.space.basis()) {
        auto nm = dense_apply(f_, norm_, to_dense(f_, b, alg_.dim()));
        SparseVec<F> col;
        for (std::size_t k = 0; k < dst.size(); ++k) {
          const auto& c = nm[std::size_t(q_.index_of(dst[k].first, dst[k].second))];
          if (!f_.is_zero(c)) col.push(std::uint32_t(k), c);
        }
        out.append_column(col);
      }
    return out;
  }
  // m (x) x (e_k (x) e_l) y -> y m nu^{-1}(x) (x) e_k (x) e_l
  int m = -r - 1;
  const auto& dst = negative(m - 1);
  std::vector<std::size_t> base(dst.size() + 1, 0);
  for (std::size_t k = 0; k < dst.size(); ++k) base[k + 1] = base[k] + dst[k].space.dim();
  SparseMatrix<F> out(base.back(), dim(r));
  Accumulator<F> acc(f_, base.back());
  for (int i = 0; i < q_.vertices; ++i)
    for (auto& b : src[std::size_t(i)].space.basis()) {
      auto mv = to_dense(f_, b, alg_.dim());
      for (auto& t : terms(m)) {
        auto x = dense_apply(f_, fr_.nu_inv, path_vec(i + t.x_start, t.x_len));
        auto val = to_sparse(f_, alg_.mul(alg_.mul(path_vec(i + t.y_start, t.y_len), mv), x));
        if (val.empty()) continue;
        std::size_t k = std::size_t(vert(i + t.x_start + t.x_len));
        const auto& sp = dst[k].space;
        if (!sp.contains(f_, val))
          fail(ErrorKind::ValidationFailure, "induced map leaves its summand in degree " + std::to_string(r));
        auto c = sp.coordinates(f_, val);
        auto coef = f_.from_int(t.coef);
        for (std::size_t j = 0; j < c.size(); ++j)
          if (!f_.is_zero(c[j])) acc.add_mul(std::uint32_t(base[k] + j), coef, c[j]);
      }
      out.append_column(acc.take());
    }
  return out;
}

template <class F>
std::string PresetResolution<F>::basis_label(int r, std::size_t k) const {
  int m = r >= 0 ? r : -r - 1;
  auto gen = [&](int i) {
    return alg_.labels()[std::size_t(q_.index_of(i, 0))] + "(x)" +
           alg_.labels()[std::size_t(q_.index_of(vert(i + offset(m)), 0))];
  };
  if (r >= 0) {
    auto [i, len] = hom_basis(r).at(k);
    return "[" + gen(i) + " -> " + alg_.labels()[std::size_t(q_.index_of(i, len))] + "]";
  }
  const auto& sums = negative(m);
  for (std::size_t i = 0; i < sums.size(); ++i) {
    const auto& basis = sums[i].space.basis();
    if (k >= basis.size()) {
      k -= basis.size();
      continue;
    }
    const auto& b = basis[k];
    std::string coeff;
    if (b.nnz() == 1 && f_.eq(b.val[0], f_.one())) {
      coeff = alg_.labels()[b.idx[0]];
    } else {
      std::ostringstream os;
      os << "(";
      for (std::size_t t = 0; t < b.nnz(); ++t)
        os << (t ? " + " : "") << f_.to_string(b.val[t]) << "*" << alg_.labels()[b.idx[t]];
      os << ")";
      coeff = os.str();
    }
    return coeff + "(x)" + gen(int(i));
  }
  fail(ErrorKind::IndexOutOfRange, "basis index out of range in degree " + std::to_string(r));
}

template <class F>
std::string PresetResolution<F>::describe(int r, const SparseVec<F>& x) const {
  if (x.empty()) return "0";
  std::ostringstream os;
  for (std::size_t t = 0; t < x.nnz(); ++t) {
    if (t) os << " + ";
    if (!f_.eq(x.val[t], f_.one())) os << f_.to_string(x.val[t]) << "*";
    os << basis_label(r, x.idx[t]);
  }
  return os.str();
}

template <class F>
PresetTable preset_complete_cohomology(const F& f, Preset p, int lo, int hi) {
  if (lo > hi) fail(ErrorKind::DegreeOutOfWindow, "empty window");
  check_admissible(f, p);
  PresetResolution<F> res(f, p);
  PresetTable out;
  out.preset = preset_name(p);
  out.lo = lo;
  out.hi = hi;
  auto& cx = res.complex();
  for (int r = lo; r <= hi; ++r) {
    out.dims[r] = cx.cohomology_dim(r);
    auto& gens = out.generators[r];
    for (auto& rep : cx.representatives(r)) gens.push_back(res.describe(r, rep));
  }
  return out;
}

template <class F>
CrossReport cross_validate(const F& f, Preset p, int lo, int hi, std::size_t budget, bool report_only) {
  auto table = preset_complete_cohomology(f, p, lo, hi);
  auto q = preset_quiver(p);
  auto a = build_algebra(f, q);
  auto fr = socle_trace_form(a, nakayama_socle(q));
  auto ws = std::make_shared<const Workspace<F>>(a, fr);
  CompleteComplex<F> cc(ws, budget);
  CrossReport rep;
  rep.lo = lo;
  rep.hi = hi;
  rep.preset = table.dims;
  for (int r = lo; r <= hi; ++r) {
    rep.bar[r] = cc.complex().cohomology_dim(r);
    if (rep.bar[r] != rep.preset[r]) rep.mismatches.push_back(r);
  }
  if (!report_only && !rep.match())
    fail(ErrorKind::ValidationFailure, preset_name(p) + ": bar-side and preset dims differ in degree " +
                                           std::to_string(rep.mismatches.front()));
  return rep;
}

#define FROBHH_INSTANTIATE_PRESETS(F)                                                         \
  template void check_admissible<F>(const F&, Preset);                                        \
  template class PresetResolution<F>;                                                         \
  template PresetTable preset_complete_cohomology<F>(const F&, Preset, int, int);             \
  template CrossReport cross_validate<F>(const F&, Preset, int, int, std::size_t, bool);

FROBHH_INSTANTIATE_PRESETS(PrimeField)
FROBHH_INSTANTIATE_PRESETS(ExtField)
FROBHH_INSTANTIATE_PRESETS(RationalField)

}  // namespace frobhh
