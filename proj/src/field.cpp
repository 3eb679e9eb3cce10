#include "frobhh/field.hpp"

#include <algorithm>
#include <sstream>

namespace frobhh {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::InvalidFieldSpec: return "InvalidFieldSpec";
    case ErrorKind::NotASubspace: return "NotASubspace";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::InvalidPresentation: return "InvalidPresentation";
    case ErrorKind::DegenerateForm: return "DegenerateForm";
    case ErrorKind::NotAutomorphism: return "NotAutomorphism";
    case ErrorKind::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::MixedComplexes: return "MixedComplexes";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::DegreeTooLow: return "DegreeTooLow";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InadmissibleCharacteristic: return "InadmissibleCharacteristic";
    case ErrorKind::ValidationFailure: return "ValidationFailure";
    case ErrorKind::DegreeOutOfWindow: return "DegreeOutOfWindow";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Error";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::string FieldSpec::describe() const {
  switch (kind) {
    case Kind::Rationals: return "Q";
    case Kind::Prime: return "F_" + std::to_string(p);
    case Kind::Extension: {
      std::string s = "F_" + std::to_string(p) + "[x]/(";
      bool first = true;
      for (std::size_t i = modulus.size(); i-- > 0;) {
        std::uint32_t c = modulus[i];
        if (c == 0) continue;
        if (!first) s += "+";
        first = false;
        if (i == 0 || c != 1) s += std::to_string(c);
        if (i >= 1) s += "x";
        if (i >= 2) s += "^" + std::to_string(i);
      }
      return s + ")";
    }
  }
  return "?";
}

// ---- prime field ----

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p))
    fail(ErrorKind::InvalidFieldSpec, "p = " + std::to_string(p) + " is not a prime below 2^31");
}

PrimeField::Elem PrimeField::inv(Elem a) const {
  if (a == 0) fail(ErrorKind::DivisionByZero, "inverse of 0 in F_" + std::to_string(p_));
  std::int64_t t = 0, nt = 1, r = p_, nr = a;
  while (nr) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  return Elem(t < 0 ? t + p_ : t);
}

PrimeField::Elem PrimeField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  return Elem(r < 0 ? r + p_ : r);
}

// ---- extension field ----

namespace {

std::vector<std::uint32_t> digits(std::uint32_t code, std::uint32_t p, std::size_t k) {
  std::vector<std::uint32_t> d(k);
  for (std::size_t i = 0; i < k; ++i) {
    d[i] = code % p;
    code /= p;
  }
  return d;
}

std::uint32_t undigits(const std::vector<std::uint32_t>& d, std::uint32_t p) {
  std::uint32_t code = 0;
  for (std::size_t i = d.size(); i-- > 0;) code = code * p + d[i];
  return code;
}

// Residue of a(x)*x mod modulus over F_p, digit form.
std::vector<std::uint32_t> mulx(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& mod,
                                std::uint32_t p) {
  std::size_t k = a.size();
  std::uint32_t top = a[k - 1];
  std::vector<std::uint32_t> r(k);
  for (std::size_t i = k; i-- > 1;) r[i] = a[i - 1];
  r[0] = 0;
  for (std::size_t i = 0; i < k; ++i) r[i] = (r[i] + std::uint64_t(p - mod[i] % p) * top) % p;
  return r;
}

bool irreducible_small(std::uint32_t p, const std::vector<std::uint32_t>& mod) {
  std::size_t n = mod.size() - 1;
  auto eval = [&](std::uint32_t x) {
    std::uint64_t acc = 0;
    for (std::size_t i = mod.size(); i-- > 0;) acc = (acc * x + mod[i]) % p;
    return acc;
  };
  for (std::uint32_t x = 0; x < p; ++x)
    if (eval(x) == 0) return n == 1;
  if (n <= 3) return true;
  // degree 4: exclude monic quadratic factors x^2 + b x + c
  for (std::uint32_t b = 0; b < p; ++b)
    for (std::uint32_t c = 0; c < p; ++c) {
      std::vector<std::uint64_t> r(mod.begin(), mod.end());
      for (std::size_t i = n; i >= 2; --i) {
        std::uint64_t lead = r[i] % p;
        r[i] = 0;
        r[i - 1] = (r[i - 1] + (p - b) * lead) % p;
        r[i - 2] = (r[i - 2] + (p - c) * lead) % p;
      }
      if (r[0] % p == 0 && r[1] % p == 0) return false;
    }
  return true;
}

}  // namespace

ExtField::ExtField(std::uint32_t p, std::vector<std::uint32_t> modulus) : p_(p), modulus_(std::move(modulus)) {
  if (!is_prime(p)) fail(ErrorKind::InvalidFieldSpec, "extension base " + std::to_string(p) + " is not prime");
  if (modulus_.size() < 2 || modulus_.size() > 5)
    fail(ErrorKind::InvalidFieldSpec, "extension modulus must have degree 1..4");
  for (auto c : modulus_)
    if (c >= p) fail(ErrorKind::InvalidFieldSpec, "modulus coefficient out of range [0,p)");
  if (modulus_.back() != 1) fail(ErrorKind::InvalidFieldSpec, "modulus must be monic");
  k_ = modulus_.size() - 1;
  std::uint64_t q = 1;
  for (std::size_t i = 0; i < k_; ++i) q *= p;
  if (q > (1u << 20)) fail(ErrorKind::InvalidFieldSpec, "extension field too large (q > 2^20)");
  if (!irreducible_small(p, modulus_)) fail(ErrorKind::InvalidFieldSpec, "modulus " + spec().describe() + " is reducible");
  q_ = std::uint32_t(q);

  // Search a primitive element and build exp/log tables.
  log_.assign(q_, 0);
  exp_.assign(2 * (q_ - 1), 0);
  for (std::uint32_t g = 2; g < q_ || q_ == 2; ++g) {
    std::uint32_t gen = (q_ == 2) ? 1 : g;
    auto gd = digits(gen, p_, k_);
    std::vector<std::uint32_t> cur(k_, 0);
    cur[0] = 1;
    std::vector<char> seen(q_, 0);
    bool ok = true;
    for (std::uint32_t e = 0; e < q_ - 1; ++e) {
      std::uint32_t code = undigits(cur, p_);
      if (seen[code]) {
        ok = false;
        break;
      }
      seen[code] = 1;
      exp_[e] = code;
      // cur *= gen
      std::vector<std::uint32_t> acc(k_, 0), sh = cur;
      for (std::size_t i = 0; i < k_; ++i) {
        for (std::size_t j = 0; j < k_; ++j) acc[j] = (acc[j] + std::uint64_t(gd[i]) * sh[j]) % p_;
        sh = mulx(sh, modulus_, p_);
      }
      cur = acc;
    }
    if (ok) break;
    if (q_ == 2) break;
  }
  for (std::uint32_t e = 0; e < q_ - 1; ++e) {
    log_[exp_[e]] = e;
    exp_[e + q_ - 1] = exp_[e];
  }
  if (std::uint64_t(q_) * q_ <= (1u << 20)) {
    add_table_.resize(std::size_t(q_) * q_);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b < q_; ++b) {
        auto da = digits(a, p_, k_), db = digits(b, p_, k_);
        for (std::size_t i = 0; i < k_; ++i) da[i] = (da[i] + db[i]) % p_;
        add_table_[std::size_t(a) * q_ + b] = undigits(da, p_);
      }
  }
}

ExtField::Elem ExtField::add(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  if (!add_table_.empty()) return add_table_[std::size_t(a) * q_ + b];
  auto da = digits(a, p_, k_), db = digits(b, p_, k_);
  for (std::size_t i = 0; i < k_; ++i) da[i] = (da[i] + db[i]) % p_;
  return undigits(da, p_);
}

ExtField::Elem ExtField::neg(Elem a) const {
  if (p_ == 2) return a;
  auto da = digits(a, p_, k_);
  for (auto& x : da) x = x ? p_ - x : 0;
  return undigits(da, p_);
}

ExtField::Elem ExtField::inv(Elem a) const {
  if (a == 0) fail(ErrorKind::DivisionByZero, "inverse of 0 in " + spec().describe());
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

ExtField::Elem ExtField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  return Elem(r < 0 ? r + p_ : r);
}

std::string ExtField::to_string(Elem a) const {
  if (a == 0) return "0";
  auto d = digits(a, p_, k_);
  std::string s;
  for (std::size_t i = k_; i-- > 0;) {
    if (d[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0 || d[i] != 1) s += std::to_string(d[i]);
    if (i >= 1) s += "x";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

// ---- rationals ----

RationalField::Elem RationalField::inv(const Elem& a) const {
  if (sgn(a) == 0) fail(ErrorKind::DivisionByZero, "inverse of 0 in Q");
  return Elem(1) / a;
}

AnyField make_field(const FieldSpec& spec) {
  switch (spec.kind) {
    case FieldSpec::Kind::Rationals: return RationalField{};
    case FieldSpec::Kind::Prime: return PrimeField(spec.p);
    case FieldSpec::Kind::Extension: return ExtField(spec.p, spec.modulus);
  }
  fail(ErrorKind::InvalidFieldSpec, "unknown field kind");
}

// ---- polynomials ----

template <class F>
void poly_trim(const F& f, Poly<F>& p) {
  while (!p.empty() && f.is_zero(p.back())) p.pop_back();
}

template <class F>
typename F::Elem poly_eval(const F& f, const Poly<F>& p, const typename F::Elem& x) {
  auto acc = f.zero();
  for (std::size_t i = p.size(); i-- > 0;) acc = f.add(f.mul(acc, x), p[i]);
  return acc;
}

template <class F>
Poly<F> poly_mul(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<F> r(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  poly_trim(f, r);
  return r;
}

namespace {

// Divides by (x - r) in place; returns the remainder.
template <class F>
typename F::Elem deflate(const F& f, Poly<F>& p, const typename F::Elem& r) {
  if (p.empty()) return f.zero();
  Poly<F> q(p.size() - 1, f.zero());
  auto carry = f.zero();
  for (std::size_t i = p.size(); i-- > 0;) {
    auto c = f.add(p[i], f.mul(carry, r));
    if (i > 0) q[i - 1] = c;
    carry = c;
  }
  p = std::move(q);
  return carry;
}

template <class F>
int strip_root(const F& f, Poly<F>& p, const typename F::Elem& r) {
  int m = 0;
  while (p.size() > 1 && f.is_zero(poly_eval(f, p, r))) {
    deflate(f, p, r);
    ++m;
  }
  return m;
}

template <class F>
Poly<F> poly_mod(const F& f, Poly<F> a, const Poly<F>& b) {
  poly_trim(f, a);
  auto lead_inv = f.inv(b.back());
  while (a.size() >= b.size()) {
    auto c = f.mul(a.back(), lead_inv);
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
    poly_trim(f, a);
  }
  return a;
}

template <class F>
Poly<F> poly_divexact(const F& f, Poly<F> a, const Poly<F>& b) {
  Poly<F> q(a.size() - b.size() + 1, f.zero());
  auto lead_inv = f.inv(b.back());
  while (a.size() >= b.size() && !a.empty()) {
    auto c = f.mul(a.back(), lead_inv);
    std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
    poly_trim(f, a);
  }
  return q;
}

template <class F>
Poly<F> poly_gcd(const F& f, Poly<F> a, Poly<F> b) {
  poly_trim(f, a);
  poly_trim(f, b);
  while (!b.empty()) {
    auto r = poly_mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    auto li = f.inv(a.back());
    for (auto& c : a) c = f.mul(c, li);
  }
  return a;
}

template <class F>
Poly<F> poly_powmod(const F& f, Poly<F> base, std::uint64_t e, const Poly<F>& m) {
  Poly<F> r{f.one()};
  base = poly_mod(f, base, m);
  while (e) {
    if (e & 1) r = poly_mod(f, poly_mul(f, r, base), m);
    base = poly_mod(f, poly_mul(f, base, base), m);
    e >>= 1;
  }
  return r;
}

// Distinct roots of a squarefree product of linear factors over a large prime field.
void split_linear(const PrimeField& f, const Poly<PrimeField>& g, std::uint64_t p, std::mt19937_64& rng,
                  std::vector<std::uint32_t>& out) {
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    out.push_back(f.neg(f.div(g[0], g[1])));
    return;
  }
  for (;;) {
    Poly<PrimeField> lin{f.random(rng), f.one()};
    auto h = poly_powmod(f, lin, (p - 1) / 2, g);
    if (h.empty()) h.push_back(f.zero());
    h[0] = f.sub(h[0], f.one());
    poly_trim(f, h);
    auto d = poly_gcd(f, g, h);
    if (d.size() > 1 && d.size() < g.size()) {
      split_linear(f, d, p, rng, out);
      split_linear(f, poly_divexact(f, g, d), p, rng, out);
      return;
    }
  }
}

std::vector<mpz_class> divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

template <class F>
std::vector<std::pair<typename F::Elem, int>> all_roots(const F& f, Poly<F> p) {
  using E = typename F::Elem;
  poly_trim(f, p);
  std::vector<std::pair<E, int>> out;
  if (p.size() <= 1) return out;
  if constexpr (std::is_same_v<F, RationalField>) {
    int zero_mult = 0;
    while (p.size() > 1 && f.is_zero(p[0])) {
      p.erase(p.begin());
      ++zero_mult;
    }
    if (zero_mult) out.emplace_back(f.zero(), zero_mult);
    if (p.size() <= 1) return out;
    mpz_class den = 1;
    for (auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> ic;
    for (auto& c : p) ic.emplace_back(mpz_class(c * den));
    auto num_div = divisors(ic.front());
    auto den_div = divisors(ic.back());
    for (auto& a : num_div)
      for (auto& b : den_div)
        for (int s : {1, -1}) {
          if (p.size() <= 1) return out;
          E cand(a * s, b);
          cand.canonicalize();
          bool dup = false;
          for (auto& r : out) dup = dup || r.first == cand;
          if (dup) continue;
          int m = strip_root(f, p, cand);
          if (m) out.emplace_back(cand, m);
        }
    return out;
  } else {
    std::uint64_t q = f.order();
    if (q <= (1u << 20)) {
      for (std::uint64_t c = 0; c < q && p.size() > 1; ++c) {
        E x = E(c);
        int m = strip_root(f, p, x);
        if (m) out.emplace_back(x, m);
      }
      return out;
    }
    if constexpr (std::is_same_v<F, PrimeField>) {
      // roots = roots of gcd(p, x^q - x), split by random linear shifts
      auto monic = p;
      auto li = f.inv(monic.back());
      for (auto& c : monic) c = f.mul(c, li);
      auto xq = poly_powmod(f, Poly<F>{f.zero(), f.one()}, q, monic);
      xq.resize(std::max<std::size_t>(xq.size(), 2), f.zero());
      xq[1] = f.sub(xq[1], f.one());
      poly_trim(f, xq);
      auto g = poly_gcd(f, monic, xq);
      std::mt19937_64 rng(0x5eed);
      std::vector<std::uint32_t> roots;
      split_linear(f, g, q, rng, roots);
      std::sort(roots.begin(), roots.end());
      for (auto r : roots) {
        int m = strip_root(f, p, r);
        if (m) out.emplace_back(r, m);
      }
    }
    return out;
  }
}

#define FROBHH_INSTANTIATE_POLY(F)                                                          \
  template void poly_trim<F>(const F&, Poly<F>&);                                           \
  template F::Elem poly_eval<F>(const F&, const Poly<F>&, const F::Elem&);                  \
  template Poly<F> poly_mul<F>(const F&, const Poly<F>&, const Poly<F>&);                   \
  template std::vector<std::pair<F::Elem, int>> all_roots<F>(const F&, Poly<F>);

FROBHH_INSTANTIATE_POLY(PrimeField)
FROBHH_INSTANTIATE_POLY(ExtField)
FROBHH_INSTANTIATE_POLY(RationalField)

// ---- type-erased scalars ----

namespace {

template <class F>
typename F::Elem unwrap(const F&, const FieldScalar::Value& v) {
  if constexpr (std::is_same_v<F, RationalField>)
    return std::get<mpq_class>(v);
  else
    return std::get<std::uint32_t>(v);
}

}  // namespace

FieldScalar FieldScalar::from_int(std::shared_ptr<const AnyField> field, long long v) {
  Value val = std::visit([&](const auto& f) -> Value { return f.from_int(v); }, *field);
  return FieldScalar(std::move(field), std::move(val));
}

void FieldScalar::check_same(const FieldScalar& o) const {
  if (!field_ || !o.field_) fail(ErrorKind::FieldMismatch, "uninitialised scalar");
  if (field_ == o.field_) return;
  auto a = std::visit([](const auto& f) { return f.spec(); }, *field_);
  auto b = std::visit([](const auto& f) { return f.spec(); }, *o.field_);
  if (!(a == b)) fail(ErrorKind::FieldMismatch, a.describe() + " vs " + b.describe());
}

#define FROBHH_SCALAR_BINOP(op, method)                                                             \
  FieldScalar FieldScalar::operator op(const FieldScalar& o) const {                                \
    check_same(o);                                                                                  \
    Value r = std::visit([&](const auto& f) -> Value { return f.method(unwrap(f, v_), unwrap(f, o.v_)); }, \
                         *field_);                                                                  \
    return FieldScalar(field_, std::move(r));                                                       \
  }

FROBHH_SCALAR_BINOP(+, add)
FROBHH_SCALAR_BINOP(-, sub)
FROBHH_SCALAR_BINOP(*, mul)
FROBHH_SCALAR_BINOP(/, div)

FieldScalar FieldScalar::operator-() const {
  Value r = std::visit([&](const auto& f) -> Value { return f.neg(unwrap(f, v_)); }, *field_);
  return FieldScalar(field_, std::move(r));
}

FieldScalar FieldScalar::inv() const {
  Value r = std::visit([&](const auto& f) -> Value { return f.inv(unwrap(f, v_)); }, *field_);
  return FieldScalar(field_, std::move(r));
}

bool FieldScalar::operator==(const FieldScalar& o) const {
  check_same(o);
  return v_ == o.v_;
}

bool FieldScalar::is_zero() const {
  return std::visit([&](const auto& f) { return f.is_zero(unwrap(f, v_)); }, *field_);
}

std::string FieldScalar::to_string() const {
  return std::visit([&](const auto& f) { return f.to_string(unwrap(f, v_)); }, *field_);
}

std::vector<std::pair<FieldScalar, int>> all_roots(const std::vector<FieldScalar>& poly) {
  std::vector<std::pair<FieldScalar, int>> out;
  if (poly.empty()) return out;
  for (auto& c : poly) poly.front().check_same(c);
  auto field = poly.front().field();
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        Poly<F> p;
        for (auto& c : poly) p.push_back(unwrap(f, c.value()));
        for (auto& [r, m] : all_roots(f, p)) out.emplace_back(FieldScalar(field, r), m);
      },
      *field);
  return out;
}

}  // namespace frobhh
