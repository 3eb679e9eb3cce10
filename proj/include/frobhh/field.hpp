#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "frobhh/errors.hpp"

namespace frobhh {

struct FieldSpec {
  enum class Kind { Rationals, Prime, Extension };
  Kind kind = Kind::Rationals;
  std::uint32_t p = 0;
  std::vector<std::uint32_t> modulus;  // low-to-high, monic, extension only

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint32_t p) { return {Kind::Prime, p, {}}; }
  static FieldSpec extension(std::uint32_t p, std::vector<std::uint32_t> modulus) {
    return {Kind::Extension, p, std::move(modulus)};
  }

  std::uint64_t characteristic() const { return kind == Kind::Rationals ? 0 : p; }
  std::string describe() const;
  bool operator==(const FieldSpec&) const = default;
};

bool is_prime(std::uint64_t n);

class PrimeField {
 public:
  using Elem = std::uint32_t;

  explicit PrimeField(std::uint32_t p);

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a ? p_ - a : 0; }
  Elem mul(Elem a, Elem b) const { return Elem(std::uint64_t(a) * b % p_); }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem from_int(long long v) const;
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  std::string to_string(Elem a) const { return std::to_string(a); }
  Elem random(std::mt19937_64& g) const { return Elem(g() % p_); }

  std::uint64_t order() const { return p_; }
  std::uint64_t characteristic() const { return p_; }
  FieldSpec spec() const { return FieldSpec::prime(p_); }

 private:
  std::uint32_t p_;
};

// F_p[x]/(f), elements coded as base-p digit strings of their residue polynomial.
class ExtField {
 public:
  using Elem = std::uint32_t;

  ExtField(std::uint32_t p, std::vector<std::uint32_t> modulus);

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem from_int(long long v) const;
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  std::string to_string(Elem a) const;
  Elem random(std::mt19937_64& g) const { return Elem(g() % q_); }

  std::uint64_t order() const { return q_; }
  std::uint64_t characteristic() const { return p_; }
  FieldSpec spec() const { return FieldSpec::extension(p_, modulus_); }
  std::size_t degree() const { return k_; }

 private:
  std::uint32_t p_;
  std::size_t k_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;  // length 2(q-1)
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> add_table_;  // q*q when small
};

class RationalField {
 public:
  using Elem = mpq_class;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return a * inv(b); }
  Elem from_int(long long v) const { return Elem(mpz_class(std::to_string(v))); }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::string to_string(const Elem& a) const { return a.get_str(); }
  Elem random(std::mt19937_64& g) const { return Elem(long(g() % 19) - 9); }

  std::uint64_t order() const { return 0; }
  std::uint64_t characteristic() const { return 0; }
  FieldSpec spec() const { return FieldSpec::rationals(); }
};

using AnyField = std::variant<PrimeField, ExtField, RationalField>;

AnyField make_field(const FieldSpec& spec);

// Calls fn(field) with the concrete field type for spec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  AnyField f = make_field(spec);
  return std::visit([&](auto& field) -> decltype(auto) { return fn(field); }, f);
}

template <class F>
using Poly = std::vector<typename F::Elem>;  // low-to-high coefficients

template <class F>
void poly_trim(const F& f, Poly<F>& p);

template <class F>
typename F::Elem poly_eval(const F& f, const Poly<F>& p, const typename F::Elem& x);

template <class F>
Poly<F> poly_mul(const F& f, const Poly<F>& a, const Poly<F>& b);

// Roots in the field with multiplicities, sorted by first discovery.
template <class F>
std::vector<std::pair<typename F::Elem, int>> all_roots(const F& f, Poly<F> p);

// Type-erased exact scalar.
class FieldScalar {
 public:
  using Value = std::variant<std::uint32_t, mpq_class>;

  FieldScalar() = default;
  FieldScalar(std::shared_ptr<const AnyField> field, Value v) : field_(std::move(field)), v_(std::move(v)) {}

  static FieldScalar from_int(std::shared_ptr<const AnyField> field, long long v);

  FieldScalar operator+(const FieldScalar& o) const;
  FieldScalar operator-(const FieldScalar& o) const;
  FieldScalar operator*(const FieldScalar& o) const;
  FieldScalar operator/(const FieldScalar& o) const;
  FieldScalar operator-() const;
  FieldScalar inv() const;
  bool operator==(const FieldScalar& o) const;
  bool is_zero() const;
  std::string to_string() const;

  const Value& value() const { return v_; }
  const std::shared_ptr<const AnyField>& field() const { return field_; }
  void check_same(const FieldScalar& o) const;  // throws FieldMismatch

 private:
  std::shared_ptr<const AnyField> field_;
  Value v_;
};

std::vector<std::pair<FieldScalar, int>> all_roots(const std::vector<FieldScalar>& poly);

}  // namespace frobhh
