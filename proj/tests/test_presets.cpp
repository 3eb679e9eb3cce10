#include <doctest.h>

#include "frobhh/presets.hpp"

using namespace frobhh;

namespace {

const Preset kAll[] = {Preset::S2N2, Preset::S3N2, Preset::S3N3};

// s3n2 table: chars other than 2, 3 have period 6, char 2 has period 3.
std::size_t s3n2_dim(int r, bool char2) {
  int n = r >= 0 ? r : -r;
  if (char2) return r >= 0 ? (n % 3 != 2) : (n % 3 != 1);
  return r >= 0 ? (n % 6 == 0 || n % 6 == 1) : (n % 6 == 0 || n % 6 == 5);
}

template <class F>
void check_exact(const F& f, Preset p) {
  PresetResolution<F> res(f, p);
  int period = preset_data(p).period;
  // P_{m+1} -> P_m -> P_{m-1} exact and P_0 -> A onto
  CHECK(rank(f, res.phi(0)) == res.algebra().dim());
  for (int m = 0; m <= 2 * period + 1; ++m) {
    auto lo = res.phi(m), hi = res.phi(m + 1);
    CHECK(composes_to_zero(f, lo, hi));
    CHECK(rank(f, hi) + rank(f, lo) == res.projective_dim(m));
  }
}

template <class F>
std::map<int, std::size_t> dims(const F& f, Preset p, int lo, int hi) {
  return preset_complete_cohomology(f, p, lo, hi).dims;
}

}  // namespace

TEST_CASE("generator image parser") {
  auto t = parse_generator_image("e0|a1a2 + a0 | a2 - 2*a0a1|e0");
  REQUIRE(t.size() == 3);
  CHECK(t[0].x_len == 0);
  CHECK(t[0].y_start == 1);
  CHECK(t[0].y_len == 2);
  CHECK(t[1].coef == 1);
  CHECK(t[2].coef == -2);
  CHECK(t[2].x_len == 2);
  CHECK_THROWS_AS(parse_generator_image("a0a2|e0"), Error);
  CHECK_THROWS_AS(parse_generator_image("a0 e0"), Error);
  CHECK_THROWS_AS(parse_generator_image(""), Error);
}

TEST_CASE("preset lookup") {
  CHECK(preset_for(2, 2) == Preset::S2N2);
  CHECK(preset_for(3, 3) == Preset::S3N3);
  CHECK(!preset_for(2, 3));
  CHECK(parse_preset("s3n2") == Preset::S3N2);
  CHECK(!parse_preset("s4n2"));
}

TEST_CASE("preset resolutions are exact") {
  check_exact(PrimeField(5), Preset::S2N2);
  check_exact(RationalField(), Preset::S2N2);
  check_exact(PrimeField(7), Preset::S3N2);
  check_exact(ExtField(2, {1, 1, 1}), Preset::S3N2);
  check_exact(PrimeField(7), Preset::S3N3);
}

TEST_CASE("induced complexes square to zero") {
  PrimeField f(7);
  for (Preset p : kAll) {
    PresetResolution<PrimeField> res(f, p);
    for (int r = -14; r <= 14; ++r) CHECK(composes_to_zero(f, res.differential(r + 1), res.differential(r)));
  }
}

TEST_CASE("induced complex dimensions") {
  PrimeField f(7);
  PresetResolution<PrimeField> s2(f, Preset::S2N2), s3(f, Preset::S3N2), t3(f, Preset::S3N3);
  for (int r = -12; r <= 12; ++r) {
    CHECK(s2.dim(r) == 2);
    CHECK(t3.dim(r) == 3);
    // Hom(P_n, A): 3, 3, 0 for n = 3l, 3l+1, 3l+2; A (x) P_n: 0, 3, 3
    int n = r >= 0 ? r : -r - 1;
    std::size_t want = r >= 0 ? (n % 3 == 2 ? 0 : 3) : (n % 3 == 0 ? 0 : 3);
    CHECK(s3.dim(r) == want);
  }
}

TEST_CASE("induced maps on the two-vertex algebra") {
  PrimeField f(5);
  PresetResolution<PrimeField> res(f, Preset::S2N2);
  auto m = f.neg(f.one());
  // Hom(phi_odd)(e_i) = alpha_{i+1} - alpha_i, Hom(phi_even) = 0
  auto d0 = res.differential(0).to_dense(f);
  CHECK(res.basis_label(0, 0) == "[e1(x)e1 -> e1]");
  CHECK(res.basis_label(1, 0) == "[e1(x)e2 -> a1]");
  CHECK(res.basis_label(1, 1) == "[e2(x)e1 -> a2]");
  CHECK(d0 == std::vector<std::uint32_t>{m, 1, 1, m});
  CHECK(res.differential(1).is_zero());
  CHECK(res.differential(3).is_zero());
  // id (x) phi_odd(e_i (x) e_{i+1} (x) e_i) = alpha_i (x) e_i (x) e_i - alpha_{i+1} (x) e_{i+1} (x) e_{i+1}
  CHECK(res.basis_label(-2, 0) == "e2(x)e1(x)e2");
  CHECK(res.basis_label(-2, 1) == "e1(x)e2(x)e1");
  CHECK(res.basis_label(-1, 0) == "a1(x)e1(x)e1");
  CHECK(res.basis_label(-1, 1) == "a2(x)e2(x)e2");
  auto dm2 = res.differential(-2).to_dense(f);
  CHECK(dm2 == std::vector<std::uint32_t>{m, 1, 1, m});
  CHECK(res.differential(-3).is_zero());
  // Hom(mu, A) vanishes
  CHECK(res.differential(-1).is_zero());
}

TEST_CASE("induced maps on the three-vertex algebra with N = 2") {
  PrimeField f(7);
  PresetResolution<PrimeField> res(f, Preset::S3N2);
  auto m = f.neg(f.one());
  // Hom(phi_{6l+1})(e_i) = alpha_{i+2} - alpha_i, Hom(phi_{6l+4})(e_i) = alpha_i + alpha_{i+2}
  CHECK(res.differential(0).to_dense(f) == std::vector<std::uint32_t>{m, 1, 0, 0, m, 1, 1, 0, m});
  CHECK(res.differential(3).to_dense(f) == std::vector<std::uint32_t>{1, 1, 0, 0, 1, 1, 1, 0, 1});
  CHECK(res.dim(2) == 0);
  CHECK(res.differential(-1).is_zero());
}

TEST_CASE("preset tables") {
  SUBCASE("two vertices, N = 2: every degree is one-dimensional") {
    for (auto [r, d] : dims(PrimeField(5), Preset::S2N2, -12, 12)) CHECK_MESSAGE(d == 1, r);
    for (auto [r, d] : dims(RationalField(), Preset::S2N2, -12, 12)) CHECK_MESSAGE(d == 1, r);
  }
  SUBCASE("three vertices, N = 2, period six") {
    for (auto [r, d] : dims(PrimeField(7), Preset::S3N2, -13, 13)) CHECK_MESSAGE(d == s3n2_dim(r, false), r);
    for (auto [r, d] : dims(PrimeField(13), Preset::S3N2, -13, 13)) CHECK_MESSAGE(d == s3n2_dim(r, false), r);
  }
  SUBCASE("three vertices, N = 2, characteristic two, period three") {
    for (auto [r, d] : dims(ExtField(2, {1, 1, 1}), Preset::S3N2, -13, 13)) CHECK_MESSAGE(d == s3n2_dim(r, true), r);
  }
  SUBCASE("three vertices, N = 3: every degree is one-dimensional") {
    for (auto [r, d] : dims(PrimeField(7), Preset::S3N3, -12, 12)) CHECK_MESSAGE(d == 1, r);
    for (auto [r, d] : dims(PrimeField(2), Preset::S3N3, -12, 12)) CHECK_MESSAGE(d == 1, r);
  }
}

TEST_CASE("preset cohomology is periodic") {
  auto check = [](const std::map<int, std::size_t>& t, int period) {
    for (int r = -12; r + period <= 12; ++r) CHECK_MESSAGE(t.at(r) == t.at(r + period), r);
  };
  check(dims(PrimeField(5), Preset::S2N2, -12, 12), 2);
  check(dims(PrimeField(7), Preset::S3N3, -12, 12), 2);
  check(dims(PrimeField(7), Preset::S3N2, -12, 12), 6);
  check(dims(ExtField(2, {1, 1, 1}), Preset::S3N2, -12, 12), 3);
  // characteristic two shortens the period: degree 3 survives only there
  CHECK(dims(PrimeField(7), Preset::S3N2, 3, 3).at(3) == 0);
  CHECK(dims(ExtField(2, {1, 1, 1}), Preset::S3N2, 3, 3).at(3) == 1);
}

TEST_CASE("preset generators") {
  auto t = preset_complete_cohomology(PrimeField(5), Preset::S2N2, -2, 2);
  CHECK(t.generators.at(0) == std::vector<std::string>{"[e1(x)e1 -> e1] + [e2(x)e2 -> e2]"});
  CHECK(t.generators.at(1) == std::vector<std::string>{"[e1(x)e2 -> a1]"});
  CHECK(t.generators.at(-1) == std::vector<std::string>{"a1(x)e1(x)e1"});
  auto u = preset_complete_cohomology(PrimeField(7), Preset::S3N2, -6, 1);
  CHECK(u.generators.at(-5) == std::vector<std::string>{"a2(x)e1(x)e2"});
  CHECK(u.generators.at(-6) == std::vector<std::string>{"e3(x)e1(x)e3 + e1(x)e2(x)e1 + e2(x)e3(x)e2"});
  CHECK(u.generators.at(-1).empty());
}

TEST_CASE("inadmissible fields") {
  auto kind = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ValidationFailure;
  };
  CHECK(kind([] { preset_complete_cohomology(PrimeField(2), Preset::S2N2, 0, 1); }) ==
        ErrorKind::InadmissibleCharacteristic);
  CHECK(kind([] { preset_complete_cohomology(PrimeField(3), Preset::S3N3, 0, 1); }) ==
        ErrorKind::InadmissibleCharacteristic);
  CHECK(kind([] { preset_complete_cohomology(PrimeField(3), Preset::S3N2, 0, 1); }) ==
        ErrorKind::InadmissibleCharacteristic);
  // no cube root of unity
  CHECK(kind([] { preset_complete_cohomology(PrimeField(5), Preset::S3N2, 0, 1); }) ==
        ErrorKind::InadmissibleCharacteristic);
  CHECK(kind([] { preset_complete_cohomology(RationalField(), Preset::S3N2, 0, 1); }) ==
        ErrorKind::InadmissibleCharacteristic);
  CHECK(kind([] { preset_complete_cohomology(PrimeField(2), Preset::S3N2, 0, 1); }) ==
        ErrorKind::InadmissibleCharacteristic);
  CHECK_NOTHROW(preset_complete_cohomology(ExtField(2, {1, 1, 1}), Preset::S3N2, 0, 1));
}

TEST_CASE("cross validation against the bar side") {
  auto r1 = cross_validate(PrimeField(5), Preset::S2N2, -5, 5);
  CHECK(r1.match());
  for (auto [r, d] : r1.bar) CHECK(d == 1);
  auto r2 = cross_validate(PrimeField(7), Preset::S3N3, -4, 4);
  CHECK(r2.match());
  for (auto [r, d] : r2.bar) CHECK(d == 1);
  auto r3 = cross_validate(PrimeField(7), Preset::S3N2, -7, 2);
  CHECK(r3.match());
  for (auto [r, d] : r3.bar) CHECK_MESSAGE(d == s3n2_dim(r, false), r);
  CHECK(cross_validate(RationalField(), Preset::S2N2, -3, 3).match());
  CHECK(cross_validate(ExtField(2, {1, 1, 1}), Preset::S3N2, -4, 3).match());
}

TEST_CASE("cross validation respects the budget") {
  CHECK_THROWS_AS(cross_validate(PrimeField(7), Preset::S3N2, -7, 0, 1000), Error);
}
