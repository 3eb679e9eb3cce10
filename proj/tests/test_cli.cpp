#include <doctest.h>

#include <functional>
#include <set>

#include "frobhh/cli.hpp"

using namespace frobhh;

namespace {

Json nakayama(const std::string& field, int s, int n) {
  return {{"field", field}, {"algebra", {{"type", "nakayama"}, {"vertices", s}, {"radical_power", n}}}};
}

// s2n2 by structure constants, basis e1 e2 a1 a2, with a caller-supplied Gram matrix
Json s2n2_raw(const std::string& field, const Json& gram) {
  Json t = Json::parse(R"([
    [[1,0,0,0], [0,0,0,0], [0,0,1,0], [0,0,0,0]],
    [[0,0,0,0], [0,1,0,0], [0,0,0,0], [0,0,0,1]],
    [[0,0,0,0], [0,0,1,0], [0,0,0,0], [0,0,0,0]],
    [[0,0,0,1], [0,0,0,0], [0,0,0,0], [0,0,0,0]]])");
  return {{"field", field},
          {"algebra",
           {{"type", "structure_constants"},
            {"labels", {"e1", "e2", "a1", "a2"}},
            {"table", t},
            {"unit", {1, 1, 0, 0}},
            {"gram", gram}}}};
}

const Json kTraceGram = Json::parse("[[0,0,1,0],[0,0,0,1],[0,1,0,0],[1,0,0,0]]");

JobResult run(const std::string& cmd, Json input, std::function<void(JobConfig&)> tweak = {}) {
  JobConfig cfg;
  cfg.command = cmd;
  cfg.input = std::move(input);
  if (tweak) tweak(cfg);
  return run_job(cfg);
}

std::vector<std::size_t> dims(const Json& report) {
  std::vector<std::size_t> out;
  for (auto& row : report["table"]) out.push_back(row["dim"].get<std::size_t>());
  return out;
}

std::vector<bool> eval_bools(const JobResult& r) {
  std::vector<bool> out;
  for (auto& s : r.report["results"])
    if (s["kind"] == "equality") out.push_back(s["value"].get<bool>());
  return out;
}

const Json* invariant(const Json& report, const std::string& id) {
  for (auto& x : report["invariants"])
    if (x["id"] == id) return &x;
  return nullptr;
}

}  // namespace

TEST_CASE("field specs") {
  CHECK(parse_field("Q") == FieldSpec::rationals());
  CHECK(parse_field("F5") == FieldSpec::prime(5));
  CHECK(parse_field("F_7") == FieldSpec::prime(7));
  CHECK(parse_field("GF(4)") == FieldSpec::extension(2, {1, 1, 1}));
  auto f9 = parse_field("F_9");
  CHECK(f9.p == 3);
  CHECK(f9.modulus.size() == 3);
  CHECK(parse_field(Json::parse(R"({"p": 2, "modulus": [1, 1, 1]})")) == FieldSpec::extension(2, {1, 1, 1}));
  CHECK(parse_field(Json::parse(R"({"p": 3})")) == FieldSpec::prime(3));
  for (const char* bad : {"F6", "F1", "R", "Fx"}) CHECK_THROWS_AS(parse_field(bad), Error);
  // x^2 + 1 is reducible over F_2
  CHECK_THROWS_AS(parse_field(Json::parse(R"({"p": 2, "modulus": [1, 0, 1]})")), Error);
}

TEST_CASE("windows and input parsing") {
  auto w = parse_window("-6:6");
  CHECK(w.lo == -6);
  CHECK(w.hi == 6);
  CHECK(parse_window("0:0").hi == 0);
  CHECK_THROWS_AS(parse_window("3:1"), Error);
  CHECK_THROWS_AS(parse_window("3"), Error);
  try {
    parse_input("{\n  \"field\": \"F5\",\n  \"algebra\": [1,,2]\n}", "alg.json");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("alg.json:3:") != std::string::npos);
  }
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ErrorKind::ValidationFailure) == 1);
  CHECK(exit_code_for(ErrorKind::ParseError) == 2);
  CHECK(exit_code_for(ErrorKind::DegreeOutOfWindow) == 2);
  CHECK(exit_code_for(ErrorKind::BudgetExceeded) == 3);
  CHECK(run("info", Json::parse(R"({"field": "F5"})")).exit_code == 2);
  CHECK(run("info", nakayama("F4x", 2, 2)).exit_code == 2);
  CHECK(run("frobnicate", nakayama("F5", 2, 2)).exit_code == 2);
  auto r = run("cohomology", nakayama("F5", 3, 3), [](JobConfig& c) {
    c.window = Window{-5, -5};
    c.budget = 100;
  });
  CHECK(r.exit_code == 3);
  CHECK(r.report["error"]["kind"] == "BudgetExceeded");
}

TEST_CASE("info") {
  SUBCASE("two vertices over Q: eigenvalues 1 and -1") {
    auto r = run("info", nakayama("Q", 2, 2));
    REQUIRE(r.exit_code == 0);
    CHECK(r.report["dim"] == 4);
    CHECK(r.report["diagonalizable"] == true);
    std::set<std::string> vals;
    for (auto& e : r.report["eigenvalues"]) vals.insert(e["value"].get<std::string>());
    CHECK(vals == std::set<std::string>{"1", "-1"});
    CHECK(r.text.find("diagonalizable: yes") != std::string::npos);
  }
  SUBCASE("two vertices over F2 is not diagonalizable") {
    auto r = run("info", nakayama("F2", 2, 2));
    REQUIRE(r.exit_code == 0);
    CHECK(r.report["diagonalizable"] == false);
  }
  SUBCASE("the field itself has nu = id") {
    Json in = {{"field", "F5"},
               {"algebra",
                {{"type", "structure_constants"},
                 {"labels", {"1"}},
                 {"table", Json::parse("[[[1]]]")},
                 {"unit", {1}},
                 {"gram", Json::parse("[[3]]")}}}};
    auto r = run("info", in);
    REQUIRE(r.exit_code == 0);
    CHECK(r.report["nu"] == Json::parse(R"([["1"]])"));
  }
  SUBCASE("structure constants agree with the quiver preset") {
    auto a = run("info", s2n2_raw("F5", kTraceGram)), b = run("info", nakayama("F5", 2, 2));
    CHECK(a.report["nu"] == b.report["nu"]);
    CHECK(a.report["gram"] == b.report["gram"]);
  }
  SUBCASE("non-associative input is rejected") {
    auto in = s2n2_raw("F5", kTraceGram);
    in["algebra"]["table"][2][1] = {0, 0, 0, 1};  // a1 e2 = a2
    auto r = run("info", in);
    CHECK(r.exit_code == 2);
    CHECK(r.report["error"]["kind"] == "NonAssociative");
  }
  SUBCASE("degenerate form is rejected") {
    auto r = run("info", s2n2_raw("F5", Json::parse("[[0,0,1,0],[0,0,0,0],[0,1,0,0],[1,0,0,0]]")));
    CHECK(r.exit_code == 2);
  }
  SUBCASE("fractions in the input") {
    auto g = kTraceGram;
    g[0][2] = "2/3";
    g[2][1] = "2/3";
    g[1][3] = "2/3";
    g[3][0] = "2/3";
    auto r = run("info", s2n2_raw("Q", g));
    REQUIRE(r.exit_code == 0);
    CHECK(r.report["gram"][0][2] == "2/3");
  }
}

TEST_CASE("cohomology tables") {
  SUBCASE("two vertices over F5: thirteen ones, both ways") {
    auto r = run("cohomology", nakayama("F5", 2, 2), [](JobConfig& c) { c.preset_resolution = true; });
    REQUIRE(r.exit_code == 0);
    CHECK(dims(r.report) == std::vector<std::size_t>(13, 1));
    CHECK(r.report["table"].front()["degree"] == -6);
    for (auto& row : r.report["table"]) CHECK(row["bar"] == row["preset"]);
  }
  SUBCASE("three vertices, N = 2 over F7 on [-7, 2]") {
    auto r = run("cohomology", nakayama("F7", 3, 2), [](JobConfig& c) { c.window = Window{-7, 2}; });
    REQUIRE(r.exit_code == 0);
    CHECK(dims(r.report) == std::vector<std::size_t>{0, 1, 1, 0, 0, 0, 0, 1, 1, 0});
  }
  SUBCASE("a one-degree window") {
    auto r = run("cohomology", nakayama("F5", 3, 3), [](JobConfig& c) { c.window = Window{0, 0}; });
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.report["table"].size() == 1);
    // dim Z(A) - rank of the norm map, by brute force
    PrimeField f(5);
    QuiverPresentation q{3, 3};
    auto a = build_algebra(f, q);
    auto fr = socle_trace_form(a, nakayama_socle(q));
    std::size_t d = a.dim();
    DenseMatrix<PrimeField> comm(f, d * d, d);  // x -> [x, b_j] stacked over j
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < a.product(i, j).nnz(); ++k)
          comm(j * d + a.product(i, j).idx[k], i) = f.add(comm(j * d + a.product(i, j).idx[k], i), a.product(i, j).val[k]);
        for (std::size_t k = 0; k < a.product(j, i).nnz(); ++k)
          comm(j * d + a.product(j, i).idx[k], i) = f.sub(comm(j * d + a.product(j, i).idx[k], i), a.product(j, i).val[k]);
      }
    std::vector<DenseVec<PrimeField>> u, v;
    for (std::size_t i = 0; i < d; ++i) {
      DenseVec<PrimeField> e(d, 0);
      e[i] = 1;
      u.push_back(e);
      v.push_back(fr.dual_vector(f, i));
    }
    auto center = kernel(f, to_sparse(f, comm)).dim();
    auto norm = rank(f, to_sparse(f, norm_map_std(a, u, v)));
    CHECK(r.report["table"][0]["dim"].get<std::size_t>() == center - norm);
  }
  SUBCASE("preset resolution only for the three presets") {
    auto r = run("cohomology", nakayama("F5", 2, 3), [](JobConfig& c) { c.preset_resolution = true; });
    CHECK(r.exit_code == 2);
    r = run("cohomology", nakayama("F2", 2, 2), [](JobConfig& c) { c.preset_resolution = true; });
    CHECK(r.exit_code == 2);
    CHECK(r.report["error"]["kind"] == "InadmissibleCharacteristic");
  }
  SUBCASE("bar window narrower than the preset window") {
    auto r = run("cohomology", nakayama("F7", 3, 2), [](JobConfig& c) {
      c.preset_resolution = true;
      c.window = Window{-13, 13};
      c.bar_window = Window{-1, 1};
    });
    REQUIRE(r.exit_code == 0);
    CHECK(r.report["table"].size() == 27);
    CHECK(r.report["table"][0]["bar"].is_null());
    CHECK(r.report["table"][13]["bar"] == 1);
    CHECK(r.report["table"][0]["dim"] == 0);  // degree -13
    CHECK(r.report["table"][1]["dim"] == 1);  // degree -12
  }
  SUBCASE("JSON round trip") {
    auto r = run("cohomology", nakayama("F5", 2, 2));
    auto back = Json::parse(r.report.dump());
    CHECK(back == r.report);
    CHECK(dims(back) == dims(r.report));
  }
}

TEST_CASE("eval") {
  auto ev = [](const std::string& expr, const std::string& field = "F5") {
    return run("eval", nakayama(field, 2, 2), [&](JobConfig& c) { c.expr = expr; });
  };
  SUBCASE("beta squared vanishes") {
    auto r = ev("let b = class(1,0); b*b == 0");
    REQUIRE(r.exit_code == 0);
    CHECK(eval_bools(r) == std::vector<bool>{true});
  }
  SUBCASE("alpha gamma does not vanish") {
    auto r = ev("let a = class(2,0); let g = class(-2,0); a*g == 0");
    REQUIRE(r.exit_code == 0);
    CHECK(eval_bools(r) == std::vector<bool>{false});
  }
  SUBCASE("delta of a degree-zero class") {
    auto r = ev("delta(class(0,0)) == 0");
    REQUIRE(r.exit_code == 0);
    CHECK(eval_bools(r) == std::vector<bool>{true});
  }
  SUBCASE("arithmetic and coordinates") {
    auto r = ev("let b = class(1,0)\nb + b - 3*b == -b\n2*class(-1,0)\n(class(1,0) * class(1,0)) == 0");
    REQUIRE(r.exit_code == 0);
    CHECK(eval_bools(r) == std::vector<bool>{true, true});
    CHECK(r.report["results"][2]["degree"] == -1);
    CHECK(r.report["results"][2]["coordinates"] == Json::parse(R"(["2"])"));
  }
  SUBCASE("brackets agree in positive degrees") {
    auto r = ev("bracket(class(1,0), class(2,0)) == gbracket(class(1,0), class(2,0))");
    CHECK(eval_bools(r) == std::vector<bool>{true});
  }
  SUBCASE("errors") {
    CHECK(ev("class(7,0)").report["error"]["kind"] == "DegreeOutOfWindow");
    CHECK(ev("class(4,0)*class(4,0)").report["error"]["kind"] == "DegreeOutOfWindow");
    CHECK(ev("class(1,1)").report["error"]["kind"] == "IndexOutOfRange");
    CHECK(ev("foo").exit_code == 2);
    CHECK(ev("class(1,0) + class(2,0)").report["error"]["kind"] == "DegreeMismatch");
    CHECK(ev("class(1,0) +").exit_code == 2);
    auto r = ev("delta(class(1,0))", "F2");
    CHECK(r.report["error"]["kind"] == "NotDiagonalizable");
  }
}

TEST_CASE("verify") {
  SUBCASE("two vertices over F5 is green") {
    auto r = run("verify", nakayama("F5", 2, 2));
    CHECK(r.exit_code == 0);
    CHECK(r.report["failed"] == 0);
    CHECK(r.report["skipped"] == 0);
    CHECK(r.report["invariants"].size() >= 25);
    std::set<std::string> ids;
    for (auto& x : r.report["invariants"]) ids.insert(x["id"].get<std::string>());
    CHECK(ids.size() == r.report["invariants"].size());
  }
  SUBCASE("corrupted Gram matrix fails associativity of the form") {
    auto g = kTraceGram;
    g[3][1] = 2;
    auto r = run("verify", s2n2_raw("F5", g));
    CHECK(r.exit_code == 1);
    auto x = invariant(r.report, "form.associativity");
    REQUIRE(x);
    CHECK((*x)["status"] == "fail");
    // <a2, e2> = 2 was injected while a2 e2 = 0
    CHECK((*x)["witness"] == "<e2 a2, e2> != <e2, a2 e2>");
  }
  SUBCASE("F2 skips the BV section") {
    auto r = run("verify", nakayama("F2", 2, 2));
    CHECK(r.exit_code == 0);
    for (const char* id : {"bv.delta_squared", "bv.seven_term", "bv.bracket_antisymmetry"}) {
      auto x = invariant(r.report, id);
      REQUIRE(x);
      CHECK((*x)["status"] == "skipped: not diagonalizable");
    }
  }
  SUBCASE("output is byte-identical across runs") {
    auto a = run("verify", nakayama("F7", 3, 2)), b = run("verify", nakayama("F7", 3, 2));
    CHECK(a.exit_code == 0);
    CHECK(a.report.dump() == b.report.dump());
    CHECK(a.text == b.text);
  }
  SUBCASE("the seed changes the sampled classes, not the verdict") {
    auto r = run("verify", nakayama("F5", 2, 2), [](JobConfig& c) { c.seed = 7; });
    CHECK(r.exit_code == 0);
    CHECK(r.report["seed"] == 7);
  }
}
