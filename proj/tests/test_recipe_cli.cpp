#include <doctest.h>

#include "nalab/recipe.hpp"

using namespace nalab;
using nlohmann::json;

namespace {

std::string recipe_path(const std::string& name) { return std::string(NALAB_TEST_RECIPES) + "/" + name; }

Error expect_error(const std::string& text) {
  try {
    parse_recipe_text(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error for " << text);
  return Error(ErrorCode::InvalidArgument, "unreachable");
}

RunResult run(const std::string& cmd, const std::string& text, RunOptions opts = {}) {
  return run_command(cmd, parse_recipe_text(text), opts);
}

}  // namespace

TEST_CASE("parse errors carry line and column") {
  try {
    parse_recipe_file(recipe_path("malformed.json"));
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(e.witness()["line"] == 2);
    CHECK(e.witness()["column"] == 15);
  }
  auto e = expect_error("{\"kind\": \"scalar\"");
  CHECK(e.code() == ErrorCode::ParseError);
  CHECK(e.witness()["line"] == 1);
}

TEST_CASE("schema errors point at the offending field") {
  auto e = expect_error(R"({"kind":"cayley_tower","base":"Q","alpha":[-1]})");
  CHECK(e.code() == ErrorCode::SchemaError);
  CHECK(e.witness()["path"] == "/levels");

  e = expect_error(R"({"kind":"matrix_ring","base":{"kind":"scalar"},"n":2})");
  CHECK(e.code() == ErrorCode::SchemaError);
  CHECK(e.witness()["path"] == "/base/ring");

  e = expect_error(R"({"kind":"cayley_tower","base":"Q","levels":2,"alpha":[-1]})");
  CHECK(e.witness()["path"] == "/alpha");

  e = expect_error(R"({"kind":"matrix_ring","base":"Q","n":"two"})");
  CHECK(e.witness()["path"] == "/n");

  e = expect_error(R"({"kind":"cayley_dickson","base":"Q","alpha":-1,"twists":{"xy":"straight"}})");
  CHECK(e.witness()["path"] == "/twists/xy");

  e = expect_error(R"([1,2,3])");
  CHECK(e.code() == ErrorCode::SchemaError);
  CHECK(e.witness()["path"] == "/");
}

TEST_CASE("unknown kinds are reported with their path") {
  try {
    parse_recipe_file(recipe_path("unknown_kind.json"));
    FAIL("expected UnknownKind");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownKind);
    CHECK(e.witness()["kind"] == "banana");
    CHECK(e.witness()["path"] == "/kind");
  }
  auto e = expect_error(R"({"kind":"skew_group_ring","base":{"kind":"mango"},"group":"Z2","action":"identity"})");
  CHECK(e.code() == ErrorCode::UnknownKind);
  CHECK(e.witness()["path"] == "/base/kind");
}

TEST_CASE("every recipe kind builds") {
  struct Case {
    const char* text;
    std::size_t dim;     // 0 for table rings
    std::uint64_t size;  // 0 for infinite rings
  };
  const Case cases[] = {
      {R"({"kind":"scalar","ring":"Q"})", 1, 0},
      {R"({"kind":"scalar","ring":"Zn:6"})", 0, 6},
      {R"({"kind":"scalar","ring":"F8"})", 3, 8},
      {R"({"kind":"scalar","ring":"Fp:3[y]/y^2"})", 2, 9},
      {R"({"kind":"table_ring","add":[[0,1],[1,0]],"mul":[[0,0],[0,1]]})", 0, 2},
      {R"({"kind":"structure_algebra","field":"Fp:2","dim":1,"constants":[[[1]]]})", 1, 2},
      {R"({"kind":"cayley_dickson","base":"Q","alpha":-1,"sigma":"identity"})", 2, 0},
      {R"({"kind":"cayley_tower","base":"Fp:3","levels":3})", 8, 6561},
      {R"({"kind":"twisted_group_ring","base":"Q","cocycle":"bales:2"})", 4, 0},
      {R"({"kind":"twisted_group_ring","base":"Fp:3","group":"Z2","cocycle":[[1,1],[1,2]]})", 2, 9},
      {R"({"kind":"skew_group_ring","base":{"kind":"scalar","ring":"F4"},"group":"Z2","action":"frobenius"})", 4, 16},
      {R"({"kind":"crossed_product","base":"Fp:3","group":"Z2","action":"identity","cocycle":[[1,1],[1,2]]})", 2, 9},
      {R"({"kind":"matrix_ring","base":"Fp:2","n":3,"grading":"parity"})", 9, 512},
      {R"({"kind":"ore_extension","base":"Fp:5[y]/y^5","delta":"derivative"})", 5, 3125},
      {R"({"kind":"dynamics","points":3,"group":"Z3","field":"Fp:2","action":[[0,1,2],[1,2,0],[2,0,1]]})", 9, 512},
  };
  for (const auto& c : cases) {
    CAPTURE(c.text);
    Built b = build_recipe(parse_recipe_text(c.text));
    if (b.ring().is_algebra()) CHECK(b.ring().dim() == c.dim);
    else CHECK(c.dim == 0);
    CHECK(b.ring().cardinality() == c.size);
  }
}

TEST_CASE("invalid sigma-derivations are rejected at build time") {
  auto r = parse_recipe_text(R"({"kind":"ore_extension","base":"Fp:2[y]/y^2","delta":[[1,0],[0,0]]})");
  try {
    build_recipe(r);
    FAIL("expected ValidationFailure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValidationFailure);
  }
}

TEST_CASE("report keys and determinism") {
  const std::string text = R"({"kind":"matrix_ring","base":"Fp:2","n":2})";
  auto a = run("check", text);
  auto b = run("check", text);
  CHECK(a.report.dump() == b.report.dump());
  for (const char* k : {"version", "command", "recipe_digest", "results", "certificates", "seed", "caps"})
    CHECK(a.report.contains(k));
  CHECK_FALSE(a.report.contains("timings_ms"));
  CHECK(a.report["results"]["simplicity"] == "Simple");

  RunOptions t;
  t.timings = true;
  CHECK(run("check", text, t).report.contains("timings_ms"));

  RunOptions seeded;
  seeded.limits.seed = 99;
  CHECK(run("check", text, seeded).report["seed"] == 99);
}

TEST_CASE("digests are stable and distinguish recipes") {
  auto a = parse_recipe_text(R"({"kind":"scalar","ring":"Q"})");
  auto b = parse_recipe_text("{ \"ring\" : \"Q\", \"kind\" : \"scalar\" }");
  auto c = parse_recipe_text(R"({"kind":"scalar","ring":"Fp:2"})");
  CHECK(recipe_digest(a) == recipe_digest(b));
  CHECK(recipe_digest(a) != recipe_digest(c));
  CHECK(recipe_digest(a).size() == 16);
}

TEST_CASE("expectations drive the exit code") {
  auto z4 = parse_recipe_file(recipe_path("z4.json"));
  RunOptions o;
  o.expect = Expectation::Simple;
  auto r = run_command("check", z4, o);
  CHECK(r.exit_code == 1);
  CHECK(r.report["results"]["expectation"]["met"] == false);
  CHECK(r.report["results"]["simplicity"]["NotSimple"]["witness"] == json::array({0, 2}));

  o.expect = Expectation::NotSimple;
  CHECK(run_command("check", z4, o).exit_code == 0);

  auto m2 = parse_recipe_file(recipe_path("m2_f2.json"));
  o.expect = Expectation::Simple;
  CHECK(run_command("check", m2, o).exit_code == 0);
}

TEST_CASE("certify runs the pipelines for the kind") {
  auto r = run_command("certify", parse_recipe_file(recipe_path("f4_frobenius.json")), {});
  CHECK(r.exit_code == 0);
  const auto& certs = r.report["certificates"];
  REQUIRE(certs.is_array());
  CHECK(certs.size() >= 3);
  for (const auto& c : certs) CHECK(c["oracle"] != "disagrees");

  auto t = run_command("certify", parse_recipe_file(recipe_path("tower_q3.json")), {});
  CHECK(t.exit_code == 0);
  CHECK(t.report["certificates"].size() == 4);
}

TEST_CASE("checks") {
  RunOptions o;
  o.checks = {"invariance", "degree-map", "grading"};
  auto r = run("check", R"({"kind":"skew_group_ring","base":{"kind":"scalar","ring":"F4"},"group":"Z2","action":"frobenius"})", o);
  CHECK(r.exit_code == 0);
  CHECK(r.report["results"]["invariance"]["equivalence_holds"] == true);
  CHECK(r.report["results"]["degree-map"]["verdict"] == "Valid");
  CHECK(r.report["results"].contains("grading"));

  auto ore = run("check", R"({"kind":"ore_extension","base":"Fp:3[y]/y^3","delta":"derivative"})", o);
  CHECK(ore.exit_code == 0);
  CHECK(ore.report["results"]["invariance"]["equivalence_holds"] == true);

  o.checks = {"bogus"};
  CHECK_THROWS_AS(run("check", R"({"kind":"scalar","ring":"Q"})", o), Error);
  CHECK_THROWS_AS(run("explode", R"({"kind":"scalar","ring":"Q"})"), Error);
}

TEST_CASE("tables are suppressed above the threshold") {
  auto small = run("table", R"({"kind":"scalar","ring":"Zn:4"})");
  CHECK(small.report["results"]["table"]["size"] == 4);
  CHECK(small.report["results"]["table"]["mul"][2][2] == 0);

  auto big = run("table", R"({"kind":"matrix_ring","base":"Fp:2","n":3})");
  CHECK(big.report["results"]["table"].contains("note"));
  CHECK(big.report["results"]["table"]["dimension"] == 9);

  RunOptions f;
  f.force = true;
  auto forced = run("table", R"({"kind":"matrix_ring","base":"Fp:2","n":2})", f);
  CHECK(forced.report["results"]["table"]["size"] == 16);
  CHECK(run("table", R"({"kind":"matrix_ring","base":"Fp:2","n":3})", f).report["results"]["table"]["size"] == 512);
}

TEST_CASE("text rendering") {
  auto r = run("check", R"({"kind":"scalar","ring":"Zn:4"})");
  const std::string s = render_text(r.report);
  CHECK_FALSE(s.empty());
  CHECK(s.find("NotSimple") != std::string::npos);
}
