#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wsub/catalog.hpp"
#include "wsub/cli.hpp"
#include "wsub/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace wsub;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args)
{
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text)
{
  auto path = std::filesystem::temp_directory_path() / ("wsub_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

} // namespace

TEST_CASE("catalog algebras round-trip through the algebra file format")
{
  for (const auto& name : catalog::names()) {
    CAPTURE(name);
    AlgebraSpec spec = load_algebra(name);
    std::string text = emit_algebra_spec(spec);
    AlgebraSpec back = parse_algebra_spec(text);
    CHECK(back == spec);
    CHECK(emit_algebra_spec(back) == text);
  }
}

TEST_CASE("fractional coefficients survive a round trip")
{
  const std::string text = R"({"name": "scaled", "dim": 3,
    "brackets": [{"i": 1, "j": 2, "coeffs": ["0", "0", "1/3"]}],
    "weighted_bases": [{"name": "b", "indices": [1, 2], "weights": ["1", "3/2"]}]})";
  AlgebraSpec spec = parse_algebra_spec(text);
  CHECK(spec.algebra.structure_constant(0, 1, 2) == Rational(1, 3));
  CHECK(spec.algebra.structure_constant(1, 0, 2) == Rational(-1, 3));
  CHECK(spec.bases[0].weights[1] == Rational(3, 2));
  CHECK(parse_algebra_spec(emit_algebra_spec(spec)) == spec);
  CHECK(emit_algebra_spec(spec).find("\"1/3\"") != std::string::npos);
}

TEST_CASE("malformed algebra files are rejected with a position")
{
  // [e1,e2] = e3, [e1,e3] = e1 violates Jacobi at (1,2,3).
  const std::string bad = R"({"name": "bad", "dim": 3, "brackets": [
    {"i": 1, "j": 2, "coeffs": ["0", "0", "1"]},
    {"i": 1, "j": 3, "coeffs": ["1", "0", "0"]}]})";
  try {
    parse_algebra_spec(bad);
    FAIL("accepted an algebra violating Jacobi");
  } catch (const SpecError& e) {
    CHECK(std::string(e.what()).find("(1,2,3)") != std::string::npos);
  }

  try {
    parse_algebra_spec("{\"name\": \"x\",\n \"dim\": }");
    FAIL("accepted broken JSON");
  } catch (const SpecError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  auto message = [](const std::string& text) {
    try {
      parse_algebra_spec(text);
    } catch (const SpecError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message(R"({"name": "x", "dim": 2, "brackets": [{"i": 1, "j": 3, "coeffs": ["0", "0"]}]})")
            .find("/brackets/0/j") != std::string::npos);
  CHECK(message(R"({"name": "x", "dim": 2, "brackets": [{"i": 1, "j": 2, "coeffs": ["0", "1/0"]}]})")
            .find("/brackets/0/coeffs/1") != std::string::npos);
  CHECK(message(R"({"name": "x", "dim": 2, "brackets": [{"i": 2, "j": 1, "coeffs": ["0", "0"]}]})")
            .find("i < j") != std::string::npos);
  CHECK(message(R"({"name": "x", "brackets": []})").find("dim") != std::string::npos);

  auto bad_file = temp_file("bad.json", bad);
  Run r = run({"contract", bad_file});
  CHECK(r.code == 2);
  CHECK(r.err.find("(1,2,3)") != std::string::npos);
}

TEST_CASE("form files")
{
  Form f = parse_form(R"({"weights": ["1", "1"], "terms": [{"alpha": [1, 2], "re": "1/2", "im": "-3"}]})");
  CHECK(f(MultiIndex{0, 1}) == ComplexRational{Rational(1, 2), -3});
  CHECK(parse_form(form_to_json(f).dump()) == f);
  CHECK_THROWS_AS(parse_form(R"({"weights": ["1"], "terms": [{"alpha": [2], "re": "1"}]})"), SpecError);
}

TEST_CASE("contract command")
{
  Run r = run({"contract", "su2", "--weights", "1,1"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["schema"] == "wsub.report/1");
  CHECK(j["results"]["q_star"] == "4");
  CHECK(j["results"]["isomorphic_to_heisenberg1"] == true);
  CHECK(j["verdict"] == "pass");

  Run csv = run({"contract", "heisenberg2", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("i,j,k,value\n", 0) == 0);

  Run q = run({"dimension", "heisenberg2"});
  CHECK(json::parse(q.out)["results"]["q_star"] == "6");
}

TEST_CASE("exit codes")
{
  auto negx = temp_file("negx.json", R"({"weights": ["1", "1"], "terms": [{"alpha": [1, 1], "re": "-1", "im": "0"}]})");
  const std::vector<std::pair<std::vector<std::string>, int>> corpus{
      {{"contract", "so3", "--weights", "1,1"}, 0},
      {{"filtration", "engel4"}, 0},
      {{"reduce", "sl2r", "--weights", "1,2", "--indices", "1,2"}, 0},
      {{"form", "rockland-check", "--sublaplacian", "2"}, 0},
      {{"form", "rockland-check", "--file", negx}, 1},
      {{"verify-growth", "torus2", "--from", "1e2", "--to", "1e5"}, 0},
      {{"heat-trace", "heisenberg", "--t", "0.01"}, 0},
      {{"multiplier-bound", "--multiplier", "exp:1", "--exponent", "1"}, 0},
      {{"annuli", "--t", "1e-2,1e-3"}, 0},
      {{"contract", "no-such-algebra"}, 2},
      {{"verify-growth", "klein-bottle"}, 2},
      {{"verify-growth", "su2", "--from", "10", "--to", "50"}, 2},
      {{"multiplier-bound", "--multiplier", "exp:1", "--algebra", "heisenberg1", "--p", "3"}, 2},
      {{"heat-trace", "su2", "--t", "-1"}, 2},
      {{"form", "build"}, 2},
      {{"--format", "xml", "dimension", "su2"}, 2},
      {{}, 2},
  };
  for (const auto& [args, code] : corpus) {
    std::string line;
    for (const auto& a : args) line += a + " ";
    CAPTURE(line);
    Run r = run(args);
    CHECK(r.code == code);
    if (code == 2) CHECK_FALSE(r.err.empty());
  }
}

TEST_CASE("verify-growth")
{
  for (const auto& [backend, target] : std::vector<std::pair<std::string, std::string>>{{"su2", "2"}, {"torus3", "3/2"}}) {
    CAPTURE(backend);
    Run r = run({"verify-growth", backend, "--from", "1e2", "--to", "1e5"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["target_exponent"] == target);
    CHECK(std::abs(j["results"]["fitted_exponent"].get<double>() - std::stod(target == "3/2" ? "1.5" : target)) < 0.05);
  }
  Run csv = run({"verify-growth", "torus1", "--format", "csv", "--from", "1e3", "--to", "1e5"});
  CHECK(csv.out.rfind("s,value,fitted,target,residual,verdict\n", 0) == 0);
}

TEST_CASE("output is deterministic and reports round-trip")
{
  const std::vector<std::string> args{"--seed", "7", "embedding-witness", "--dim", "1", "--cutoffs", "8,16", "--trials", "8"};
  Run a = run(args), b = run(args);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());

  json j = json::parse(a.out);
  CHECK(j["seed"] == 7);
  Report rep = report_from_json(j);
  CHECK(report_to_json(rep) == j);
  CHECK(emit_json(rep) == a.out);

  Run c = run({"--seed", "8", "embedding-witness", "--dim", "1", "--cutoffs", "8,16", "--trials", "8"});
  CHECK(c.out != a.out);
}

TEST_CASE("--out writes the report to a file")
{
  auto path = (std::filesystem::temp_directory_path() / "wsub_test_out.csv").string();
  Run r = run({"--out", path, "--format", "csv", "annuli", "--t", "0.01"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,I,ratio,certified_tail,verdict");
}

TEST_CASE("format_double reads back exactly")
{
  for (double v : {0.1, 1.0 / 3, 1e-300, 12345.678, -2.5}) CHECK(std::stod(format_double(v)) == v);
}
