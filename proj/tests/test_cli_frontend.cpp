#include "support/random_data.hpp"

#include "lieq/report.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace lieq;
using namespace lieq::testing;

namespace {

const char* kCase1 =
    "manifold dim 2\n"
    "vars x y\n"
    "distribution V = span(d/dy)\n"
    "truncation 8\n"
    "equation R order 1 on V: p[1,0] = 0\n"
    "transversal N: y=0\n";

const char* kCase2 =
    "manifold dim 2\n"
    "vars x y\n"
    "distribution V = span(d/dy)\n"
    "truncation 6\n"
    "equation R order 1 on V: p[0,1] = x*p[1,0]  # beta = x\n"
    "symbol A = 1, B = x\n"
    "section Id order 2: base = (x, y)\n"
    "section Bad order 2: base = (x, y); s_y[1,1] = 1\n";

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const char* cli = std::getenv("LIEQ_CLI");
  REQUIRE(cli != nullptr);
  std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string examples() {
  const char* e = std::getenv("LIEQ_EXAMPLES");
  REQUIRE(e != nullptr);
  return e;
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("lieq_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

Json run_json(const ProblemSpec& spec, CommandArgs args) { return Json::parse(emit_json(run_command(spec, args))); }

}  // namespace

TEST_CASE("parsing the Case-1 file") {
  ProblemSpec s = parse_problem(kCase1);
  CHECK(s.dim == 2);
  CHECK(s.vars == std::vector<std::string>{"x", "y"});
  CHECK(s.fiber == std::vector<int>{1});
  CHECK(s.truncation == 8);
  REQUIRE(s.equations.size() == 1);
  const auto& eq = s.equations[0];
  CHECK(eq.order == 1);
  REQUIRE(eq.relations.size() == 1);
  REQUIRE(eq.relations[0].terms.size() == 1);
  CHECK(eq.relations[0].terms[0].first.component == 1);
  CHECK(eq.relations[0].terms[0].first.alpha == MultiIndex{1, 0});
  CHECK(eq.relations[0].terms[0].second == Series::constant(2, 8, 1));
  CHECK(s.transversal_zero == std::vector<int>{1});
}

TEST_CASE("parse diagnostics carry positions") {
  std::string bad = std::string(kCase1).replace(std::string(kCase1).find("p[1,0]"), 6, "p[2,0]");
  try {
    parse_problem(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
    CHECK(e.column() == 26);
    CHECK(std::string(e.what()).find("order 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_problem("manifold dim 2\nvars x y\ndistribution V = span(d/dy)\nequation R order 1 on V: z*p[1,0] = 0\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_problem("manifold dim 2\nvars x y\ndistribution V = span(d/dy)\nequation R order 1 on V: 2x*p[1,0] = 0\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_problem("manifold dim 2\nvars x y\ndistribution V = span(d/dy)\nequation R order 1 on V: 0 = 0\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_problem("manifold dim 2\nfrobnicate\n"), ParseError);
}

TEST_CASE("coefficients are exact series") {
  ProblemSpec s = parse_problem(
      "manifold dim 2\nvars x y\ndistribution V = span(d/dy)\ntruncation 5\n"
      "equation R order 1 on V: p[0,1] = x^3*p[1,0] + 0.25*(1 - y)/(1 + x)*p[0,0] - 007*p[0,0]\n");
  const auto& terms = s.equations[0].relations[0].terms;
  Series x = Series::variable(2, 5, 0), y = Series::variable(2, 5, 1), one = Series::constant(2, 5, 1);
  bool saw_cube = false, saw_frac = false;
  for (const auto& [c, v] : terms) {
    if (c.alpha == MultiIndex{1, 0}) saw_cube = v == -(x * x * x);
    if (c.alpha == MultiIndex{0, 0}) saw_frac = v == -(Rational(1, 4) * (one - y) * (one + x).reciprocal()) + Series::constant(2, 5, 7);
  }
  CHECK(saw_cube);
  CHECK(saw_frac);
}

TEST_CASE("print then parse is stable (property)") {
  Rng rng(81);
  for (int t = 0; t < 20; ++t) {
    const int T = rng.uniform(3, 6);
    std::ostringstream text;
    text << "manifold dim 2\nvars u v\ndistribution V = span(d/dv)\ntruncation " << T << "\n";
    text << "equation E order 1 on V: ";
    // 1 + b is a unit, so the relation is always regular.
    Series a = random_series(rng, 2, T, 3), b = random_series(rng, 2, T, 3, 1);
    text << "(" << to_string(a, {"u", "v"}) << ")*p[1,0] + (1 + " << to_string(b, {"u", "v"}) << ")*p[0,1] = 0\n";
    text << "section S order 2: base = (u + " << to_string(random_series(rng, 2, T, 2, 2), {"u", "v"})
         << ", v); s_v[1,1] = " << to_string(random_series(rng, 2, T, 2), {"u", "v"}) << "\n";
    ProblemSpec s1 = parse_problem(text.str());
    std::string p1 = print_problem(s1);
    ProblemSpec s2 = parse_problem(p1);
    CHECK(print_problem(s2) == p1);
    CHECK(build_equation(s1, s1.equations[0]).same_span(build_equation(s2, s2.equations[0])));
    CHECK(s1.sections[0].jets.size() == s2.sections[0].jets.size());
  }
}

TEST_CASE("parser totality under random mutations (property)") {
  Rng rng(82);
  const std::string alphabet = "xyp[],;:=()+-*/^.0123456789 \n#_dVTN";
  for (int t = 0; t < 300; ++t) {
    std::string text = t % 2 ? kCase1 : kCase2;
    const int edits = rng.uniform(1, 4);
    for (int e = 0; e < edits; ++e) {
      std::size_t pos = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(text.size()) - 1));
      switch (rng.uniform(0, 2)) {
        case 0:
          text.erase(pos, 1);
          break;
        case 1:
          text.insert(pos, 1, alphabet[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(alphabet.size()) - 1))]);
          break;
        default:
          text[pos] = alphabet[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(alphabet.size()) - 1))];
      }
    }
    try {
      ProblemSpec s = parse_problem(text);
      for (const auto& c : command_names()) {
        CommandArgs args;
        args.command = c;
        Report r = run_command(s, args);
        CHECK((r.exit_code >= 0 && r.exit_code <= 3));
      }
    } catch (const Error&) {
      // A diagnostic is the expected outcome for most mutations.
    } catch (const std::exception& e) {
      FAIL("non-diagnostic exception: " << e.what());
    }
  }
}

TEST_CASE("commands through the library") {
  ProblemSpec c1 = parse_problem(kCase1);
  CommandArgs a;
  a.command = "check-integrability";
  Json j = run_json(c1, a);
  CHECK(j["schema"] == 1);
  CHECK(j["results"].back()["verdict"] == "formally_integrable");
  CHECK(j["results"].back()["symbol_dims"] == Json::array({1, 1, 1, 1}));
  CHECK(j["exit_code"] == 0);

  ProblemSpec c2 = parse_problem(kCase2);
  a.command = "classify-plane";
  j = run_json(c2, a);
  CHECK(j["results"][0]["case"] == 2);
  CHECK(j["results"][0]["beta"] == "x");
  CHECK(j["results"][0]["valuation"] == 1);
  CHECK(j["results"][0]["solution_family"] == "theta(x*exp(y)) d/dy");
  CHECK(j["results"][0]["family_verified"] == true);

  ProblemSpec full = parse_problem("manifold dim 2\nvars x y\ndistribution V = span(d/dy)\nequation J order 1 on V:\n");
  a.command = "prolong";
  a.depth = 1;
  j = run_json(full, a);
  REQUIRE(j["results"].size() == 2);
  CHECK(j["results"][0]["fiber_dim"] == 3);
  CHECK(j["results"][1]["fiber_dim"] == 6);

  a = CommandArgs{};
  a.command = "bracket-table";
  j = run_json(c2, a);
  bool found = false;
  for (const auto& r : j["results"])
    if (r["kind"] == "bracket" && r["left"] == "Y0" && r["right"] == "Y1") {
      CHECK(r["structure_functions"]["pi0(Y0)"] == "x");
      found = true;
    }
  CHECK(found);

  a = CommandArgs{};
  a.command = "verify-iso";
  a.section = "Bad";
  Report bad = run_command(c2, a);
  CHECK(bad.exit_code == exit_negative);
  CHECK(bad.results[0]["spencer_in_equation"] == false);
  CHECK(bad.results[0]["witness"].is_object());

  a.command = "classify-plane";
  ProblemSpec three = parse_problem("manifold dim 3\nvars x y z\ndistribution V = span(d/dz)\nequation R order 1 on V: p[1,0,0] = 0\n");
  Report usage = run_command(three, a);
  CHECK(usage.exit_code == exit_input);
  CHECK((*usage.error)["kind"] == "input_error");
}

TEST_CASE("report emission") {
  Report empty;
  empty.command = "prolong";
  Json j = Json::parse(emit_json(empty));
  CHECK(j["command"] == "prolong");
  CHECK(j["results"] == Json::array());
  CHECK(emit_json(empty).find("\"schema\": 1") != std::string::npos);

  ProblemSpec c2 = parse_problem(kCase2);
  CommandArgs a;
  a.command = "bracket-table";
  CHECK(emit_json(run_command(c2, a)) == emit_json(run_command(c2, a)));
  std::string text = emit_text(run_command(c2, a));
  CHECK(text.find("[bracket]") != std::string::npos);
  CHECK(text.find("pi0(Y0): x") != std::string::npos);
}

TEST_CASE("command-line binary") {
  const std::string ex = examples();
  Run r1 = run_cli("--input " + ex + "/case1.lieq --command check-integrability");
  CHECK(r1.code == 0);
  CHECK(Json::parse(r1.out)["results"].back()["verdict"] == "formally_integrable");
  Run r2 = run_cli("--input " + ex + "/case1.lieq --command check-integrability");
  CHECK(r1.out == r2.out);

  CHECK(run_cli("--input " + ex + "/case2.lieq --command classify-plane --format text").code == 0);
  CHECK(run_cli("--input " + ex + "/verify_iso.lieq --command verify-iso --section Bad").code == 1);
  CHECK(run_cli("--input " + ex + "/verify_iso.lieq --command verify-iso --section Scale").code == 0);
  CHECK(run_cli("--input " + ex + "/product.lieq --command connection-curvature --connection Twisted").code == 1);
  CHECK(run_cli("--input " + ex + "/product.lieq --command connection-curvature --connection Product").code == 0);
  CHECK(run_cli("--input " + ex + "/full_j1v.lieq --command prolong --depth 1").code == 0);

  Run missing = run_cli("--input /nonexistent/file.lieq --command prolong");
  CHECK(missing.code == 2);
  CHECK(Json::parse(missing.out)["error"]["kind"] == "input_error");

  std::string bad = temp_file("order.lieq", "manifold dim 2\nvars x y\ndistribution V = span(d/dy)\nequation R order 1 on V: p[2,0] = 0\n");
  Run pe = run_cli("--input " + bad + " --command prolong");
  CHECK(pe.code == 2);
  CHECK(Json::parse(pe.out)["error"]["line"] == 4);

  std::string nonreg = temp_file("nonreg.lieq", "manifold dim 2\nvars x y\ndistribution V = span(d/dy)\nequation R order 1 on V: x*p[1,0] + y*p[0,1] = 0\n");
  CHECK(run_cli("--input " + nonreg + " --command classify-plane").code == 3);

  CHECK(run_cli("--input " + ex + "/case1.lieq --command frobnicate").code == 2);
  CHECK(run_cli("--input " + ex + "/case1.lieq --command prolong --truncation 0").code == 2);
  Run printed = run_cli("--input " + ex + "/case2.lieq --print");
  CHECK(printed.code == 0);
  CHECK(print_problem(parse_problem(printed.out)) == printed.out);
}
