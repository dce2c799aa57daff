#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "braidwalk/version.hpp"
#include "cli.hpp"

using nlohmann::json;
namespace cli = braidwalk::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  const Run r = run(std::move(args));
  REQUIRE(r.code == cli::kOk);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("dist reports the two-step return probability") {
  const json j = run_json({"dist", "--alphabet", "Sprime", "--n", "2"});
  CHECK(j["schema"] == BRAIDWALK_SCHEMA);
  CHECK(j["subcommand"] == "dist");
  CHECK(j["data"]["trivial_braid_probability"] == 0.25);
  CHECK(j["data"]["trivial_braid_probability_exact"] == "1/4");
  CHECK(j["data"]["psl_return_probability_exact"] == "3/8");
  CHECK(j["config"]["n"] == 2);
  CHECK(j.contains("versions"));
  CHECK(j["seed"].is_null());
}

TEST_CASE("oracle reports a match") {
  const json j = run_json({"oracle", "--n", "3", "--alphabet", "Sprime"});
  CHECK(j["data"]["status"] == "match");
  const json s = run_json({"oracle", "--n", "4", "--alphabet", "S"});
  CHECK(s["data"]["status"] == "match");
}

TEST_CASE("fit reports lambda with its target") {
  const json j = run_json({"fit", "--alphabet", "S", "--quantity", "lambda", "--nmax", "24"});
  const json& r = j["data"]["results"][0];
  CHECK(r["quantity"] == "lambda");
  CHECK(std::abs(r["estimate"].get<double>() - 0.9571) < 0.03);
  CHECK(r["target"]["expression"] == "(1+2*sqrt(2))/4");
  CHECK(r["target"]["value"].get<double>() == doctest::Approx(0.957107).epsilon(1e-6));
  CHECK(r["diagnostics"].contains("order"));
}

TEST_CASE("fit without a listed target reports null") {
  const json j = run_json({"fit", "--alphabet", "Sprime", "--quantity", "lambda", "--nmax", "16"});
  CHECK(j["data"]["results"][0]["target"].is_null());
  const json a = run_json({"fit", "--alphabet", "Sprime", "--quantity", "alpha", "--n", "100"});
  CHECK(a["data"]["results"][0]["target"]["value"] == 0.6);
}

TEST_CASE("trace reports a duality residual") {
  const json j = run_json({"trace", "--alphabet", "S", "--n", "6"});
  CHECK(j["data"]["max_duality_residual"].get<double>() < 1e-10);
  CHECK(j["data"]["grid"] == 73);
}

TEST_CASE("gmto and continuum subcommands") {
  const json g = run_json({"gmto", "--B", "0.25", "--u", "1", "--N", "40"});
  CHECK(g["data"]["residual_a2"].get<double>() < 1e-12);
  CHECK(g["data"]["convention"] == "plain_sum");
  CHECK(g["data"]["interior"] == 20);
  const json c = run_json({"continuum", "--n", "12"});
  CHECK(c["data"]["alphabet"] == "S");
  CHECK(c["data"]["rms_gaussian"].get<double>() > 0);
  CHECK_FALSE(c["data"]["small_area_note"].get<std::string>().empty());
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"dist"}).code == cli::kUsage);
  CHECK(run({"dist", "--n", "-3"}).code == cli::kUsage);
  CHECK(run({"dist", "--n", "2", "--alphabet", "T"}).code == cli::kUsage);
  CHECK(run({"bogus"}).code == cli::kUsage);
  CHECK(run({"oracle", "--n", "9"}).code == cli::kUsage);
  CHECK(run({"gmto", "--N", "4"}).code == cli::kUsage);
  CHECK(run({"gmto", "--N", "40", "--interior", "35"}).code == cli::kUsage);
  CHECK(run({"dist", "--n", "2", "--weights", "1/2,1/2,1/2,1/2"}).code == cli::kUsage);
}

TEST_CASE("stochastic subcommands need a seed") {
  const Run r = run({"drift", "--n", "10", "--samples", "10"});
  CHECK(r.code == cli::kUsage);
  CHECK(r.err.find("seed") != std::string::npos);
}

TEST_CASE("a coarse grid is refused with the required size") {
  const Run r = run({"trace", "--n", "4", "--grid", "10"});
  CHECK(r.code == cli::kUsage);
  CHECK(r.err.find("49") != std::string::npos);
}

TEST_CASE("resource breach exits with 3") {
  const Run r = run({"dist", "--alphabet", "S", "--n", "12", "--max-states", "100"});
  CHECK(r.code == cli::kResource);
  CHECK(r.out.empty());
}

TEST_CASE("other failures exit with 4") {
  const Run r = run({"dist", "--n", "1", "--output", "/proc/braidwalk/none/report.json"});
  CHECK(r.code == cli::kInvariant);
}

TEST_CASE("identical runs are byte identical") {
  const std::vector<std::string> args{"drift", "--ns", "10,20", "--samples", "50", "--seed", "9"};
  const Run a = run(args), b = run(args);
  CHECK(a.code == cli::kOk);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  CHECK(j["seed"] == 9);
  CHECK(j["config"]["seed"] == 9);
  const Run d1 = run({"dist", "--n", "5", "--alphabet", "S"}), d2 = run({"dist", "--n", "5", "--alphabet", "S"});
  CHECK(d1.out == d2.out);
}

TEST_CASE("csv rows carry n, alphabet and mode") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"dist", "--n", "3", "--format", "csv"},
        std::vector<std::string>{"drift", "--ns", "10,20", "--samples", "20", "--seed", "1", "--format", "csv"},
        std::vector<std::string>{"fit", "--alphabet", "S", "--quantity", "sigma", "--nmax", "16", "--format", "csv"},
        std::vector<std::string>{"trace", "--n", "3", "--format", "csv"}}) {
    const Run r = run(args);
    REQUIRE(r.code == cli::kOk);
    const std::string header = r.out.substr(0, r.out.find('\n'));
    INFO(header);
    for (const char* col : {"n", "alphabet", "mode"}) {
      std::istringstream cols(header);
      std::string c;
      bool found = false;
      while (std::getline(cols, c, ',')) found = found || c == col;
      CHECK(found);
    }
  }
}

TEST_CASE("relative output paths resolve under the output directory") {
  const auto dir = std::filesystem::temp_directory_path() / "braidwalk_cli_test";
  std::filesystem::remove_all(dir);
  ::setenv("BRAIDWALK_OUTPUT_DIR", dir.c_str(), 1);
  const Run r = run({"dist", "--n", "2", "--output", "sub/report.json"});
  ::unsetenv("BRAIDWALK_OUTPUT_DIR");
  REQUIRE(r.code == cli::kOk);
  const auto file = dir / "sub" / "report.json";
  REQUIRE(std::filesystem::exists(file));
  std::ifstream in(file);
  const json j = json::parse(in);
  CHECK(j["data"]["trivial_braid_probability"] == 0.25);
  std::filesystem::remove_all(dir);
}
