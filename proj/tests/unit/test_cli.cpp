#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "discordant/experiment.hpp"
#include "json.hpp"

using namespace discordant;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "discordant_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

RunResult run_text(const std::string& text) {
  RunOptions opts;
  opts.out_dir = scratch().string();
  opts.threads = 2;
  return run_experiment(parse_spec(text), opts);
}

int run_binary(const std::string& spec_text, const std::string& name) {
  const auto spec = scratch() / (name + ".json");
  std::ofstream(spec) << spec_text;
  const std::string cmd = std::string("\"") + DISCORDANT_CLI + "\" run \"" + spec.string() + "\" --out \"" +
                          scratch().string() + "\" > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("valid specs parse") {
  const auto s = parse_spec(R"({"command":"density","params":{"set":"squarefree","windows":[1000,10000,100000]}})");
  CHECK(s.command == "density");
  CHECK(s.params["windows"].size() == 3);
}

TEST_CASE("missing output gets a timestamped default") {
  using namespace std::chrono;
  const sys_seconds t = sys_days{year{2026} / 10 / 19} + hours{8} + minutes{5} + seconds{3};
  const auto s = parse_spec(R"({"command":"sl2","params":{"n_max":12}})", t);
  CHECK(s.output == "out/sl2-20261019T080503Z");
  const auto named = parse_spec(R"({"command":"sl2","params":{"n_max":12},"output":"tables/sl2"})", t);
  CHECK(named.output == "tables/sl2");
}

TEST_CASE("malformed JSON reports line and column") {
  try {
    parse_spec("{\n  \"command\": \"density\",\n  \"params\": {,}\n}");
    FAIL("expected a parse error");
  } catch (const SpecParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.column > 1);
  }
}

TEST_CASE("schema violations are all listed with paths") {
  try {
    parse_spec(R"({"command":"nope"})");
    FAIL("expected a validation error");
  } catch (const SpecValidationError& e) {
    REQUIRE_FALSE(e.violations.empty());
    CHECK(e.violations[0].find("/command") != std::string::npos);
  }
  try {
    parse_spec(R"({"command":"density","params":{"set":"squarefree","x":1,"windows":"many"}})");
    FAIL("expected a validation error");
  } catch (const SpecValidationError& e) {
    CHECK(e.violations.size() == 2);
    const std::string all = e.what();
    CHECK(all.find("/params/x") != std::string::npos);
    CHECK(all.find("/params/windows") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_spec(R"({"command":"sl2","params":{}})"), SpecValidationError);
  CHECK_THROWS_AS(parse_spec(R"({"command":"sl2","params":{"n_max":5},"extra":true})"), SpecValidationError);
}

TEST_CASE("density CSV contract") {
  const auto r = run_text(
      R"({"command":"density","params":{"set":"squarefree","context":"naturals","windows":[1000,100000]},"output":"density"})");
  REQUIRE(r.exit_code == kExitOk);
  const auto csv = slurp(scratch() / "density.csv");
  std::istringstream lines(csv);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == "n,count,ratio,known_density,abs_diff");
  CHECK(first.rfind("1000,608,0.608,", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("reruns are byte-identical") {
  const std::string spec =
      R"({"command":"symbolic","params":{"operation":"normal","config":"pseudorandom","k":[0,1,2],"windows":[1000,20000]},"output":"normal"})";
  REQUIRE(run_text(spec).exit_code == kExitOk);
  const auto first = slurp(scratch() / "normal.csv");
  REQUIRE(run_text(spec).exit_code == kExitOk);
  CHECK(slurp(scratch() / "normal.csv") == first);
  CHECK_FALSE(first.empty());
}

TEST_CASE("witness certificate") {
  const auto r =
      run_text(R"({"command":"witness","params":{"shifts":[0,1,2],"moduli":[4,9,25]},"output":"crt"})");
  REQUIRE(r.exit_code == kExitOk);
  const auto j = nlohmann::json::parse(slurp(scratch() / "crt.json"));
  CHECK(j["x"] == 548);
  CHECK(j["N"] == 900);
  CHECK(j["verified"] == true);
}

TEST_CASE("sl2 CSV contract") {
  const auto r = run_text(R"({"command":"sl2","params":{"n_min":10,"n_max":60},"output":"sl2"})");
  REQUIRE(r.exit_code == kExitOk);
  const auto csv = slurp(scratch() / "sl2.csv");
  CHECK(csv.rfind("n,ball_size,lower_bound,gamma2,gamma2_bound\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 52);
}

TEST_CASE("float formatting") {
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(6.0 / 3.141592653589793 / 3.141592653589793) == "0.607927102");
  CHECK(format_real(1.0) == "1");
}

TEST_CASE("exit codes") {
  CHECK(run_text(R"({"command":"density","params":{"set":"evens","windows":[100]},"output":"ok"})").exit_code ==
        kExitOk);
  CHECK(run_text(R"({"command":"density","params":{"set":"squarefree","windows":[100],"tolerance":1e-9},"output":"tight"})")
            .exit_code == kExitAcceptance);
  CHECK(run_text(R"({"command":"sl2","params":{"n_max":500},"output":"huge"})").exit_code == kExitError);

  CHECK(run_binary(R"({"command":"witness","params":{"shifts":[0,1],"moduli":[4,9]},"output":"bin"})", "good") == 0);
  CHECK(fs::exists(scratch() / "bin.json"));
  CHECK(run_binary(R"({"command":"density","params":{"set":"squarefree","windows":[100],"tolerance":1e-9},"output":"bin2"})",
                   "strict") == 2);
  CHECK(run_binary("{not json", "broken") == 1);
  CHECK(run_binary(R"({"command":"witness","params":{"shifts":[0,1],"moduli":[4,6]},"output":"bad"})", "coprime") == 1);
}
