#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "soliton/cli.hpp"
#include "soliton/report.hpp"

using namespace soliton;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kBolza = "file:" + std::string(SOLITON_DATA_DIR) + "/bolza.json";

}  // namespace

TEST_CASE("csv field quoting") {
  CHECK(report::csv_field("plain") == "plain");
  CHECK(report::csv_field("a,b") == "\"a,b\"");
  CHECK(report::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(report::csv_field("two\nlines") == "\"two\nlines\"");
  CHECK(report::format_number(0.1 + 0.2) == "0.3");
  CHECK(report::format_number(3.0) == "3");
}

TEST_CASE("spectrum csv for the Bolza expander") {
  const auto r = run({"spectrum", "--factor", kBolza, "--rho", "-1", "--n", "4", "--cutoff", "3.5"});
  REQUIRE(r.code == 0);
  CHECK(r.out ==
        "index,value,multiplicity,factor_index,gaussian_degree,description\n"
        "1,2,1,0,0,\"v0 x H(0,0)\"\n"
        "2,3,2,0,1,\"v0 x H(1,0)\"\n");
}

TEST_CASE("spectrum json mirrors the spectrum file schema") {
  const auto r = run({"--format", "json", "spectrum", "--factor", "sphere:k=2", "--rho", "1", "--n", "4",
                      "--cutoff", "2.5"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["dim"] == 4);
  CHECK(doc["complete_below"] == 2.5);
  REQUIRE(doc["eigenvalues"].size() == 3);
  CHECK(doc["eigenvalues"][2]["value"] == 2.0);
  CHECK(doc["eigenvalues"][2]["multiplicity"] == 6);
}

TEST_CASE("--count limits the rows") {
  const auto r = run({"spectrum", "--factor", "sphere:k=2", "--rho", "1", "--n", "3", "--cutoff", "5", "--count", "2"});
  REQUIRE(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);
}

TEST_CASE("validation errors exit 2 with a one-line message") {
  const auto beyond = run({"spectrum", "--factor", kBolza, "--rho", "-1", "--n", "4", "--cutoff", "9"});
  CHECK(beyond.code == cli::kExitValidation);
  CHECK(beyond.err.rfind("error: incomplete spectrum", 0) == 0);
  CHECK(std::count(beyond.err.begin(), beyond.err.end(), '\n') == 1);

  CHECK(run({"spectrum", "--factor", "torus", "--rho", "1", "--n", "3", "--cutoff", "2"}).code == 2);
  CHECK(run({"spectrum", "--factor", kBolza, "--rho", "-2", "--n", "4", "--cutoff", "2"}).code == 2);
  CHECK(run({"spectrum", "--factor", "file:/nonexistent.json", "--rho", "-1", "--n", "4", "--cutoff", "2"}).code == 2);
  CHECK(run({"--format", "xml", "bounds", "--rho", "-1"}).code == 2);
  CHECK(run({"bounds"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"second", "--factor", "sphere:k=2", "--rho", "1", "--n", "4"}).code == 2);
}

TEST_CASE("parse errors print usage before the error line") {
  const auto r = run({"spectrum", "--rho", "-1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(r.err.find("error: ") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("help goes to stdout") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("spectrum") != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("second reports the gaussian case for Bolza") {
  const auto r = run({"--format", "json", "second", "--factor", kBolza, "--rho", "-1", "--n", "4"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out).at("second");
  std::map<std::string, nlohmann::json> kv;
  for (const auto& row : doc) kv[row["key"]] = row["value"];
  CHECK(kv["lambda1"] == 2.0);
  CHECK(kv["lambda2"] == 3.0);
  CHECK(kv["lambda2_multiplicity"] == 2);
  CHECK(kv["case"] == "gaussian");
  CHECK(kv["consistent"] == true);
}

TEST_CASE("bounds summary and per-genus table") {
  const auto r = run({"bounds", "--rho", "-1", "--gamma-max", "60"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("all genus>=46: kv < -rho,true") != std::string::npos);
  CHECK(r.out.find("minimal genus (exact ceiling),42") != std::string::npos);
  CHECK(r.out.find("\n\ngenus,yang_yau,kv") != std::string::npos);
  CHECK(run({"bounds", "--rho", "-1", "--gamma-max", "40"}).code == 2);
}

TEST_CASE("verify subcommands pass") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"verify", "hermite", "--p-max", "8"},
           {"verify", "oscillator", "--rho", "-1", "--radius", "12"},
           {"verify", "equivalence", "--rho", "1", "--n", "1", "--k", "0", "--grid", "512"},
           {"verify", "conjugation"},
           {"verify", "product-oracle", "--trials", "20", "--seed", "5"}}) {
    const auto r = run(args);
    INFO(args[1]);
    CHECK(r.code == 0);
    CHECK(r.out.find("passed,true") != std::string::npos);
  }
}

TEST_CASE("identities for a sphere shrinker") {
  const auto r = run({"identities", "--factor", "sphere:k=2", "--rho", "1", "--n", "4"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("normalization_constant,2\n") != std::string::npos);
  CHECK(r.out.find("potential_diverges,true") != std::string::npos);
}

TEST_CASE("--output writes a file; unwritable paths exit 1") {
  const auto path = std::filesystem::temp_directory_path() / "soliton_cli_output_test.csv";
  const auto r = run({"--output", path.string(), "bounds", "--rho", "-1"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  CHECK(first == "key,value");
  std::filesystem::remove(path);
  CHECK(run({"--output", "/nonexistent-dir/x.csv", "bounds", "--rho", "-1"}).code == cli::kExitInternal);
}
