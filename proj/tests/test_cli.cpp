#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "susydelta/cli.hpp"

using namespace susydelta;
using nlohmann::json;

namespace {

std::filesystem::path scratch() {
  const char* env = std::getenv("SUSYDELTA_TEST_TMP");
  std::filesystem::path p = env ? env : std::filesystem::temp_directory_path() / "susydelta_unit_cli";
  std::filesystem::create_directories(p);
  return p;
}

std::string write_config(const std::string& name, const json& j) {
  auto p = scratch() / name;
  std::ofstream(p) << j.dump();
  return p.string();
}

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("bound states of the equal double delta") {
  auto cfg = write_config("de.json", {{"kind", "double_equal"}, {"alpha", 2.0}, {"a", 7.0}});
  Result r = run({"bound", "--config", cfg});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.contains("run_config"));
  CHECK(j["singlets"].size() == 1);
  CHECK(j["pairs"].size() >= 3);
  CHECK(j["states"].size() == 2 * j["pairs"].size() + 1);
}

TEST_CASE("bands subcommand") {
  Result r = run({"bands", "--alpha", "3", "--a", "1"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["propagating"].size() == 4);
  CHECK(j["non_propagating"]["exists_upper_edge"].get<bool>());
  CHECK(j["non_propagating"]["rejected_kappa_at_q0"] == json::array({-1.5}));
}

TEST_CASE("scatter writes the CSV header and finite rows") {
  auto cfg = write_config("free.json", {{"kind", "double_equal"}, {"alpha", 0.0}, {"a", 1.0}});
  Result r = run({"scatter", "--config", cfg, "--e-min", "1", "--e-max", "2", "--n", "3"});
  REQUIRE(r.code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  CHECK(line ==
        "E,k_minus_re,k_minus_im,k_plus_re,k_plus_im,sigma_r_re,sigma_r_im,rho_r_re,rho_r_im,"
        "sigma_l_re,sigma_l_im,rho_l_re,rho_l_im,flux_residual");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    if (rows != 1) continue;
    std::vector<double> v;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) v.push_back(std::stod(cell));
    const std::vector<double> expected = {1, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0};
    CHECK(v == expected);
  }
  CHECK(rows == 3);
}

TEST_CASE("usage and configuration errors exit with 2") {
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"bound"}).code == 2);
  CHECK(run({"bound", "--config", (scratch() / "missing.json").string()}).code == 2);
  auto bad = write_config("bad.json", {{"kind", "double_equal"}, {"alpha", 2.0}, {"a", -1.0}});
  CHECK(run({"bound", "--config", bad}).code == 2);
  auto cfg = write_config("de2.json", {{"kind", "double_equal"}, {"alpha", 2.0}, {"a", 1.0}});
  CHECK(run({"scatter", "--config", cfg, "--n", "1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("run config round trip") {
  cli::RunConfig rc;
  rc.config = TripleUnequal{1.0, 2.0, 3.0, 2.0};
  rc.energy_grid = cli::GridSpec{0.5, 9.0, 17};
  rc.q_samples = 33;
  rc.tolerances.root = 1e-11;
  rc.format = "csv";
  rc.out = "x.csv";
  CHECK(cli::run_config_from_json(cli::to_json(rc)) == rc);
  CHECK(cli::run_config_from_json(json::parse(cli::to_json(rc).dump())) == rc);
  rc.tolerances.match = 0.0;
  CHECK_THROWS_AS(cli::validate(rc), Error);
}

TEST_CASE("a RunConfig file is accepted in place of a bare configuration") {
  cli::RunConfig rc;
  rc.config = DoubleEqual{2.0, 7.0};
  auto cfg = write_config("rc.json", cli::to_json(rc));
  Result r = run({"zero-mode", "--config", cfg});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(!j["bosonic"]["normalizable"].get<bool>());
  CHECK(j["fermionic"]["normalizable"].get<bool>());
}

TEST_CASE("output does not depend on the thread count") {
  auto cfg = write_config("tu.json", {{"kind", "triple_unequal"}, {"alpha", 1.0}, {"mu", 2.0}, {"beta", 3.0}, {"a", 2.0}});
  Result one = run({"--threads", "1", "bound", "--config", cfg});
  Result four = run({"--threads", "4", "bound", "--config", cfg});
  REQUIRE(one.code == 0);
  CHECK(one.out == four.out);
  Result b1 = run({"--threads", "1", "bands", "--alpha", "2.5", "--a", "0.7"});
  Result b4 = run({"--threads", "4", "bands", "--alpha", "2.5", "--a", "0.7"});
  CHECK(b1.out == b4.out);
}

TEST_CASE("witten and zero-mode subcommands") {
  auto cfg = write_config("de3.json", {{"kind", "double_equal"}, {"alpha", 2.0}, {"a", 7.0}});
  Result w = run({"witten", "--config", cfg, "--t-list", "0.1,0.01,0.001"});
  REQUIRE(w.code == 0);
  json j = json::parse(w.out);
  for (const char* key : {"z0", "z1", "v", "continuum", "index", "susy_broken", "run_config"}) CHECK(j.contains(key));
  CHECK(j["continuum"].size() == 3);

  auto comb = write_config("comb.json", {{"kind", "alternating_comb"}, {"alpha", 2.0}, {"a", 1.0}});
  Result z = run({"zero-mode", "--config", comb});
  REQUIRE(z.code == 0);
  json zj = json::parse(z.out);
  CHECK(zj["index_contribution"] == 0);
  CHECK(zj["susy_unbroken"].get<bool>());
}

TEST_CASE("output file") {
  auto cfg = write_config("de4.json", {{"kind", "double_equal"}, {"alpha", 2.0}, {"a", 1.0}});
  auto path = (scratch() / "bound_out.json").string();
  Result r = run({"--out", path, "bound", "--config", cfg, "--sector", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  json j = json::parse(f);
  CHECK(j["states"].size() >= 1);
}

TEST_CASE("verify passes on a small sweep") {
  Result r = run({"--seed", "3", "verify", "--cases", "3"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["pass"].get<bool>());
}
