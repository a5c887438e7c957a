#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "qnet/cli.hpp"

using namespace qnet;
using namespace qnet::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("qnet_cli_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Row {
  double t, fidelity, trace_error, min_eig;
};

std::vector<Row> read_csv(const std::string& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  REQUIRE(line == "t,fidelity,trace_error,min_eig");
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    Row r{};
    char c;
    std::istringstream ls(line);
    ls >> r.t >> c >> r.fidelity >> c >> r.trace_error >> c >> r.min_eig;
    rows.push_back(r);
  }
  return rows;
}

int run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "qnet");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("number formatting round-trips") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(30.0) == "30");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  for (double v : {1.0 / 3.0, 2.0 / 7.0, 1e-17, 6.02214076e23}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("config precedence and validation") {
  RunConfig cfg;
  apply_json(cfg, nlohmann::json::parse(R"({"omega": [0, 30], "variant": "phaseflip", "tmax": 3})"));
  CHECK(cfg.omegas == std::vector<double>{0.0, 30.0});
  CHECK(cfg.variant == components::Variant::PhaseFlip);
  CHECK(cfg.alpha_for(30.0) == 3.75);
  CHECK_THROWS_AS(apply_json(cfg, nlohmann::json::parse(R"({"omegas": 1})")), ConfigError);
  CHECK_THROWS_AS(apply_json(cfg, nlohmann::json::parse(R"({"variant": "bitflp"})")), ConfigError);
  CHECK_THROWS_AS(apply_json(cfg, nlohmann::json::parse(R"({"tmax": "long"})")), ConfigError);

  RunConfig empty;
  empty.omegas.clear();
  CHECK_THROWS_AS(empty.validate(), ConfigError);
  RunConfig rk4;
  rk4.method = lindblad::Method::Rk4Fixed;
  CHECK_THROWS_AS(rk4.validate(), ConfigError);
}

TEST_CASE("simulate: Omega = 0 reproduces the three-qubit baseline") {
  TempDir dir;
  RunConfig cfg;
  cfg.omegas = {0.0};
  cfg.t_max = 5.0;
  cfg.out = dir.file("w0.csv");
  std::ostringstream log;
  REQUIRE(cmd_simulate(cfg, log) == kExitOk);
  const auto rows = read_csv(cfg.out);
  REQUIRE(rows.size() == 11);
  for (const auto& r : rows)
    CHECK(std::abs(r.fidelity - lindblad::baseline_three_qubit(0.1, lindblad::codeword_state(), r.t)) < 1e-6);
  const auto meta = nlohmann::json::parse(slurp(dir.file("w0.json")));
  CHECK(meta["status"] == "ok");
  CHECK(meta["accepted"] == true);
  CHECK(meta["config"]["gamma"] == 0.1);
}

TEST_CASE("simulate: stationary codeword and t_max = 0") {
  TempDir dir;
  RunConfig cfg;
  cfg.omegas = {90.0};
  cfg.gamma_flip = 0.0;
  cfg.t_max = 1.0;
  cfg.sample_interval = 0.1;
  cfg.out = dir.file("s.csv");
  std::ostringstream log;
  REQUIRE(cmd_simulate(cfg, log) == kExitOk);
  for (const auto& r : read_csv(cfg.out)) CHECK(std::abs(r.fidelity - 1.0) < 1e-8);

  cfg.t_max = 0.0;
  cfg.out = dir.file("z.csv");
  REQUIRE(cmd_simulate(cfg, log) == kExitOk);
  const auto rows = read_csv(cfg.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].fidelity == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("simulate is deterministic") {
  TempDir dir;
  RunConfig cfg;
  cfg.omegas = {30.0};
  cfg.t_max = 1.0;
  cfg.out = dir.file("a.csv");
  std::ostringstream log;
  REQUIRE(cmd_simulate(cfg, log) == kExitOk);
  const std::string first = slurp(cfg.out);
  REQUIRE(cmd_simulate(cfg, log) == kExitOk);
  CHECK(slurp(cfg.out) == first);
}

TEST_CASE("simulate: integration failure writes a flagged partial result") {
  TempDir dir;
  RunConfig cfg;
  cfg.omegas = {210.0};
  cfg.method = lindblad::Method::Rk4Fixed;
  cfg.dt = 0.01;
  cfg.out = dir.file("f.csv");
  std::ostringstream log;
  CHECK(cmd_simulate(cfg, log) == kExitIntegration);
  CHECK(fs::exists(cfg.out));
  CHECK(nlohmann::json::parse(slurp(dir.file("f.json")))["status"] == "failed");
}

TEST_CASE("sweep: dedupe, manifest, exit codes") {
  TempDir dir;
  RunConfig cfg;
  cfg.omegas = {0.0, 30.0, 30.0};
  cfg.t_max = 0.5;
  cfg.out = dir.file("sweep");
  cfg.jobs = 2;
  std::ostringstream log;
  REQUIRE(cmd_sweep(cfg, log) == kExitOk);
  CHECK(log.str().find("duplicate omega 30") != std::string::npos);
  const auto manifest = nlohmann::json::parse(slurp(dir.file("sweep/manifest.json")));
  REQUIRE(manifest["runs"].size() == 2);
  CHECK(manifest["gamma"] == 0.1);
  CHECK(manifest["runs"][1]["omega"] == 30.0);
  CHECK(manifest["runs"][1]["alpha"] == 3.75);
  CHECK(manifest["runs"][1]["status"] == "ok");
  CHECK(fs::exists(dir.path / "sweep" / manifest["runs"][1]["csv"].get<std::string>()));

  CHECK(run_args({"sweep", "--omega", "", "--out", dir.file("e")}) == kExitConfig);
  CHECK(run_args({"simulate", "--omega", "1,2", "--out", dir.file("x.csv")}) == kExitConfig);
  CHECK(run_args({"simulate", "--bogus"}) == kExitConfig);
}

TEST_CASE("flags override the config file") {
  TempDir dir;
  {
    std::ofstream(dir.file("c.json")) << R"({"omega": 5, "tmax": 0.5, "gamma": 0.2})";
  }
  REQUIRE(run_args({"simulate", "--config", dir.file("c.json"), "--omega", "7", "--out", dir.file("o.csv")}) ==
          kExitOk);
  const auto meta = nlohmann::json::parse(slurp(dir.file("o.json")));
  CHECK(meta["config"]["omega"][0] == 7.0);
  CHECK(meta["config"]["gamma"] == 0.2);
  CHECK(meta["config"]["tmax"] == 0.5);
  {
    std::ofstream(dir.file("bad.json")) << R"({"omega": 5, "typo": 1})";
  }
  CHECK(run_args({"simulate", "--config", dir.file("bad.json"), "--out", dir.file("o.csv")}) == kExitConfig);
}

TEST_CASE("stark-table prints eight rows") {
  std::ostringstream out;
  CHECK(cmd_stark_table(1.0, out) == kExitOk);
  int lines = 0;
  std::string line;
  std::istringstream in(out.str());
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 10);
  CHECK(out.str().find("ghh     gh") != std::string::npos);
}

}
