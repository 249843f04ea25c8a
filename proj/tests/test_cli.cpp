#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sdcm/cli.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("sdcm");
  for (const auto& a : args) argv.push_back(a.c_str());
  return sdcm::cli_main(static_cast<int>(argv.size()), argv.data());
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sdcm_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("list-scenarios and analyze succeed") {
  CHECK(run_cli({"list-scenarios"}) == 0);
  CHECK(run_cli({"analyze", "walking_pi6"}) == 0);
  CHECK(run_cli({"analyze", "standing_pi8"}) == 0);
}

TEST_CASE("analyze rejects a non-positive gain override") {
  CHECK(run_cli({"analyze", "walking_pi6", "--ka", "-1.0"}) == 2);
}

TEST_CASE("run writes the expected artifacts") {
  const fs::path dir = fresh_dir("run");
  CHECK(run_cli({"run", "standing_pi8", "-o", dir.string()}) == 0);
  CHECK(fs::exists(dir / "trajectory.csv"));
  CHECK(fs::exists(dir / "summary.json"));
  CHECK(fs::exists(dir / "config.json"));
  CHECK(!fs::exists(dir / "plot"));
  const std::string summary = slurp(dir / "summary.json");
  CHECK(summary.find("standing_pi8") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("plot data files are opt-in") {
  const fs::path dir = fresh_dir("plot");
  CHECK(run_cli({"run", "standing_pi8", "-o", dir.string(), "--plot-data"}) ==
        0);
  CHECK(fs::exists(dir / "plot" / "theta.dat"));
  CHECK(fs::exists(dir / "plot" / "r_cop.dat"));
  fs::remove_all(dir);
}

TEST_CASE("identical runs produce identical bytes") {
  const fs::path dir_a = fresh_dir("det_a");
  const fs::path dir_b = fresh_dir("det_b");
  REQUIRE(run_cli({"run", "walking_pi6", "-o", dir_a.string()}) == 0);
  REQUIRE(run_cli({"run", "walking_pi6", "-o", dir_b.string()}) == 0);
  CHECK(slurp(dir_a / "trajectory.csv") == slurp(dir_b / "trajectory.csv"));
  CHECK(slurp(dir_a / "summary.json") == slurp(dir_b / "summary.json"));
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}

TEST_CASE("malformed config exits with 2 and leaves no outputs") {
  const fs::path cfg = fs::temp_directory_path() / "sdcm_bad_config.json";
  std::ofstream(cfg) << "{\"version\": 1, \"plan\": {\"type\": \"bogus\"}}";
  const fs::path dir = fresh_dir("bad");
  CHECK(run_cli({"run", cfg.string(), "-o", dir.string()}) == 2);
  CHECK(!fs::exists(dir));
  CHECK(run_cli({"run", "missing_file.json", "-o", dir.string()}) == 2);
  CHECK(!fs::exists(dir));
  fs::remove(cfg);
}

TEST_CASE("divergence exits with 3 and keeps the partial log") {
  const fs::path cfg = fs::temp_directory_path() / "sdcm_diverging.json";
  std::ofstream(cfg) << R"({
    "version": 1,
    "name": "diverging",
    "plan": {"type": "standing", "n_steps": 2, "vro_amplitude": 0.3},
    "control": {"cop_constraint": false},
    "initial_state": {"x": [300.0, 0.0, 0.981]}
  })";
  const fs::path dir = fresh_dir("diverge");
  CHECK(run_cli({"run", cfg.string(), "-o", dir.string()}) == 3);
  CHECK(fs::exists(dir / "trajectory.csv"));
  const std::string summary = slurp(dir / "summary.json");
  CHECK(summary.find("\"diverged\": true") != std::string::npos);
  fs::remove_all(dir);
  fs::remove(cfg);
}

TEST_CASE("config file loading matches the bundled scenario") {
  // A user copy of the bundled document behaves identically.
  const fs::path cfg = fs::temp_directory_path() / "sdcm_copy.json";
  {
    std::ofstream out(cfg);
    out << R"({
      "version": 1,
      "name": "walking_copy",
      "params": {"m": 65.1, "g": 9.81, "h": 0.981, "I": 2.3, "k_l": 3.0, "k_a": 3.0, "r_cop_thres": 0.12},
      "plan": {"type": "walking", "v_x": 0.25, "t_step": 1.0, "n_steps": 8,
               "vro_amplitude": 0.5235987755982988, "final_hold": 1.0},
      "control": {"angular_reference": "setpoint"},
      "sim": {"dt": 0.001}
    })";
  }
  const fs::path dir = fresh_dir("copy");
  CHECK(run_cli({"run", cfg.string(), "-o", dir.string()}) == 0);
  fs::remove_all(dir);
  fs::remove(cfg);
}
