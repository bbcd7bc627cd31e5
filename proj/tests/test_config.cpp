#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "beamlab/config.hpp"

namespace cli = beamlab::cli;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

nlohmann::json read_report(const fs::path& dir) {
  std::ifstream in(dir / "report.json");
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("keys parse into the right fields with validation") {
  cli::RunConfig cfg;
  cli::apply_key(cfg, "seed", "12345");
  cli::apply_key(cfg, "trials", "250");
  cli::apply_key(cfg, "dim", "16");
  cli::apply_key(cfg, "mag_a", "1.5");
  cli::apply_key(cfg, "mode", "offset");
  cli::apply_key(cfg, "delta", "-0.75");
  cli::apply_key(cfg, "out", "/tmp/somewhere");
  CHECK(cfg.seed == 12345);
  CHECK(cfg.seed_set);
  CHECK(cfg.trials.value() == 250);
  CHECK(cfg.dim.value() == 16);
  CHECK(cfg.mag_a.value() == 1.5);
  CHECK(cfg.mode.value() == "offset");
  CHECK(cfg.delta.value() == -0.75);
  CHECK(cfg.out_dir == fs::path("/tmp/somewhere"));

  CHECK_THROWS_AS(cli::apply_key(cfg, "trials", "0"), cli::UsageError);
  CHECK_THROWS_AS(cli::apply_key(cfg, "dim", "1"), cli::UsageError);
  CHECK_THROWS_AS(cli::apply_key(cfg, "grid", "4"), cli::UsageError);
  CHECK_THROWS_AS(cli::apply_key(cfg, "r", "-0.1"), cli::UsageError);
  CHECK_THROWS_AS(cli::apply_key(cfg, "test_level", "1.5"), cli::UsageError);
  CHECK_THROWS_AS(cli::apply_key(cfg, "mode", "sideways"), cli::UsageError);
  CHECK_THROWS_AS(cli::apply_key(cfg, "mag", "fast"), cli::UsageError);
  CHECK_THROWS_AS(cli::apply_key(cfg, "seed", "-3"), cli::UsageError);
}

TEST_CASE("unknown keys are rejected by name") {
  cli::RunConfig cfg;
  try {
    cli::apply_key(cfg, "squeze", "0.3");
    FAIL("expected UsageError");
  } catch (const cli::UsageError& e) {
    CHECK(std::string(e.what()).find("squeze") != std::string::npos);
  }
}

TEST_CASE("config files parse comments, precedence, and bad lines") {
  const fs::path dir = fresh_dir("beamlab_cfg_parse");
  const fs::path file = dir / "run.cfg";
  write_file(file,
             "# comment line\n"
             "r = 0.3\n"
             "\n"
             "trials = 40   # trailing comment\n"
             "grid=64\n");

  SUBCASE("file values land") {
    cli::RunConfig cfg;
    cli::apply_config_file(cfg, file, {});
    CHECK(cfg.r.value() == 0.3);
    CHECK(cfg.trials.value() == 40);
    CHECK(cfg.grid.value() == 64);
  }
  SUBCASE("a flag already set wins over the file") {
    cli::RunConfig cfg;
    cli::apply_key(cfg, "r", "0.5");
    cli::apply_config_file(cfg, file, {{"r", true}});
    CHECK(cfg.r.value() == 0.5);
    CHECK(cfg.trials.value() == 40);  // untouched keys still apply
  }
  SUBCASE("unknown key in the file names itself") {
    write_file(file, "squeze = 0.3\n");
    cli::RunConfig cfg;
    try {
      cli::apply_config_file(cfg, file, {});
      FAIL("expected UsageError");
    } catch (const cli::UsageError& e) {
      CHECK(std::string(e.what()).find("squeze") != std::string::npos);
    }
  }
  SUBCASE("line without an equals sign is rejected") {
    write_file(file, "just some words\n");
    cli::RunConfig cfg;
    CHECK_THROWS_AS(cli::apply_config_file(cfg, file, {}), cli::UsageError);
  }
  SUBCASE("missing file is rejected") {
    cli::RunConfig cfg;
    CHECK_THROWS_AS(cli::apply_config_file(cfg, dir / "absent.cfg", {}),
                    cli::UsageError);
  }
  fs::remove_all(dir);
}

TEST_CASE("run_command requires a seed") {
  cli::RunConfig cfg;
  cfg.experiment = "molmer";
  CHECK_THROWS_AS(cli::run_command(cfg), cli::UsageError);
}

TEST_CASE("identity run writes a passing report with the pinned bound") {
  const fs::path dir = fresh_dir("beamlab_cfg_identity");
  cli::RunConfig cfg;
  cfg.experiment = "identity-check";
  cfg.seed_set = true;
  cfg.out_dir = dir;
  cfg.mag = 1.0;
  cfg.dim = 20;
  CHECK(cli::run_command(cfg) == cli::exit_ok);
  auto rep = read_report(dir);
  CHECK(rep["pass"].get<bool>());
  CHECK(rep["stats"]["cases"][0]["trace_distance"].get<double>() < 1e-10);
  CHECK(rep["schema_version"].get<int>() == 1);
  fs::remove_all(dir);
}

TEST_CASE("separability run reports the dual verdict") {
  const fs::path dir = fresh_dir("beamlab_cfg_sep");
  cli::RunConfig cfg;
  cfg.experiment = "separability";
  cfg.seed_set = true;
  cfg.out_dir = dir;
  cfg.r = 0.4;
  cfg.dim = 14;
  CHECK(cli::run_command(cfg) == cli::exit_ok);
  auto rep = read_report(dir);
  CHECK(rep["verdicts"]["phase_average_ppt"].get<bool>());
  CHECK(rep["verdicts"]["pure_state_npt"].get<bool>());
  CHECK(rep["verdicts"]["matches_number_mixture"].get<bool>());
  fs::remove_all(dir);
}

TEST_CASE("truncation failures surface as the capacity exit code") {
  const fs::path dir = fresh_dir("beamlab_cfg_trunc");
  cli::RunConfig cfg;
  cfg.experiment = "teleport";
  cfg.seed_set = true;
  cfg.out_dir = dir;
  cfg.beta_re = 4.0;
  cfg.dim = 10;
  cfg.trials = 5;
  CHECK(cli::run_command(cfg) == cli::exit_capacity);
  CHECK_FALSE(fs::exists(dir / "report.json"));
  fs::remove_all(dir);
}

TEST_CASE("a failed verdict yields a nonzero exit but still a report") {
  const fs::path dir = fresh_dir("beamlab_cfg_fail");
  cli::RunConfig cfg;
  cfg.experiment = "distill";
  cfg.seed = 5;
  cfg.seed_set = true;
  cfg.out_dir = dir;
  cfg.smoke = true;
  cfg.trials = 4;
  cfg.target_fraction = 1.0;  // Monte Carlo mean cannot reach the pure value
  CHECK(cli::run_command(cfg) == cli::exit_verdict_failure);
  auto rep = read_report(dir);
  CHECK_FALSE(rep["pass"].get<bool>());
  CHECK_FALSE(rep["verdicts"]["reaches_target_negativity"].get<bool>());
  fs::remove_all(dir);
}

TEST_CASE("identical config and seed give byte-identical artifacts") {
  const fs::path d1 = fresh_dir("beamlab_cfg_det1");
  const fs::path d2 = fresh_dir("beamlab_cfg_det2");
  cli::RunConfig cfg;
  cfg.experiment = "molmer";
  cfg.seed = 99;
  cfg.seed_set = true;
  cfg.smoke = true;
  cfg.trials = 30;
  auto slurp = [](const fs::path& f) {
    std::ifstream in(f, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  cfg.out_dir = d1;
  CHECK(cli::run_command(cfg) == cli::exit_ok);
  cfg.out_dir = d2;
  CHECK(cli::run_command(cfg) == cli::exit_ok);
  CHECK(slurp(d1 / "report.json") == slurp(d2 / "report.json"));
  CHECK(slurp(d1 / "resultant_by_window.csv") ==
        slurp(d2 / "resultant_by_window.csv"));
  CHECK(slurp(d1 / "posterior_example.csv") ==
        slurp(d2 / "posterior_example.csv"));
  fs::remove_all(d1);
  fs::remove_all(d2);
}

}  // TEST_SUITE("config")
