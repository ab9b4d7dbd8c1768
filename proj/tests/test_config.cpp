#include <string>
#include <vector>

#include "doctest.h"
#include "seedbank/config.hpp"

using namespace seedbank;

namespace {

bool any_contains(const std::vector<std::string>& errs, const std::string& needle) {
  for (const auto& e : errs) {
    if (e.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("default configuration is valid") {
  const AppConfig cfg;
  CHECK(cfg.validate().empty());
  CHECK(cfg.sim.grid.n == 301);
  CHECK(cfg.sim.steps() == 250);
}

TEST_CASE("empty config text yields the documented defaults") {
  const ConfigLoad loaded = parse_config_text("");
  REQUIRE(loaded.ok());
  CHECK(loaded.config == AppConfig{});
  CHECK(loaded.config.sim.c == 1.0);
  CHECK(loaded.config.sim.c_prime == 1.0);
  CHECK(loaded.config.sim.grid.dx == 0.1);
  CHECK(loaded.config.sim.grid.x_min == -15.0);
  CHECK(loaded.config.sim.grid.x_max == 15.0);
  CHECK(loaded.config.sim.dt == 0.004);
  CHECK(loaded.config.sim.t_max == 1.0);
  CHECK(loaded.config.sim.reps == 2000);
}

TEST_CASE("explicit time step above the parabolic limit is rejected") {
  const ConfigLoad loaded = parse_config_text("[time]\ndt = 0.1\n");
  CHECK(!loaded.ok());
  CHECK(any_contains(loaded.errors, "stability"));
}

TEST_CASE("negative exchange rate is rejected") {
  const ConfigLoad loaded = parse_config_text("[physics]\nc = -1\n");
  CHECK(!loaded.ok());
  CHECK(any_contains(loaded.errors, "c must be nonnegative"));
}

TEST_CASE("every violation is reported, not just the first") {
  const std::string text =
      "[physics]\n"
      "c = -1\n"
      "c_prime = -2\n"
      "[time]\n"
      "dt = 0.1\n"
      "[mc]\n"
      "reps = 1\n";
  const ConfigLoad loaded = parse_config_text(text);
  CHECK(loaded.errors.size() >= 4);
  CHECK(any_contains(loaded.errors, "c must be nonnegative"));
  CHECK(any_contains(loaded.errors, "c_prime must be nonnegative"));
  CHECK(any_contains(loaded.errors, "stability"));
  CHECK(any_contains(loaded.errors, "reps must be at least 2"));
}

TEST_CASE("parse errors carry line numbers") {
  const ConfigLoad loaded = parse_config_text("[physics]\nnot a key value pair\n");
  CHECK(!loaded.ok());
  CHECK(any_contains(loaded.errors, "line 2"));
}

TEST_CASE("unknown keys and sections are flagged") {
  const ConfigLoad a = parse_config_text("[physics]\nzeta = 3\n");
  CHECK(any_contains(a.errors, "unknown key"));
  const ConfigLoad b = parse_config_text("[warp]\n");
  CHECK(any_contains(b.errors, "unknown section"));
  const ConfigLoad c = parse_config_text("[time]\ndt = fast\n");
  CHECK(any_contains(c.errors, "expected number"));
}

TEST_CASE("horizon must be an integer number of steps") {
  const ConfigLoad loaded = parse_config_text("[time]\ndt = 0.004\nt_max = 0.25\n");
  CHECK(!loaded.ok());
  CHECK(any_contains(loaded.errors, "positive integer"));
}

TEST_CASE("save and load round-trip reproduces the configuration") {
  const std::string text =
      "[physics]\n"
      "c = 0.7\n"
      "c_prime = 1.3\n"
      "[grid]\n"
      "x_min = -10\n"
      "x_max = 10\n"
      "dx = 0.05\n"
      "[time]\n"
      "dt = 0.001\n"
      "t_max = 0.5\n"
      "[mc]\n"
      "reps = 64\n"
      "seed = 987654321\n"
      "[spde]\n"
      "noise_on = false\n"
      "snapshot_stride = 10\n"
      "[pfde]\n"
      "lambda = 10\n"
      "b = 4\n"
      "[fk]\n"
      "dt_path = 0.002\n"
      "[experiment]\n"
      "allowance = 0.03\n";
  const ConfigLoad first = parse_config_text(text);
  REQUIRE(first.ok());
  const ConfigLoad second = parse_config_text(save_config_text(first.config));
  REQUIRE(second.ok());
  CHECK(first.config == second.config);
  CHECK(second.config.sim.grid.dx == 0.05);
  CHECK(second.config.sim.noise_on == false);
  CHECK(second.config.pfde.lambda == 10.0);
  // The comparison solver inherits the shared clock and lattice.
  CHECK(second.config.pfde.dt == 0.001);
  CHECK(second.config.pfde.grid == second.config.sim.grid);
}

TEST_CASE("comments and blank lines are ignored") {
  const ConfigLoad loaded = parse_config_text(
      "# leading comment\n\n[physics]\nc = 2.0  # trailing comment\n");
  REQUIRE(loaded.ok());
  CHECK(loaded.config.sim.c == 2.0);
}

TEST_CASE("missing config file reports a readable error") {
  const ConfigLoad loaded = load_config_file("/nonexistent/path/config.txt");
  CHECK(!loaded.ok());
  CHECK(any_contains(loaded.errors, "cannot open"));
}
