#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seedbank/grid.hpp"

namespace seedbank {

// Parameters of the two-field lattice simulation. Defaults reproduce the
// standard front experiment; validate() lists every violated constraint.
struct SimConfig {
  double c = 1.0;        // active -> dormant exchange rate
  double c_prime = 1.0;  // dormant -> active exchange rate
  Grid1D grid{};         // domain [-15, 15], dx = 0.1
  double dt = 0.004;
  double t_max = 1.0;
  bool noise_on = true;
  std::uint64_t seed = 1;
  int reps = 2000;
  int jobs = 0;  // 0 = library default thread count
  int snapshot_stride = 1;

  int steps() const;
  std::vector<std::string> validate() const;
  bool operator==(const SimConfig&) const = default;
};

// Parameters of the deterministic comparison system: a forced reaction-
// diffusion pair on the same kind of grid, with localized forcing of
// strength lambda placed at b.
struct PfdeConfig {
  double lambda = 1.0;
  double b = 5.0;
  double c = 1.0;  // exchange rate between the field and its memory companion
  Grid1D grid{};
  double dt = 0.004;
  double t_max = 1.0;
  std::string psi_shape = "poly_exp";  // the single implemented forcing profile

  int steps() const;
  std::vector<std::string> validate() const;
  bool operator==(const PfdeConfig&) const = default;
};

struct FkConfig {
  double dt_path = 0.004;  // path quadrature step for the on/off functionals

  std::vector<std::string> validate() const;
  bool operator==(const FkConfig&) const = default;
};

struct ExperimentConfig {
  double allowance = 0.02;  // additive slack for lattice-vs-dual comparisons
  double margin = 3.0;      // boundary proximity that flags an edge snapshot
  double edge_tol = kEdgeTol;

  std::vector<std::string> validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

struct AppConfig {
  SimConfig sim;
  PfdeConfig pfde;
  FkConfig fk;
  ExperimentConfig exp;

  std::vector<std::string> validate() const;
  bool operator==(const AppConfig&) const = default;
};

// Flat key = value text with [section] headers; '#' starts a comment.
// Unknown keys and malformed lines are reported with their line number.
// All violations are collected, not just the first.
struct ConfigLoad {
  AppConfig config;
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

ConfigLoad parse_config_text(const std::string& text);
ConfigLoad load_config_file(const std::string& path);
std::string save_config_text(const AppConfig& cfg);

}  // namespace seedbank
