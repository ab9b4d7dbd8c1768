#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "seedbank/config.hpp"
#include "seedbank/experiments.hpp"
#include "seedbank/spde.hpp"

namespace seedbank::io {

inline constexpr const char* kToolVersion = "1.0.0";

// Shortest round-trip-exact decimal form; infinities print as inf/-inf.
std::string fmt_g17(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);
void ensure_dir(const std::string& path);
std::vector<std::string> list_files_recursive(const std::string& dir);  // sorted relative paths

std::string sha256_hex(std::string_view data);
std::string iso8601_utc_now();

// CSV renderers. All numeric cells use fmt_g17 so identical inputs yield
// identical bytes.
std::string trajectory_csv(const SpdeTrajectory& traj);            // t,x,u,v
std::string edges_csv(const EdgeSeries& es);                        // t,L_u,R_u,L_v,R_v
std::string tail_csv(const TailCurve& tc);                          // b,p_hat,ci_lo,ci_hi
std::string duality_csv(const std::vector<DualityReport>& rows);    // label column quoted
std::string symmetry_csv(const SymmetryReport& rep);                // x,mean,se,z

// Reproducibility record for one run directory: tool version, config echo and
// hash, seed derivation, timestamps, step-size stability check, and a hashed
// inventory of every result file in the directory.
struct RunManifest {
  std::string tool;
  std::string config_text;
  std::uint64_t base_seed = 0;
  int replicates = 0;
  std::string seed_rule = "replicate_seed = base_seed + replicate_index";
  std::vector<std::uint64_t> replicate_seeds;
  std::string started_utc, finished_utc;
  double wall_seconds = 0.0;
  double dt = 0.0, dx = 0.0;
  bool stability_ok = false;
};

// Writes <dir>/manifest.json, hashing every regular file currently in dir
// except manifest.json itself.
void write_manifest(const std::string& dir, const RunManifest& m);

}  // namespace seedbank::io
