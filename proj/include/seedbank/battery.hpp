#pragma once

#include <cstdint>
#include <string>
#include <vector>

// The acceptance battery: eleven numbered end-to-end checks covering the
// deterministic limits, the pathwise delay identity, field-vs-walker moment
// duality, the forced comparison pair, barrier and envelope bounds, the
// path-functional representation, interface compactness, reflection
// symmetry, and byte-level rerun determinism. Each check writes its result
// files and a manifest under its own subdirectory; the whole battery runs
// twice (run_a, run_b) so the final check can compare the trees.

namespace seedbank {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct BatteryOptions {
  std::string out_dir = "acceptance_out";
  std::uint64_t seed = 20260819;
  int jobs = 0;       // 0 = library default thread count
  bool quick = false; // reduced replicate counts; smoke use only, not the gate
};

// Runs checks 1-10 into `dir` and returns their results.
std::vector<CriterionResult> run_core_criteria(const BatteryOptions& opt, const std::string& dir);

// Full battery: two core passes plus the rerun-determinism comparison.
std::vector<CriterionResult> run_acceptance(const BatteryOptions& opt);

}  // namespace seedbank
