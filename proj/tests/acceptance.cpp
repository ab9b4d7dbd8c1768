// Acceptance battery driver: runs the eleven end-to-end checks and prints one
// pass/fail line each. Exits nonzero when any check fails.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "seedbank/battery.hpp"

int main(int argc, char** argv) {
  seedbank::BatteryOptions opt;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    auto next = [&](const char* flag) -> const char* {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "missing value for %s\n", flag);
        std::exit(2);
      }
      return argv[++i];
    };
    if (arg == "--out") {
      opt.out_dir = next("--out");
    } else if (arg == "--seed") {
      opt.seed = std::strtoull(next("--seed"), nullptr, 10);
    } else if (arg == "--jobs") {
      opt.jobs = std::atoi(next("--jobs"));
    } else if (arg == "--quick") {
      opt.quick = true;
    } else if (arg == "--help" || arg == "-h") {
      std::printf("usage: acceptance [--out DIR] [--seed N] [--jobs N] [--quick]\n");
      return 0;
    } else {
      std::fprintf(stderr, "unknown argument: %s\n", arg.c_str());
      return 2;
    }
  }

  std::vector<seedbank::CriterionResult> results;
  try {
    results = seedbank::run_acceptance(opt);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance battery aborted: %s\n", e.what());
    return 1;
  }

  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] %2d %-28s (%.1fs) %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds, r.detail.c_str());
    if (!r.pass) ++failed;
  }
  if (failed == 0) {
    std::printf("ACCEPTED: all %zu checks passed\n", results.size());
    return 0;
  }
  std::printf("REJECTED: %d of %zu checks failed\n", failed, results.size());
  return 1;
}
