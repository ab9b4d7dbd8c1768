// Step-kernel benchmark: serial reference vs the OpenMP kernel on growing
// lattices, with a bit-equality check between the two. The fields start at
// one half everywhere so the noise branch fires at every site (worst case).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "seedbank/config.hpp"
#include "seedbank/rng.hpp"
#include "seedbank/spde.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace seedbank;

namespace {

SpdeState flat_state(const Grid1D& grid, double value) {
  SpdeState s;
  s.u.grid = grid;
  s.v.grid = grid;
  s.u.values.assign(grid.n, value);
  s.v.values.assign(grid.n, value);
  return s;
}

double run_kernel(const SimConfig& cfg, StepKernel kernel, int steps, SpdeState& out) {
  out = flat_state(cfg.grid, 0.5);
  SpdeStepper stepper(cfg, kernel, stream_key(cfg.seed, Stream::spde_noise));
  const auto t0 = std::chrono::steady_clock::now();
  for (int k = 0; k < steps; ++k) stepper.step(out, k);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> cells = {300, 4000, 40000};
  int steps = 200;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--steps" && i + 1 < argc) {
      steps = std::atoi(argv[++i]);
    } else if (arg == "--cells" && i + 1 < argc) {
      cells.clear();
      std::string list = argv[++i];
      std::size_t pos = 0;
      while (pos < list.size()) {
        std::size_t comma = list.find(',', pos);
        if (comma == std::string::npos) comma = list.size();
        cells.push_back(std::atoi(list.substr(pos, comma - pos).c_str()));
        pos = comma + 1;
      }
    } else {
      std::fprintf(stderr, "usage: %s [--steps N] [--cells n1,n2,...]\n", argv[0]);
      return 2;
    }
  }

  int threads = 1;
#ifdef _OPENMP
#pragma omp parallel
  {
#pragma omp single
    threads = omp_get_num_threads();
  }
#endif
  std::printf("step kernel benchmark: %d steps per lattice, %d thread(s)\n", steps, threads);
  std::printf("%10s %14s %14s %9s %8s\n", "sites", "serial Msps", "openmp Msps", "speedup",
              "equal");

  bool all_equal = true;
  for (int c : cells) {
    SimConfig cfg;
    cfg.grid = Grid1D::make(-0.05 * c, 0.05 * c, 0.1);
    cfg.dt = 0.004;
    cfg.t_max = steps * cfg.dt;
    cfg.seed = 12345;

    SpdeState serial_out, omp_out;
    const double ts = run_kernel(cfg, StepKernel::serial, steps, serial_out);
    const double tp = run_kernel(cfg, StepKernel::openmp, steps, omp_out);
    const bool equal = serial_out.u.values == omp_out.u.values &&
                       serial_out.v.values == omp_out.v.values;
    all_equal = all_equal && equal;
    const double work = static_cast<double>(cfg.grid.n) * steps / 1e6;
    std::printf("%10d %14.2f %14.2f %9.2f %8s\n", cfg.grid.n, work / ts, work / tp, ts / tp,
                equal ? "yes" : "NO");
  }
  if (!all_equal) {
    std::fprintf(stderr, "kernel outputs diverged; the counter-based noise contract is broken\n");
    return 1;
  }
  return 0;
}
