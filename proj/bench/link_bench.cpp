// Compares the OpenMP Monte-Carlo driver against the serial reference on
// the same workload and checks that the two produce identical counts.

#include <chrono>
#include <cstdio>
#include <cstring>

#include "hybridmc/config.hpp"
#include "hybridmc/link.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace hybridmc;
namespace chrono = std::chrono;

namespace {

double run_ms(bool parallel, const SystemConfig& cfg, int trials, BerEstimate& out) {
  auto t0 = chrono::steady_clock::now();
  out = monte_carlo_ber(cfg, trials, 0, 0, parallel);
  auto t1 = chrono::steady_clock::now();
  return chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int trials = 64;
  if (argc > 2 && std::strcmp(argv[1], "--trials") == 0) trials = std::atoi(argv[2]);

  SystemConfig cfg;
  cfg.tx = {1000.0, 100.0, 8};
  cfg.diffusion = {300.0, 0.1, 8};
  cfg.cnd.M = 6;
  cfg.cnd.r = {6.0, 6.2, 6.4, 6.6, 6.8, 7.0};
  cfg.cnd.Vr = 0.15;
  cfg = validate_config(cfg);

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif

  BerEstimate serial, parallel;
  double ms_serial = run_ms(false, cfg, trials, serial);
  double ms_parallel = run_ms(true, cfg, trials, parallel);

  bool identical = std::memcmp(serial.joint, parallel.joint, sizeof(serial.joint)) == 0 &&
                   serial.pe == parallel.pe;
  std::printf("monte_carlo_ber, %d trials x %d bits\n", trials, cfg.tx.nbits);
  std::printf("  serial   %8.1f ms\n", ms_serial);
  std::printf("  openmp   %8.1f ms   speedup %.2fx\n", ms_parallel, ms_serial / ms_parallel);
  std::printf("  results  %s\n", identical ? "identical" : "MISMATCH");
  return identical ? 0 : 1;
}
