#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "hybridmc/config.hpp"
#include "hybridmc/random.hpp"
#include "hybridmc/types.hpp"

namespace hybridmc {

// Decision statistic gamma for one slot: template-energy-normalised matched
// filter against the EPSP shape, maximised over the lag within the slot.
// One clean unit EPSP gives gamma ~= 1, so theta2 = 1 sits at the
// one-EPSP operating point.
double correlation_gamma(const MembraneTrace& potential, std::size_t slot, double T,
                         double V0, double hp, double tp);

// Eq. 10 decoding over nbits slots.
Bits decode(const MembraneTrace& potential, const RxParams& rx, const RelayParams& relay,
            double V0, double T, std::size_t nbits);
Bits decode(const SpikeTrain& train, double T, std::size_t nbits);

struct BitErrorCounts {
  std::uint64_t errors = 0;        // Hamming distance
  std::uint64_t misses = 0;        // tx 1, rx 0
  std::uint64_t false_alarms = 0;  // tx 0, rx 1
};

BitErrorCounts bit_errors(const Bits& tx, const Bits& rx);

// Per-trial joint slot counts over (X, Y, Z).
struct TrialOutcome {
  std::uint64_t joint[2][2][2] = {};

  void add(int x, int y, int z) { ++joint[x][y][z]; }
};

// Monte-Carlo BER estimate with the Eq. 12 conditional decomposition.
struct BerEstimate {
  std::uint64_t trials = 0;
  std::uint64_t bits_total = 0;
  std::uint64_t bit_errors = 0;
  double pe = 0.0;
  double ci95_lo = 0.0;
  double ci95_hi = 0.0;
  double p_y0_given_x1 = 0.0;
  double p_y1_given_x0 = 0.0;
  double p_z0_given_y1 = 0.0;
  double p_z1_given_y0 = 0.0;
  std::uint64_t joint[2][2][2] = {};  // [x][y][z]

  std::string to_json() const;
};

// Aggregates trial outcomes into a BerEstimate. The trial function runs the
// channel (physical pipeline or a synthetic stand-in for estimator tests);
// streams are derived per trial from (seed, point, trial), so results are
// independent of execution order. With parallel=true trials run under
// OpenMP; counts are integers, so the fold is schedule-invariant and
// bit-identical to the serial reference.
using TrialFn = std::function<TrialOutcome(int trial, const RandomStream& trial_stream)>;

BerEstimate estimate_ber(const TrialFn& fn, int trials, std::uint64_t seed,
                         std::int64_t point_i = 0, std::int64_t point_j = 0,
                         bool parallel = true);

}  // namespace hybridmc
