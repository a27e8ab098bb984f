#pragma once

#include "hybridmc/config.hpp"
#include "hybridmc/neuro.hpp"
#include "hybridmc/receiver.hpp"
#include "hybridmc/types.hpp"

namespace hybridmc {

// Everything one end-to-end run produces, kept for trace export.
struct LinkTrialResult {
  Bits x;                                    // payload
  std::vector<SampledSignal> concentration;  // per CND, slow grid
  CndStageResult cnd;                        // qrx, currents, membrane, spikes, Y
  SpikeTrain relayed;                        // after the N-hop chain
  MembraneTrace rx_potential;                // receiver-side tap (correlation mode)
  std::vector<double> gamma;                 // per-slot decision statistic
  Bits z;                                    // decoded
};

// Runs TX -> diffusion -> CND cluster -> relay chain -> RX for one payload.
// payload.size() must equal cfg.tx.nbits. Pure given the trial stream; the
// per-CND traces are computed in parallel when OpenMP is enabled.
LinkTrialResult run_link_trial(const SystemConfig& cfg, const Bits& payload,
                               const RandomStream& trial_stream);

// Monte-Carlo BER over i.i.d. equiprobable payloads. point_i/point_j label
// the sweep grid point so every point draws from its own stream family.
BerEstimate monte_carlo_ber(const SystemConfig& cfg, int trials, std::int64_t point_i = 0,
                            std::int64_t point_j = 0, bool parallel = true);

}  // namespace hybridmc
