#pragma once

#include "hybridmc/config.hpp"
#include "hybridmc/random.hpp"
#include "hybridmc/types.hpp"

namespace hybridmc {

// OOK emission schedule: an impulse of Qtx molecules at the start of every
// "1" slot, nothing for "0".
struct EmissionSchedule {
  Bits slot_bits;
  double Qtx = 0.0;  // molecules
  double T = 0.0;    // slot length, ms

  std::size_t nslots() const { return slot_bits.size(); }
  double emitted(std::size_t slot) const { return slot_bits.values[slot] ? Qtx : 0.0; }
};

EmissionSchedule encode_ook(const Bits& bits, const TxParams& tx);

// Free-space Green's function of Fick's second law, 1/um^3.
// x in um, t elapsed ms, D in um^2/s. Zero for t <= 0 (causality).
double green_kernel(double x_um, double t_ms, double D_um2_s);

// Deterministic superposed concentration at distance r and time t, summing
// emissions of the most recent isi_memory prior slots plus the current one.
double concentration_at(double r_um, double t_ms, const EmissionSchedule& schedule,
                        double D_um2_s, int isi_memory);

// Concentration trace on a grid with additive N(0, sigma1^2) noise per
// sample, clamped at 0 after the noise is added.
SampledSignal sample_concentration(double r_um, const TimeGrid& grid,
                                   const EmissionSchedule& schedule, double D_um2_s,
                                   double sigma1, int isi_memory, RandomStream& stream);

// Eq. 4 molecule reception for one slot: gain * integral of the trace over
// [slot*T, (slot+1)*T], trapezoidal, time in seconds.
double received_quantity(const SampledSignal& trace, std::size_t slot, double T,
                         const CndParams& cnd);

}  // namespace hybridmc
