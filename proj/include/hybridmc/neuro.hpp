#pragma once

#include <vector>

#include "hybridmc/config.hpp"
#include "hybridmc/types.hpp"

namespace hybridmc {

// Sine stimulation current of one CND (Eq. 6): piecewise-constant amplitude
// mu*Qrx per slot riding a shared sin(2*pi*a*t + b). Kept in closed form so
// integrators can evaluate it at arbitrary times; sample() renders it.
struct CurrentWaveform {
  std::vector<double> slot_amplitudes;  // uA/cm^2
  double T = 0.0;                       // slot length, ms
  double a_hz = 0.0;
  double b_rad = 0.0;
  bool rectified = false;

  double value_at(double t_ms) const;
  SampledSignal sample(const TimeGrid& grid) const;

  // Element-wise amplitude sum; waveforms share a_hz, b_rad and T.
  static CurrentWaveform sum(const std::vector<CurrentWaveform>& parts);
};

// Eq. 6: memoryless per-slot mapping from received molecules to current.
CurrentWaveform inspired_current(const std::vector<double>& qrx_per_slot,
                                 const CndParams& cnd, double T);

// Eq. 7 Spike Response Model: V0 plus the sum of each current convolved with
// the passive membrane kernel nu(s) = (Rm/tau_m) exp(-s/tau_m). Linear, no
// spike reset.
MembraneTrace srm_potential(const std::vector<CurrentWaveform>& currents,
                            const NeuronParams& neuron, const TimeGrid& grid);

// Four-variable Hodgkin-Huxley integration of the summed stimulation
// current, fixed-step RK4. Voltages reported as V0 + u with u the classic
// rest-relative coordinate. Throws NumericalInstability on non-finite state.
MembraneTrace hh_integrate(const CurrentWaveform& total_current,
                           const NeuronParams& neuron, const TimeGrid& grid);

// Upward threshold crossings with linear interpolation; crossings within
// tau_abs of the previous accepted spike are suppressed.
SpikeTrain detect_spikes(const MembraneTrace& trace, double theta1, double tau_abs);

// Y_i = 1 iff at least one spike lies in [i*T, (i+1)*T).
Bits spikes_to_bits(const SpikeTrain& train, double T, std::size_t nbits);

// Full CND stage over M concentration traces: reception, currents, membrane
// integration (backend per config), spike detection, relay bits.
struct CndStageResult {
  std::vector<std::vector<double>> qrx;    // [cnd][slot]
  std::vector<CurrentWaveform> currents;   // per CND
  MembraneTrace membrane;
  SpikeTrain spikes;
  Bits y;
};

CndStageResult cnd_stage(const std::vector<SampledSignal>& traces, const SystemConfig& cfg);

}  // namespace hybridmc
