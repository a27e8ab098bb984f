#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hybridmc/errors.hpp"

namespace hybridmc {

// Binary payload: the source sequence X_i, the relay sequence Y_i and the
// decoded sequence Z_i are all carried by this type.
struct Bits {
  std::vector<std::uint8_t> values;

  Bits() = default;
  explicit Bits(std::vector<std::uint8_t> v) : values(std::move(v)) {}

  // Parses a string such as "1011". Throws on anything but '0'/'1'.
  static Bits from_string(const std::string& s);
  std::string to_string() const;

  std::size_t size() const { return values.size(); }
  bool operator==(const Bits&) const = default;
};

// Uniform sampling grid, milliseconds.
struct TimeGrid {
  double t0 = 0.0;
  double dt = 1.0;
  std::size_t n = 1;

  double time_at(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
  double t_end() const { return time_at(n - 1); }
  bool operator==(const TimeGrid&) const = default;

  static TimeGrid covering(double t0, double t1, double dt);
};

enum class SignalUnits { molecules_per_um3, uA_per_cm2, mV };

std::string to_string(SignalUnits u);

// One sampled real-valued signal on a uniform grid. Carries concentration
// traces, injected currents and membrane potentials.
struct SampledSignal {
  TimeGrid grid;
  std::vector<double> values;
  SignalUnits units = SignalUnits::molecules_per_um3;

  SampledSignal() = default;
  SampledSignal(TimeGrid g, SignalUnits u)
      : grid(g), values(g.n, 0.0), units(u) {}

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

// Sorted spike times (ms) with the refractory spacing they were produced
// under. Invariants: strictly increasing, consecutive gaps >= refractory.
struct SpikeTrain {
  std::vector<double> times;
  double refractory = 0.0;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }

  // Number of spikes in [slot*T, (slot+1)*T).
  std::size_t count_in_slot(std::size_t slot, double T) const;

  void check_invariants() const;
};

// Membrane potential trace (mV) with spike times once detection has run.
struct MembraneTrace {
  SampledSignal signal;
  std::vector<double> threshold_crossings;
};

}  // namespace hybridmc
