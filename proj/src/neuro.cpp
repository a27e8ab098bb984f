#include "hybridmc/neuro.hpp"

#include <algorithm>
#include <cmath>

#include "hybridmc/diffusion.hpp"

namespace hybridmc {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

// Gating rate helpers, classic squid-axon form with u relative to rest.
// x/(exp(x)-1) evaluated stably through the x -> 0 singularity.
inline double xexpm1(double x) {
  if (std::abs(x) < 1e-6) return 1.0 - 0.5 * x;
  return x / std::expm1(x);
}

inline double alpha_m(double u) { return 1.0 * xexpm1((25.0 - u) / 10.0); }
inline double beta_m(double u) { return 4.0 * std::exp(-u / 18.0); }
inline double alpha_h(double u) { return 0.07 * std::exp(-u / 20.0); }
inline double beta_h(double u) { return 1.0 / (std::exp((30.0 - u) / 10.0) + 1.0); }
inline double alpha_n(double u) { return 0.1 * xexpm1((10.0 - u) / 10.0); }
inline double beta_n(double u) { return 0.125 * std::exp(-u / 80.0); }

struct HhState {
  double u, m, h, n;
};

inline HhState hh_rhs(const HhState& s, double I, const HhParams& p) {
  double gNa = p.gNa * s.m * s.m * s.m * s.h;
  double gK = p.gK * s.n * s.n * s.n * s.n;
  double I_ion = gNa * (s.u - p.ENa) + gK * (s.u - p.EK) + p.gL * (s.u - p.EL);
  HhState d;
  d.u = (I - I_ion) / p.Cm;
  d.m = alpha_m(s.u) * (1.0 - s.m) - beta_m(s.u) * s.m;
  d.h = alpha_h(s.u) * (1.0 - s.h) - beta_h(s.u) * s.h;
  d.n = alpha_n(s.u) * (1.0 - s.n) - beta_n(s.u) * s.n;
  return d;
}

inline HhState axpy(const HhState& s, double c, const HhState& d) {
  return {s.u + c * d.u, s.m + c * d.m, s.h + c * d.h, s.n + c * d.n};
}

}  // namespace

double CurrentWaveform::value_at(double t_ms) const {
  if (t_ms < 0.0 || slot_amplitudes.empty()) return 0.0;
  auto slot = static_cast<std::size_t>(t_ms / T);
  if (slot >= slot_amplitudes.size()) return 0.0;
  double v = slot_amplitudes[slot] * std::sin(kTwoPi * a_hz * t_ms * 1e-3 + b_rad);
  return rectified ? std::max(0.0, v) : v;
}

SampledSignal CurrentWaveform::sample(const TimeGrid& grid) const {
  SampledSignal out(grid, SignalUnits::uA_per_cm2);
  for (std::size_t i = 0; i < grid.n; ++i) out.values[i] = value_at(grid.time_at(i));
  return out;
}

CurrentWaveform CurrentWaveform::sum(const std::vector<CurrentWaveform>& parts) {
  if (parts.empty()) return {};
  CurrentWaveform total = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) {
    const auto& p = parts[k];
    if (p.T != total.T || p.a_hz != total.a_hz || p.b_rad != total.b_rad ||
        p.rectified != total.rectified || p.slot_amplitudes.size() != total.slot_amplitudes.size())
      throw GridMismatch("cannot sum current waveforms with differing slot layout or sine parameters");
    for (std::size_t i = 0; i < total.slot_amplitudes.size(); ++i)
      total.slot_amplitudes[i] += p.slot_amplitudes[i];
  }
  return total;
}

CurrentWaveform inspired_current(const std::vector<double>& qrx_per_slot,
                                 const CndParams& cnd, double T) {
  CurrentWaveform w;
  w.T = T;
  w.a_hz = cnd.a;
  w.b_rad = cnd.b;
  w.rectified = cnd.rectify;
  w.slot_amplitudes.reserve(qrx_per_slot.size());
  for (double q : qrx_per_slot) w.slot_amplitudes.push_back(cnd.mu_uA_per_cm2() * q);
  return w;
}

MembraneTrace srm_potential(const std::vector<CurrentWaveform>& currents,
                            const NeuronParams& neuron, const TimeGrid& grid) {
  MembraneTrace out;
  out.signal = SampledSignal(grid, SignalUnits::mV);
  std::vector<double> acc(grid.n, 0.0);
  double dt = grid.dt;
  double decay = std::exp(-dt / neuron.tau_m);
  // Exponential-Euler recurrence for y' = (Rm*A - y)/tau_m, exact for
  // currents held constant over one step.
  for (const auto& cur : currents) {
    double y = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) {
      acc[i] += y;
      double A = cur.value_at(grid.time_at(i));
      y = y * decay + neuron.Rm * A * (1.0 - decay);
    }
  }
  for (std::size_t i = 0; i < grid.n; ++i) out.signal.values[i] = neuron.V0 + acc[i];
  return out;
}

MembraneTrace hh_integrate(const CurrentWaveform& total_current,
                           const NeuronParams& neuron, const TimeGrid& grid) {
  double dt = grid.dt;
  if (dt > 0.025)
    throw ConfigError("hh_integrate requires dt <= 0.025 ms, got " + std::to_string(dt));
  const HhParams& p = neuron.hh;

  HhState s;
  s.u = 0.0;
  s.m = alpha_m(0) / (alpha_m(0) + beta_m(0));
  s.h = alpha_h(0) / (alpha_h(0) + beta_h(0));
  s.n = alpha_n(0) / (alpha_n(0) + beta_n(0));

  MembraneTrace out;
  out.signal = SampledSignal(grid, SignalUnits::mV);
  out.signal.values[0] = neuron.V0 + s.u;

  for (std::size_t i = 0; i + 1 < grid.n; ++i) {
    double t = grid.time_at(i);
    double I0 = total_current.value_at(t);
    double Ih = total_current.value_at(t + 0.5 * dt);
    double I1 = total_current.value_at(t + dt);

    HhState k1 = hh_rhs(s, I0, p);
    HhState k2 = hh_rhs(axpy(s, 0.5 * dt, k1), Ih, p);
    HhState k3 = hh_rhs(axpy(s, 0.5 * dt, k2), Ih, p);
    HhState k4 = hh_rhs(axpy(s, dt, k3), I1, p);

    s.u += dt / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
    s.m += dt / 6.0 * (k1.m + 2.0 * k2.m + 2.0 * k3.m + k4.m);
    s.h += dt / 6.0 * (k1.h + 2.0 * k2.h + 2.0 * k3.h + k4.h);
    s.n += dt / 6.0 * (k1.n + 2.0 * k2.n + 2.0 * k3.n + k4.n);

    if (!std::isfinite(s.u) || !std::isfinite(s.m) || !std::isfinite(s.h) || !std::isfinite(s.n))
      throw NumericalInstability("HH state became non-finite at t=" + std::to_string(t) +
                                 " ms (dt too large?)");
    out.signal.values[i + 1] = neuron.V0 + s.u;
  }
  return out;
}

SpikeTrain detect_spikes(const MembraneTrace& trace, double theta1, double tau_abs) {
  SpikeTrain train;
  train.refractory = tau_abs;
  const auto& v = trace.signal.values;
  const auto& g = trace.signal.grid;
  double last = -1e300;
  for (std::size_t i = 0; i + 1 < g.n; ++i) {
    if (v[i] < theta1 && v[i + 1] >= theta1) {
      double frac = (theta1 - v[i]) / (v[i + 1] - v[i]);
      double t = g.time_at(i) + frac * g.dt;
      if (t - last >= tau_abs) {
        train.times.push_back(t);
        last = t;
      }
    }
  }
  return train;
}

Bits spikes_to_bits(const SpikeTrain& train, double T, std::size_t nbits) {
  Bits y;
  y.values.assign(nbits, 0);
  for (double t : train.times) {
    auto slot = static_cast<std::ptrdiff_t>(std::floor(t / T));
    if (slot >= 0 && slot < static_cast<std::ptrdiff_t>(nbits)) y.values[slot] = 1;
  }
  return y;
}

CndStageResult cnd_stage(const std::vector<SampledSignal>& traces, const SystemConfig& cfg) {
  CndStageResult r;
  auto nslots = static_cast<std::size_t>(cfg.tx.nbits);
  double T = cfg.tx.T;

  r.qrx.resize(traces.size());
  r.currents.reserve(traces.size());
  for (std::size_t k = 0; k < traces.size(); ++k) {
    r.qrx[k].resize(nslots);
    for (std::size_t i = 0; i < nslots; ++i)
      r.qrx[k][i] = received_quantity(traces[k], i, T, cfg.cnd);
    r.currents.push_back(inspired_current(r.qrx[k], cfg.cnd, T));
  }

  TimeGrid fast = TimeGrid::covering(0.0, static_cast<double>(nslots) * T, cfg.sim.dt_fast);
  if (cfg.neuron.backend == NeuronBackend::HH) {
    // gap junctions inject the summed cluster current into one neuron
    r.membrane = hh_integrate(CurrentWaveform::sum(r.currents), cfg.neuron, fast);
  } else {
    r.membrane = srm_potential(r.currents, cfg.neuron, fast);
  }
  r.spikes = detect_spikes(r.membrane, cfg.neuron.theta1, cfg.neuron.tau_abs);
  r.membrane.threshold_crossings = r.spikes.times;
  r.y = spikes_to_bits(r.spikes, T, nslots);
  return r;
}

}  // namespace hybridmc
