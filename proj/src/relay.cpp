#include "hybridmc/relay.hpp"

#include <algorithm>
#include <cmath>

#include "hybridmc/neuro.hpp"

namespace hybridmc {

double epsp_shape(double t_ms, double hp, double tp) {
  if (t_ms < 0.0) return 0.0;
  return hp / tp * t_ms * std::exp(1.0 - t_ms / tp);
}

SpikeTrain vesicle_release(const SpikeTrain& train, double p, RandomStream& stream) {
  SpikeTrain out;
  out.refractory = train.refractory;
  out.times.reserve(train.times.size());
  for (double t : train.times)
    if (stream.bernoulli(p)) out.times.push_back(t);
  return out;
}

namespace {

double draw_q(const QDist& d, RandomStream& stream) {
  if (d.kind == QDist::Kind::point) return d.mean;
  return stream.truncated_normal_nonneg(d.mean, d.stddev);
}

}  // namespace

MembraneTrace postsynaptic_potential(const SpikeTrain& released, const RelayParams& relay,
                                     double V0, const TimeGrid& grid, RandomStream& stream,
                                     double gain) {
  MembraneTrace out;
  out.signal = SampledSignal(grid, SignalUnits::mV);
  auto& v = out.signal.values;

  // EPSPs are ~zero past a few time constants; bound the scatter-add
  double support = 20.0 * relay.tp;
  for (double t_spike : released.times) {
    double q = draw_q(relay.q_dist, stream);
    double amp = gain * q / relay.hp;
    auto i0 = static_cast<std::ptrdiff_t>(std::ceil((t_spike - grid.t0) / grid.dt));
    auto i1 = static_cast<std::ptrdiff_t>(std::floor((t_spike + support - grid.t0) / grid.dt));
    i0 = std::max<std::ptrdiff_t>(i0, 0);
    i1 = std::min<std::ptrdiff_t>(i1, static_cast<std::ptrdiff_t>(grid.n) - 1);
    for (std::ptrdiff_t i = i0; i <= i1; ++i)
      v[static_cast<std::size_t>(i)] += amp * epsp_shape(grid.time_at(i) - t_spike, relay.hp, relay.tp);
  }
  if (relay.sigma2 > 0.0)
    for (auto& x : v) x += stream.normal(0.0, relay.sigma2);
  for (auto& x : v) x += V0;
  return out;
}

RelayHopResult relay_neuron(const SpikeTrain& input, const SystemConfig& cfg,
                            RandomStream& stream) {
  RelayHopResult hop;
  hop.released = vesicle_release(input, cfg.relay.p, stream);

  double t_end = input.times.empty() ? cfg.tx.T * cfg.tx.nbits
                                     : std::max(cfg.tx.T * cfg.tx.nbits, input.times.back());
  TimeGrid grid = TimeGrid::covering(0.0, t_end + 20.0 * cfg.relay.tp, cfg.sim.dt_fast);
  hop.potential = postsynaptic_potential(hop.released, cfg.relay, cfg.neuron.V0, grid, stream,
                                         cfg.relay.gain);
  hop.output = detect_spikes(hop.potential, cfg.neuron.theta1, cfg.neuron.tau_abs);
  return hop;
}

SpikeTrain transmit_chain(const SpikeTrain& input, int n_hops, const SystemConfig& cfg,
                          const RandomStream& stream) {
  SpikeTrain s = input;
  for (int j = 0; j < n_hops; ++j) {
    RandomStream hop_stream = stream.child("hop", j);
    s = relay_neuron(s, cfg, hop_stream).output;
  }
  return s;
}

}  // namespace hybridmc
