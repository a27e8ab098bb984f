#include "hybridmc/link.hpp"

#include <cmath>

#include "hybridmc/diffusion.hpp"
#include "hybridmc/relay.hpp"

namespace hybridmc {

LinkTrialResult run_link_trial(const SystemConfig& cfg, const Bits& payload,
                               const RandomStream& trial_stream) {
  if (payload.size() != static_cast<std::size_t>(cfg.tx.nbits))
    throw LengthMismatch("payload length " + std::to_string(payload.size()) +
                         " does not match tx.nbits " + std::to_string(cfg.tx.nbits));

  LinkTrialResult r;
  r.x = payload;
  auto nslots = payload.size();
  double T = cfg.tx.T;
  double t_end = static_cast<double>(nslots) * T;

  EmissionSchedule schedule = encode_ook(payload, cfg.tx);

  TimeGrid slow = TimeGrid::covering(0.0, t_end, cfg.sim.dt_slow);
  RandomStream diff_stream = trial_stream.child("diffusion");
  r.concentration.resize(static_cast<std::size_t>(cfg.cnd.M));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int k = 0; k < cfg.cnd.M; ++k) {
    RandomStream cs = diff_stream.child("cnd", k);
    r.concentration[static_cast<std::size_t>(k)] =
        sample_concentration(cfg.cnd.r[static_cast<std::size_t>(k)], slow, schedule,
                             cfg.diffusion.D, cfg.diffusion.sigma1, cfg.diffusion.isi_memory, cs);
  }

  r.cnd = cnd_stage(r.concentration, cfg);

  RandomStream relay_stream = trial_stream.child("relay");
  r.relayed = transmit_chain(r.cnd.spikes, cfg.relay.N, cfg, relay_stream);

  if (cfg.rx.mode == RxMode::correlation) {
    TimeGrid rx_grid = TimeGrid::covering(0.0, t_end + 20.0 * cfg.relay.tp, cfg.sim.dt_fast);
    RandomStream rx_stream = trial_stream.child("rx");
    r.rx_potential = postsynaptic_potential(r.relayed, cfg.relay, cfg.neuron.V0, rx_grid,
                                            rx_stream, 1.0);
    r.gamma.resize(nslots);
    r.z.values.resize(nslots);
    for (std::size_t i = 0; i < nslots; ++i) {
      r.gamma[i] = correlation_gamma(r.rx_potential, i, T, cfg.neuron.V0, cfg.relay.hp,
                                     cfg.relay.tp);
      r.z.values[i] = r.gamma[i] >= cfg.rx.theta2 ? 1 : 0;
    }
  } else {
    r.z = decode(r.relayed, T, nslots);
  }
  return r;
}

BerEstimate monte_carlo_ber(const SystemConfig& cfg, int trials, std::int64_t point_i,
                            std::int64_t point_j, bool parallel) {
  auto fn = [&cfg](int, const RandomStream& trial_stream) {
    Bits payload;
    payload.values.resize(static_cast<std::size_t>(cfg.tx.nbits));
    RandomStream ps = trial_stream.child("payload");
    for (auto& b : payload.values) b = ps.bernoulli(0.5) ? 1 : 0;

    LinkTrialResult r = run_link_trial(cfg, payload, trial_stream);

    TrialOutcome o;
    for (std::size_t i = 0; i < payload.size(); ++i)
      o.add(r.x.values[i], r.cnd.y.values[i], r.z.values[i]);
    return o;
  };
  return estimate_ber(fn, trials, cfg.sim.seed, point_i, point_j, parallel);
}

}  // namespace hybridmc
