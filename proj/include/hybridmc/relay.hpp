#pragma once

#include "hybridmc/config.hpp"
#include "hybridmc/random.hpp"
#include "hybridmc/types.hpp"

namespace hybridmc {

// Alpha-function EPSP (Eq. 9): h(t) = (hp/tp) * t * exp(1 - t/tp), peak hp
// at t = tp, zero for t < 0.
double epsp_shape(double t_ms, double hp, double tp);

// Bernoulli(p) thinning of a spike train, one independent draw per spike.
SpikeTrain vesicle_release(const SpikeTrain& train, double p, RandomStream& stream);

// Postsynaptic potential of one synapse: V0 plus one EPSP per released
// spike with amplitude q ~ P(q) (scaled by `gain`) plus per-sample
// N(0, sigma2^2) noise.
MembraneTrace postsynaptic_potential(const SpikeTrain& released, const RelayParams& relay,
                                     double V0, const TimeGrid& grid, RandomStream& stream,
                                     double gain = 1.0);

// One hop of the Fig. 3 chain: release -> EPSP summation (with the synaptic
// gain) -> threshold re-firing.
struct RelayHopResult {
  SpikeTrain released;
  MembraneTrace potential;
  SpikeTrain output;
};

RelayHopResult relay_neuron(const SpikeTrain& input, const SystemConfig& cfg,
                            RandomStream& stream);

// N-fold composition of relay_neuron with per-hop child streams; N = 0
// returns the input unchanged.
SpikeTrain transmit_chain(const SpikeTrain& input, int n_hops, const SystemConfig& cfg,
                          const RandomStream& stream);

}  // namespace hybridmc
