#include "hybridmc/receiver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "hybridmc/neuro.hpp"
#include "hybridmc/relay.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hybridmc {

namespace {

// Lag resolution for the matched filter; fine enough that the worst-case
// alignment loss of the alpha-function autocorrelation is ~0.1%.
constexpr double kLagResolutionMs = 0.05;
constexpr double kTemplateSupportTp = 12.0;

}  // namespace

double correlation_gamma(const MembraneTrace& potential, std::size_t slot, double T,
                         double V0, double hp, double tp) {
  const auto& g = potential.signal.grid;
  const auto& v = potential.signal.values;
  double lo = static_cast<double>(slot) * T;
  double hi = lo + T;
  if (lo < g.t0 - 1e-9 || hi > g.t_end() + 1e-9)
    throw SlotOutOfRange("potential does not cover slot " + std::to_string(slot));

  auto stride = static_cast<std::size_t>(std::max(1.0, std::round(kLagResolutionMs / g.dt)));
  double step = static_cast<double>(stride) * g.dt;

  // template on the decimated lattice
  auto tlen = static_cast<std::size_t>(kTemplateSupportTp * tp / step) + 1;
  std::vector<double> tmpl(tlen);
  double energy = 0.0;
  for (std::size_t j = 0; j < tlen; ++j) {
    tmpl[j] = epsp_shape(static_cast<double>(j) * step, hp, tp);
    energy += tmpl[j] * tmpl[j];
  }

  auto i_lo = static_cast<std::size_t>(std::llround((lo - g.t0) / g.dt));
  auto i_hi = static_cast<std::size_t>(std::llround((hi - g.t0) / g.dt));
  double best = 0.0;
  for (std::size_t i = i_lo; i < i_hi; i += stride) {
    double dot = 0.0;
    for (std::size_t j = 0; j < tlen; ++j) {
      std::size_t idx = i + j * stride;
      if (idx >= g.n) break;
      dot += (v[idx] - V0) * tmpl[j];
    }
    best = std::max(best, dot / energy);
  }
  return best;
}

Bits decode(const MembraneTrace& potential, const RxParams& rx, const RelayParams& relay,
            double V0, double T, std::size_t nbits) {
  Bits z;
  z.values.resize(nbits);
  for (std::size_t i = 0; i < nbits; ++i) {
    double gamma = correlation_gamma(potential, i, T, V0, relay.hp, relay.tp);
    z.values[i] = gamma >= rx.theta2 ? 1 : 0;
  }
  return z;
}

Bits decode(const SpikeTrain& train, double T, std::size_t nbits) {
  return spikes_to_bits(train, T, nbits);
}

BitErrorCounts bit_errors(const Bits& tx, const Bits& rx) {
  if (tx.size() != rx.size())
    throw LengthMismatch("bit_errors: tx has " + std::to_string(tx.size()) + " bits, rx has " +
                         std::to_string(rx.size()));
  BitErrorCounts c;
  for (std::size_t i = 0; i < tx.size(); ++i) {
    if (tx.values[i] == rx.values[i]) continue;
    ++c.errors;
    if (tx.values[i]) ++c.misses;
    else ++c.false_alarms;
  }
  return c;
}

std::string BerEstimate::to_json() const {
  char buf[768];
  std::snprintf(buf, sizeof(buf),
                "{\"pe\": %.17g, \"trials\": %llu, \"bits_total\": %llu, "
                "\"bit_errors\": %llu, \"ci95_lo\": %.17g, \"ci95_hi\": %.17g, "
                "\"p_y0_given_x1\": %.17g, \"p_y1_given_x0\": %.17g, "
                "\"p_z0_given_y1\": %.17g, \"p_z1_given_y0\": %.17g}",
                pe, static_cast<unsigned long long>(trials),
                static_cast<unsigned long long>(bits_total),
                static_cast<unsigned long long>(bit_errors), ci95_lo, ci95_hi, p_y0_given_x1,
                p_y1_given_x0, p_z0_given_y1, p_z1_given_y0);
  return buf;
}

BerEstimate estimate_ber(const TrialFn& fn, int trials, std::uint64_t seed,
                         std::int64_t point_i, std::int64_t point_j, bool parallel) {
  if (trials < 1) throw ConfigError("trials must be >= 1");

  RandomStream point_stream = RandomStream(seed).child("pt", point_i).child("pt2", point_j);
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));

  // a failed trial must abort the whole estimate, never bias it; exceptions
  // cannot unwind through the OpenMP region, so carry the first one out
  std::exception_ptr failure = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int t = 0; t < trials; ++t) {
    try {
      outcomes[static_cast<std::size_t>(t)] = fn(t, point_stream.child("trial", t));
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical(hybridmc_estimate_failure)
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  BerEstimate est;
  est.trials = static_cast<std::uint64_t>(trials);
  for (const auto& o : outcomes)
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z) est.joint[x][y][z] += o.joint[x][y][z];

  auto j = [&](int x, int y, int z) { return est.joint[x][y][z]; };
  std::uint64_t n_x1 = 0, n_x0 = 0, n_y1 = 0, n_y0 = 0;
  for (int y = 0; y < 2; ++y)
    for (int z = 0; z < 2; ++z) {
      n_x1 += j(1, y, z);
      n_x0 += j(0, y, z);
    }
  for (int x = 0; x < 2; ++x)
    for (int z = 0; z < 2; ++z) {
      n_y1 += j(x, 1, z);
      n_y0 += j(x, 0, z);
    }
  est.bits_total = n_x1 + n_x0;
  est.bit_errors = j(1, 0, 0) + j(1, 1, 0) + j(0, 0, 1) + j(0, 1, 1);
  est.pe = est.bits_total ? static_cast<double>(est.bit_errors) / static_cast<double>(est.bits_total) : 0.0;

  double n = static_cast<double>(est.bits_total);
  double half = n > 0 ? 1.959963984540054 * std::sqrt(est.pe * (1.0 - est.pe) / n) : 0.0;
  est.ci95_lo = std::max(0.0, est.pe - half);
  est.ci95_hi = std::min(1.0, est.pe + half);

  auto ratio = [](std::uint64_t num, std::uint64_t den) {
    return den ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
  };
  est.p_y0_given_x1 = ratio(j(1, 0, 0) + j(1, 0, 1), n_x1);
  est.p_y1_given_x0 = ratio(j(0, 1, 0) + j(0, 1, 1), n_x0);
  est.p_z0_given_y1 = ratio(j(0, 1, 0) + j(1, 1, 0), n_y1);
  est.p_z1_given_y0 = ratio(j(0, 0, 1) + j(1, 0, 1), n_y0);
  return est;
}

}  // namespace hybridmc
