#include "hybridmc/diffusion.hpp"

#include <algorithm>
#include <cmath>

namespace hybridmc {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

EmissionSchedule encode_ook(const Bits& bits, const TxParams& tx) {
  EmissionSchedule s;
  s.slot_bits = bits;
  s.Qtx = tx.Qtx;
  s.T = tx.T;
  return s;
}

double green_kernel(double x_um, double t_ms, double D_um2_s) {
  if (t_ms <= 0.0) return 0.0;
  double Dt = D_um2_s * (t_ms * 1e-3);  // um^2
  double denom = 4.0 * kPi * Dt;
  return std::pow(denom, -1.5) * std::exp(-x_um * x_um / (4.0 * Dt));
}

double concentration_at(double r_um, double t_ms, const EmissionSchedule& schedule,
                        double D_um2_s, int isi_memory) {
  double T = schedule.T;
  auto nslots = static_cast<std::ptrdiff_t>(schedule.nslots());
  std::ptrdiff_t current = static_cast<std::ptrdiff_t>(std::floor(t_ms / T));
  std::ptrdiff_t first = std::max<std::ptrdiff_t>(0, current - isi_memory);
  std::ptrdiff_t last = std::min(current, nslots - 1);
  double c = 0.0;
  for (std::ptrdiff_t i = first; i <= last; ++i) {
    double q = schedule.emitted(static_cast<std::size_t>(i));
    if (q == 0.0) continue;
    c += q * green_kernel(r_um, t_ms - static_cast<double>(i) * T, D_um2_s);
  }
  return c;
}

SampledSignal sample_concentration(double r_um, const TimeGrid& grid,
                                   const EmissionSchedule& schedule, double D_um2_s,
                                   double sigma1, int isi_memory, RandomStream& stream) {
  SampledSignal out(grid, SignalUnits::molecules_per_um3);
  for (std::size_t i = 0; i < grid.n; ++i) {
    double c = concentration_at(r_um, grid.time_at(i), schedule, D_um2_s, isi_memory);
    if (sigma1 > 0.0) c += stream.normal(0.0, sigma1);
    out.values[i] = std::max(0.0, c);
  }
  return out;
}

double received_quantity(const SampledSignal& trace, std::size_t slot, double T,
                         const CndParams& cnd) {
  double dt = trace.grid.dt;
  double lo = static_cast<double>(slot) * T;
  double hi = lo + T;
  // slot boundaries sit on grid samples (validated at config time)
  auto idx_of = [&](double t) {
    double x = (t - trace.grid.t0) / dt;
    auto i = static_cast<std::ptrdiff_t>(std::llround(x));
    if (std::abs(x - static_cast<double>(i)) > 1e-6 || i < 0 ||
        i >= static_cast<std::ptrdiff_t>(trace.grid.n))
      throw SlotOutOfRange("trace does not cover slot " + std::to_string(slot));
    return static_cast<std::size_t>(i);
  };
  std::size_t i0 = idx_of(lo), i1 = idx_of(hi);
  double integral = 0.0;  // trapezoid, ms
  for (std::size_t i = i0; i < i1; ++i)
    integral += 0.5 * (trace.values[i] + trace.values[i + 1]) * dt;
  return cnd.reception_gain() * integral * 1e-3;  // time in seconds
}

}  // namespace hybridmc
