#include "hybridmc/types.hpp"

#include <algorithm>
#include <cmath>

namespace hybridmc {

Bits Bits::from_string(const std::string& s) {
  Bits b;
  b.values.reserve(s.size());
  for (char c : s) {
    if (c == '0') b.values.push_back(0);
    else if (c == '1') b.values.push_back(1);
    else throw LengthMismatch(std::string("bit string may contain only 0/1, got '") + c + "'");
  }
  return b;
}

std::string Bits::to_string() const {
  std::string s;
  s.reserve(values.size());
  for (auto v : values) s.push_back(v ? '1' : '0');
  return s;
}

TimeGrid TimeGrid::covering(double t0, double t1, double dt) {
  TimeGrid g;
  g.t0 = t0;
  g.dt = dt;
  g.n = static_cast<std::size_t>(std::ceil((t1 - t0) / dt - 1e-9)) + 1;
  return g;
}

std::string to_string(SignalUnits u) {
  switch (u) {
    case SignalUnits::molecules_per_um3: return "molecules_per_um3";
    case SignalUnits::uA_per_cm2: return "uA_per_cm2";
    case SignalUnits::mV: return "mV";
  }
  return "?";
}

std::size_t SpikeTrain::count_in_slot(std::size_t slot, double T) const {
  double lo = static_cast<double>(slot) * T;
  double hi = lo + T;
  auto b = std::lower_bound(times.begin(), times.end(), lo);
  auto e = std::lower_bound(times.begin(), times.end(), hi);
  return static_cast<std::size_t>(e - b);
}

void SpikeTrain::check_invariants() const {
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1]))
      throw LengthMismatch("spike times not strictly increasing");
    if (times[i] - times[i - 1] < refractory - 1e-9)
      throw LengthMismatch("spike gap below refractory spacing");
  }
}

}  // namespace hybridmc
