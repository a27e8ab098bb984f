#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hybridmc/errors.hpp"

namespace hybridmc {

enum class NeuronBackend { SRM, HH };
enum class RxMode { correlation, spike_count };

// EPSP amplitude distribution descriptor. Text forms:
//   "point:<value>"                 degenerate point mass
//   "truncnormal:<mean>:<std>"      normal floored at 0
struct QDist {
  enum class Kind { point, truncnormal } kind = Kind::truncnormal;
  double mean = 1.0;
  double stddev = 0.2;

  static QDist parse(const std::string& text);
  std::string to_string() const;
  bool operator==(const QDist&) const = default;
};

struct TxParams {
  double Qtx = 1e5;   // molecules emitted per "1" slot
  double T = 100.0;   // slot length, ms
  int nbits = 16;     // payload length per Monte-Carlo trial
};

struct DiffusionParams {
  double D = 0.1;        // diffusion coefficient, um^2/s
  double sigma1 = 0.1;   // channel noise std, molecules/um^3
  int isi_memory = 5;    // prior slots kept in the Eq. 3 superposition
};

struct CndParams {
  int M = 6;
  std::vector<double> r = {15, 16, 17, 18, 19, 20};  // TX->CND distances, um
  // Optional distance rule "linspace:lo:hi": the cluster spans [lo, hi] and
  // validation materializes r as M evenly spaced points, so sweeping cnd.M
  // stays consistent with the M == len(r) invariant. Empty when r is an
  // explicit list.
  std::string r_rule;
  double eps_bind = 0.1;      // ligand binding rate
  double eps_release = 0.08;  // ligand release rate (Eq. 4 denominator)
  double rho = 0.5;           // receptor concentration, umol/L
  double Vr = 1.0;            // receiving volume, um^3
  double mu = 20.0;           // current per molecule, nA/cm^2
  double a = 40.0;            // sine frequency, Hz
  double b = 0.0;             // sine phase, rad
  bool rectify = false;       // clip negative half-waves before injection

  // receptors per um^3 after the one-time unit conversion
  double rho_per_um3() const;
  // current sensitivity in uA/cm^2 per molecule
  double mu_uA_per_cm2() const { return mu * 1e-3; }
  // Eq. 4 prefactor eps_bind/eps_release * Vr * rho
  double reception_gain() const;
};

struct HhParams {
  // Classic squid-axon constants, voltages relative to rest.
  double Cm = 1.0;     // uF/cm^2
  double gNa = 120.0;  // mS/cm^2
  double gK = 36.0;
  double gL = 0.3;
  double ENa = 115.0;  // mV above rest
  double EK = -12.0;
  double EL = 10.613;
};

struct NeuronParams {
  double V0 = -70.0;      // resting potential, mV
  double theta1 = -55.0;  // firing threshold, mV
  double tau_abs = 20.0;  // absolute refractory ("over 15 ms"), ms
  double tau_m = 10.0;    // SRM membrane time constant, ms
  double Rm = 15.0;       // SRM gain, mV per uA/cm^2 at steady state
  HhParams hh;
  NeuronBackend backend = NeuronBackend::HH;
};

struct RelayParams {
  int N = 0;            // hop count; 0 = undistorted pass-through
  double p = 1.0;       // vesicle release probability
  QDist q_dist;         // EPSP amplitude distribution (mV)
  double hp = 1.0;      // EPSP magnitude, mV
  double tp = 0.5;      // EPSP time to peak, ms
  double sigma2 = 0.1;  // neural noise std, mV
  double gain = 20.0;   // synaptic gain so one release re-crosses threshold
};

struct RxParams {
  double theta2 = 1.0;
  RxMode mode = RxMode::correlation;
};

struct SimParams {
  double dt_fast = 0.01;  // membrane integration step, ms
  double dt_slow = 1.0;   // concentration sampling step, ms
  std::uint64_t seed = 12345;
};

struct SystemConfig {
  TxParams tx;
  DiffusionParams diffusion;
  CndParams cnd;
  NeuronParams neuron;
  RelayParams relay;
  RxParams rx;
  SimParams sim;

  bool q_dist_explicit = false;  // whether relay.q_dist came from input
};

// Parses the flat key=value text document. Unknown keys, malformed lines and
// unparsable values raise ConfigError. Does not validate.
SystemConfig parse_config(const std::string& text);

// Assigns one field by its dotted key, same syntax as the file format.
void set_config_field(SystemConfig& cfg, const std::string& key, const std::string& value);

// Reads one numeric field by dotted key (sweep parameter resolution).
double get_numeric_field(const SystemConfig& cfg, const std::string& key);

// Checks every invariant, fills derived defaults, returns the validated
// config. Throws ConfigError listing all violations.
SystemConfig validate_config(SystemConfig cfg);

// Full-precision flat text form; parse(serialize(cfg)) == cfg field-by-field.
std::string serialize_config(const SystemConfig& cfg);

// File convenience: read, apply "key=value" overrides in order, validate.
SystemConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

}  // namespace hybridmc
