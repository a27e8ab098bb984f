#include "hybridmc/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace hybridmc {

namespace {

// 1 umol/L -> molecules per um^3: 1e-6 mol/L * N_A / 1e15 um^3/L
constexpr double kAvogadro = 6.02214076e23;
constexpr double kUmolPerLiterToPerUm3 = 1e-6 * kAvogadro / 1e15;  // = 602.214076

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& key, const std::string& s) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": cannot parse '" + s + "' as a number");
  }
}

std::int64_t parse_int(const std::string& key, const std::string& s) {
  try {
    std::size_t pos = 0;
    std::int64_t v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": cannot parse '" + s + "' as an integer");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& s) {
  try {
    std::size_t pos = 0;
    std::uint64_t v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": cannot parse '" + s + "' as an unsigned integer");
  }
}

bool parse_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ConfigError(key + ": expected true/false, got '" + s + "'");
}

std::vector<double> parse_double_list(const std::string& key, const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    // trim
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ConfigError(key + ": empty element in list");
    out.push_back(parse_double(key, item.substr(b, e - b + 1)));
  }
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string ConfigError::join(const std::vector<std::string>& v) {
  std::string out = "invalid configuration:";
  for (const auto& m : v) out += "\n  - " + m;
  return out;
}

double CndParams::rho_per_um3() const { return rho * kUmolPerLiterToPerUm3; }

double CndParams::reception_gain() const {
  return eps_bind / eps_release * Vr * rho_per_um3();
}

QDist QDist::parse(const std::string& text) {
  QDist q;
  std::stringstream ss(text);
  std::string kind, a, b;
  std::getline(ss, kind, ':');
  if (kind == "point") {
    if (!std::getline(ss, a, ':') || ss.rdbuf()->in_avail() > 0)
      throw ConfigError("relay.q_dist: expected point:<value>, got '" + text + "'");
    q.kind = Kind::point;
    q.mean = parse_double("relay.q_dist", a);
    q.stddev = 0.0;
  } else if (kind == "truncnormal") {
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || ss.rdbuf()->in_avail() > 0)
      throw ConfigError("relay.q_dist: expected truncnormal:<mean>:<std>, got '" + text + "'");
    q.kind = Kind::truncnormal;
    q.mean = parse_double("relay.q_dist", a);
    q.stddev = parse_double("relay.q_dist", b);
  } else {
    throw ConfigError("relay.q_dist: unknown distribution '" + kind + "'");
  }
  return q;
}

std::string QDist::to_string() const {
  if (kind == Kind::point) return "point:" + fmt(mean);
  return "truncnormal:" + fmt(mean) + ":" + fmt(stddev);
}

void set_config_field(SystemConfig& c, const std::string& key, const std::string& v) {
  if (key == "tx.Qtx") c.tx.Qtx = parse_double(key, v);
  else if (key == "tx.T") c.tx.T = parse_double(key, v);
  else if (key == "tx.nbits") c.tx.nbits = static_cast<int>(parse_int(key, v));
  else if (key == "diffusion.D") c.diffusion.D = parse_double(key, v);
  else if (key == "diffusion.sigma1") c.diffusion.sigma1 = parse_double(key, v);
  else if (key == "diffusion.isi_memory") c.diffusion.isi_memory = static_cast<int>(parse_int(key, v));
  else if (key == "cnd.M") c.cnd.M = static_cast<int>(parse_int(key, v));
  else if (key == "cnd.r") {
    if (v.rfind("linspace:", 0) == 0) {
      auto rest = v.substr(9);
      auto colon = rest.find(':');
      if (colon == std::string::npos)
        throw ConfigError("cnd.r: expected linspace:<lo>:<hi>, got '" + v + "'");
      double lo = parse_double(key, rest.substr(0, colon));
      double hi = parse_double(key, rest.substr(colon + 1));
      if (!(lo > 0) || hi < lo)
        throw ConfigError("cnd.r: linspace needs 0 < lo <= hi");
      c.cnd.r_rule = v;
      c.cnd.r.clear();
    } else {
      c.cnd.r = parse_double_list(key, v);
      c.cnd.r_rule.clear();
    }
  }
  else if (key == "cnd.eps_bind") c.cnd.eps_bind = parse_double(key, v);
  else if (key == "cnd.eps_release") c.cnd.eps_release = parse_double(key, v);
  else if (key == "cnd.rho") c.cnd.rho = parse_double(key, v);
  else if (key == "cnd.Vr") c.cnd.Vr = parse_double(key, v);
  else if (key == "cnd.mu") c.cnd.mu = parse_double(key, v);
  else if (key == "cnd.a") c.cnd.a = parse_double(key, v);
  else if (key == "cnd.b") c.cnd.b = parse_double(key, v);
  else if (key == "cnd.rectify") c.cnd.rectify = parse_bool(key, v);
  else if (key == "neuron.V0") c.neuron.V0 = parse_double(key, v);
  else if (key == "neuron.theta1") c.neuron.theta1 = parse_double(key, v);
  else if (key == "neuron.tau_abs") c.neuron.tau_abs = parse_double(key, v);
  else if (key == "neuron.tau_m") c.neuron.tau_m = parse_double(key, v);
  else if (key == "neuron.Rm") c.neuron.Rm = parse_double(key, v);
  else if (key == "neuron.hh.Cm") c.neuron.hh.Cm = parse_double(key, v);
  else if (key == "neuron.hh.gNa") c.neuron.hh.gNa = parse_double(key, v);
  else if (key == "neuron.hh.gK") c.neuron.hh.gK = parse_double(key, v);
  else if (key == "neuron.hh.gL") c.neuron.hh.gL = parse_double(key, v);
  else if (key == "neuron.hh.ENa") c.neuron.hh.ENa = parse_double(key, v);
  else if (key == "neuron.hh.EK") c.neuron.hh.EK = parse_double(key, v);
  else if (key == "neuron.hh.EL") c.neuron.hh.EL = parse_double(key, v);
  else if (key == "neuron.backend") {
    if (v == "SRM") c.neuron.backend = NeuronBackend::SRM;
    else if (v == "HH") c.neuron.backend = NeuronBackend::HH;
    else throw ConfigError("neuron.backend: expected SRM or HH, got '" + v + "'");
  }
  else if (key == "relay.N") c.relay.N = static_cast<int>(parse_int(key, v));
  else if (key == "relay.p") c.relay.p = parse_double(key, v);
  else if (key == "relay.q_dist") { c.relay.q_dist = QDist::parse(v); c.q_dist_explicit = true; }
  else if (key == "relay.hp") c.relay.hp = parse_double(key, v);
  else if (key == "relay.tp") c.relay.tp = parse_double(key, v);
  else if (key == "relay.sigma2") c.relay.sigma2 = parse_double(key, v);
  else if (key == "relay.gain") c.relay.gain = parse_double(key, v);
  else if (key == "rx.theta2") c.rx.theta2 = parse_double(key, v);
  else if (key == "rx.mode") {
    if (v == "correlation") c.rx.mode = RxMode::correlation;
    else if (v == "spike_count") c.rx.mode = RxMode::spike_count;
    else throw ConfigError("rx.mode: expected correlation or spike_count, got '" + v + "'");
  }
  else if (key == "sim.dt_fast") c.sim.dt_fast = parse_double(key, v);
  else if (key == "sim.dt_slow") c.sim.dt_slow = parse_double(key, v);
  else if (key == "sim.seed") c.sim.seed = parse_u64(key, v);
  else throw ConfigError("unknown key '" + key + "'");
}

double get_numeric_field(const SystemConfig& c, const std::string& key) {
  if (key == "tx.Qtx") return c.tx.Qtx;
  if (key == "tx.T") return c.tx.T;
  if (key == "tx.nbits") return c.tx.nbits;
  if (key == "diffusion.D") return c.diffusion.D;
  if (key == "diffusion.sigma1") return c.diffusion.sigma1;
  if (key == "diffusion.isi_memory") return c.diffusion.isi_memory;
  if (key == "cnd.M") return c.cnd.M;
  if (key == "cnd.eps_bind") return c.cnd.eps_bind;
  if (key == "cnd.eps_release") return c.cnd.eps_release;
  if (key == "cnd.rho") return c.cnd.rho;
  if (key == "cnd.Vr") return c.cnd.Vr;
  if (key == "cnd.mu") return c.cnd.mu;
  if (key == "cnd.a") return c.cnd.a;
  if (key == "cnd.b") return c.cnd.b;
  if (key == "neuron.V0") return c.neuron.V0;
  if (key == "neuron.theta1") return c.neuron.theta1;
  if (key == "neuron.tau_abs") return c.neuron.tau_abs;
  if (key == "neuron.tau_m") return c.neuron.tau_m;
  if (key == "neuron.Rm") return c.neuron.Rm;
  if (key == "relay.N") return c.relay.N;
  if (key == "relay.p") return c.relay.p;
  if (key == "relay.hp") return c.relay.hp;
  if (key == "relay.tp") return c.relay.tp;
  if (key == "relay.sigma2") return c.relay.sigma2;
  if (key == "relay.gain") return c.relay.gain;
  if (key == "rx.theta2") return c.rx.theta2;
  if (key == "sim.dt_fast") return c.sim.dt_fast;
  if (key == "sim.dt_slow") return c.sim.dt_slow;
  throw ConfigError("'" + key + "' is not a sweepable numeric field");
}

SystemConfig parse_config(const std::string& text) {
  SystemConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  std::vector<std::string> problems;
  while (std::getline(ss, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      problems.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      set_config_field(cfg, key, value);
    } catch (const ConfigError& e) {
      for (const auto& m : e.violations()) problems.push_back("line " + std::to_string(lineno) + ": " + m);
    }
  }
  if (!problems.empty()) throw ConfigError(problems);
  return cfg;
}

SystemConfig validate_config(SystemConfig cfg) {
  std::vector<std::string> bad;
  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) bad.push_back(msg);
  };

  require(cfg.tx.Qtx > 0, "tx.Qtx must be > 0");
  require(cfg.tx.T > 0, "tx.T must be > 0");
  require(cfg.tx.nbits >= 1, "tx.nbits must be >= 1");
  require(cfg.diffusion.D > 0, "diffusion.D must be > 0");
  require(cfg.diffusion.sigma1 >= 0, "diffusion.sigma1 must be >= 0");
  require(cfg.diffusion.isi_memory >= 0, "diffusion.isi_memory must be >= 0");
  require(cfg.cnd.M >= 1, "cnd.M must be >= 1");
  if (!cfg.cnd.r_rule.empty() && cfg.cnd.M >= 1) {
    auto rest = cfg.cnd.r_rule.substr(9);
    auto colon = rest.find(':');
    double lo = std::stod(rest.substr(0, colon));
    double hi = std::stod(rest.substr(colon + 1));
    cfg.cnd.r.resize(static_cast<std::size_t>(cfg.cnd.M));
    for (int k = 0; k < cfg.cnd.M; ++k)
      cfg.cnd.r[static_cast<std::size_t>(k)] =
          cfg.cnd.M == 1 ? lo : lo + (hi - lo) * k / (cfg.cnd.M - 1);
  }
  require(cfg.cnd.M == static_cast<int>(cfg.cnd.r.size()),
          "cnd.M (" + std::to_string(cfg.cnd.M) + ") must equal length of cnd.r (" +
              std::to_string(cfg.cnd.r.size()) + ")");
  for (double r : cfg.cnd.r) {
    if (!(r > 0)) {
      bad.push_back("cnd.r entries must be > 0");
      break;
    }
  }
  require(cfg.cnd.eps_bind > 0, "cnd.eps_bind must be > 0");
  require(cfg.cnd.eps_release > 0,
          "cnd.eps_release must be > 0 (it divides the Eq. 4 reception gain)");
  require(cfg.cnd.rho > 0, "cnd.rho must be > 0");
  require(cfg.cnd.Vr > 0, "cnd.Vr must be > 0");
  require(cfg.cnd.mu > 0, "cnd.mu must be > 0");
  require(cfg.cnd.a > 0, "cnd.a must be > 0");
  require(cfg.neuron.theta1 > cfg.neuron.V0, "neuron.theta1 must be > neuron.V0");
  require(cfg.neuron.tau_abs > 0, "neuron.tau_abs must be > 0");
  require(cfg.neuron.tau_m > 0, "neuron.tau_m must be > 0");
  require(cfg.neuron.Rm > 0, "neuron.Rm must be > 0");
  require(cfg.neuron.hh.Cm > 0, "neuron.hh.Cm must be > 0");
  require(cfg.neuron.hh.gNa > 0 && cfg.neuron.hh.gK > 0 && cfg.neuron.hh.gL > 0,
          "neuron.hh conductances must be > 0");
  require(cfg.relay.N >= 0, "relay.N must be >= 0");
  require(cfg.relay.p >= 0 && cfg.relay.p <= 1, "relay.p must be in [0, 1]");
  require(cfg.relay.hp > 0, "relay.hp must be > 0");
  require(cfg.relay.tp > 0, "relay.tp must be > 0");
  require(cfg.relay.sigma2 >= 0, "relay.sigma2 must be >= 0");
  require(cfg.relay.gain > 0, "relay.gain must be > 0");
  require(cfg.rx.theta2 >= 0, "rx.theta2 must be >= 0");
  require(cfg.sim.dt_fast > 0, "sim.dt_fast must be > 0");
  require(cfg.sim.dt_slow > 0, "sim.dt_slow must be > 0");
  if (cfg.neuron.backend == NeuronBackend::HH)
    require(cfg.sim.dt_fast <= 0.025, "sim.dt_fast must be <= 0.025 ms for the HH backend");

  // slot boundaries must land on slow-grid samples for the Eq. 4 integral
  if (cfg.tx.T > 0 && cfg.sim.dt_slow > 0) {
    double ratio = cfg.tx.T / cfg.sim.dt_slow;
    require(std::abs(ratio - std::round(ratio)) < 1e-9 && ratio >= 2,
            "tx.T must be an integer multiple (>= 2) of sim.dt_slow");
  }

  if (!bad.empty()) throw ConfigError(bad);

  // derived default: q amplitudes track hp unless given explicitly
  if (!cfg.q_dist_explicit) {
    cfg.relay.q_dist = QDist{QDist::Kind::truncnormal, cfg.relay.hp, 0.2 * cfg.relay.hp};
  }
  if (cfg.relay.q_dist.kind == QDist::Kind::truncnormal && cfg.relay.q_dist.stddev < 0)
    throw ConfigError("relay.q_dist: std must be >= 0");
  return cfg;
}

std::string serialize_config(const SystemConfig& c) {
  std::ostringstream o;
  o << "tx.Qtx = " << fmt(c.tx.Qtx) << "\n";
  o << "tx.T = " << fmt(c.tx.T) << "\n";
  o << "tx.nbits = " << c.tx.nbits << "\n";
  o << "diffusion.D = " << fmt(c.diffusion.D) << "\n";
  o << "diffusion.sigma1 = " << fmt(c.diffusion.sigma1) << "\n";
  o << "diffusion.isi_memory = " << c.diffusion.isi_memory << "\n";
  o << "cnd.M = " << c.cnd.M << "\n";
  if (!c.cnd.r_rule.empty()) {
    o << "cnd.r = " << c.cnd.r_rule << "\n";
  } else {
    o << "cnd.r = ";
    for (std::size_t i = 0; i < c.cnd.r.size(); ++i) o << (i ? "," : "") << fmt(c.cnd.r[i]);
    o << "\n";
  }
  o << "cnd.eps_bind = " << fmt(c.cnd.eps_bind) << "\n";
  o << "cnd.eps_release = " << fmt(c.cnd.eps_release) << "\n";
  o << "cnd.rho = " << fmt(c.cnd.rho) << "\n";
  o << "cnd.Vr = " << fmt(c.cnd.Vr) << "\n";
  o << "cnd.mu = " << fmt(c.cnd.mu) << "\n";
  o << "cnd.a = " << fmt(c.cnd.a) << "\n";
  o << "cnd.b = " << fmt(c.cnd.b) << "\n";
  o << "cnd.rectify = " << (c.cnd.rectify ? "true" : "false") << "\n";
  o << "neuron.V0 = " << fmt(c.neuron.V0) << "\n";
  o << "neuron.theta1 = " << fmt(c.neuron.theta1) << "\n";
  o << "neuron.tau_abs = " << fmt(c.neuron.tau_abs) << "\n";
  o << "neuron.tau_m = " << fmt(c.neuron.tau_m) << "\n";
  o << "neuron.Rm = " << fmt(c.neuron.Rm) << "\n";
  o << "neuron.hh.Cm = " << fmt(c.neuron.hh.Cm) << "\n";
  o << "neuron.hh.gNa = " << fmt(c.neuron.hh.gNa) << "\n";
  o << "neuron.hh.gK = " << fmt(c.neuron.hh.gK) << "\n";
  o << "neuron.hh.gL = " << fmt(c.neuron.hh.gL) << "\n";
  o << "neuron.hh.ENa = " << fmt(c.neuron.hh.ENa) << "\n";
  o << "neuron.hh.EK = " << fmt(c.neuron.hh.EK) << "\n";
  o << "neuron.hh.EL = " << fmt(c.neuron.hh.EL) << "\n";
  o << "neuron.backend = " << (c.neuron.backend == NeuronBackend::HH ? "HH" : "SRM") << "\n";
  o << "relay.N = " << c.relay.N << "\n";
  o << "relay.p = " << fmt(c.relay.p) << "\n";
  o << "relay.q_dist = " << c.relay.q_dist.to_string() << "\n";
  o << "relay.hp = " << fmt(c.relay.hp) << "\n";
  o << "relay.tp = " << fmt(c.relay.tp) << "\n";
  o << "relay.sigma2 = " << fmt(c.relay.sigma2) << "\n";
  o << "relay.gain = " << fmt(c.relay.gain) << "\n";
  o << "rx.theta2 = " << fmt(c.rx.theta2) << "\n";
  o << "rx.mode = " << (c.rx.mode == RxMode::correlation ? "correlation" : "spike_count") << "\n";
  o << "sim.dt_fast = " << fmt(c.sim.dt_fast) << "\n";
  o << "sim.dt_slow = " << fmt(c.sim.dt_slow) << "\n";
  o << "sim.seed = " << c.sim.seed << "\n";
  return o.str();
}

SystemConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  SystemConfig cfg = parse_config(buf.str());
  for (const auto& ov : overrides) {
    auto eq = ov.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--set expects key=value, got '" + ov + "'");
    set_config_field(cfg, trim(ov.substr(0, eq)), trim(ov.substr(eq + 1)));
  }
  return validate_config(cfg);
}

}  // namespace hybridmc
