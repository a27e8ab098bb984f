// Command-line front end for the diffusion-neuron link simulator.
//
//   hybridmc trace --config cfg --bits 1011 --out dir
//   hybridmc ber   --config cfg --trials 500
//   hybridmc sweep --config cfg --param cnd.M --values 5,6,7 --trials 500 --out dir
//
// Every command is a pure function of (config, flag overrides, seed); all
// numeric output is printed at full precision so reruns are byte-identical.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hybridmc/config.hpp"
#include "hybridmc/diffusion.hpp"
#include "hybridmc/link.hpp"

namespace fs = std::filesystem;
using namespace hybridmc;

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw IoError("cannot open '" + p.string() + "' for writing");
  return f;
}

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw ConfigError("--values: empty element");
    std::size_t pos = 0;
    double v = std::stod(item, &pos);
    if (pos != item.size() || !std::isfinite(v))
      throw ConfigError("--values: cannot parse '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("--values: empty list");
  return out;
}

void write_multi_csv(const fs::path& p, const std::string& header,
                     const std::vector<SampledSignal>& signals) {
  auto f = open_out(p);
  f << header << "\n";
  if (signals.empty()) return;
  const TimeGrid& g = signals.front().grid;
  for (std::size_t i = 0; i < g.n; ++i) {
    f << fmt(g.time_at(i));
    for (const auto& s : signals) f << "," << fmt(s.values[i]);
    f << "\n";
  }
}

int cmd_trace(const SystemConfig& cfg_in, const std::string& bits_str, const fs::path& outdir) {
  Bits bits = Bits::from_string(bits_str);
  SystemConfig cfg = cfg_in;
  cfg.tx.nbits = static_cast<int>(bits.size());
  cfg = validate_config(cfg);

  fs::create_directories(outdir);
  RandomStream trial =
      RandomStream(cfg.sim.seed).child("pt", 0).child("pt2", 0).child("trial", 0);
  LinkTrialResult r = run_link_trial(cfg, bits, trial);

  std::string cols;
  for (int k = 0; k < cfg.cnd.M; ++k) cols += ",cnd_" + std::to_string(k);

  write_multi_csv(outdir / "concentration.csv",
                  "# hybridmc trace v1; units molecules_per_um3\nt_ms" + cols, r.concentration);

  std::vector<SampledSignal> currents;
  currents.reserve(r.cnd.currents.size());
  TimeGrid slow = r.concentration.front().grid;
  for (const auto& w : r.cnd.currents) currents.push_back(w.sample(slow));
  write_multi_csv(outdir / "current.csv", "# hybridmc trace v1; units uA_per_cm2\nt_ms" + cols,
                  currents);

  {
    auto f = open_out(outdir / "membrane.csv");
    f << "# hybridmc trace v1; units mV\nt_ms,V_mV\n";
    const auto& g = r.cnd.membrane.signal.grid;
    for (std::size_t i = 0; i < g.n; ++i)
      f << fmt(g.time_at(i)) << "," << fmt(r.cnd.membrane.signal.values[i]) << "\n";
  }
  {
    auto f = open_out(outdir / "spikes.txt");
    for (double t : r.cnd.spikes.times) f << fmt(t) << "\n";
  }
  {
    auto f = open_out(outdir / "decoded.txt");
    f << r.z.to_string() << "\n";
  }
  std::cout << "decoded " << r.z.to_string() << ", " << r.cnd.spikes.size()
            << " spikes, outputs in " << outdir.string() << "\n";
  return 0;
}

int cmd_ber(const SystemConfig& cfg, int trials) {
  BerEstimate est = monte_carlo_ber(cfg, trials);
  std::cout << est.to_json() << "\n";
  return 0;
}

int cmd_sweep(const SystemConfig& cfg, const std::string& param, const std::vector<double>& values,
              const std::string& param2, const std::vector<double>& values2, int trials,
              const fs::path& outdir) {
  get_numeric_field(cfg, param);  // reject non-numeric paths up front
  if (!param2.empty()) get_numeric_field(cfg, param2);

  fs::create_directories(outdir);
  auto f = open_out(outdir / "sweep.csv");
  f << "# hybridmc sweep v1\nparam1,param2,pe,ci_lo,ci_hi,trials\n";
  f.flush();

  std::size_t n2 = param2.empty() ? 1 : values2.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      SystemConfig point_cfg = cfg;
      set_config_field(point_cfg, param, fmt(values[i]));
      if (!param2.empty()) set_config_field(point_cfg, param2, fmt(values2[j]));
      point_cfg = validate_config(point_cfg);
      BerEstimate est = monte_carlo_ber(point_cfg, trials, static_cast<std::int64_t>(i),
                                        static_cast<std::int64_t>(j));
      f << fmt(values[i]) << "," << (param2.empty() ? "" : fmt(values2[j])) << ","
        << fmt(est.pe) << "," << fmt(est.ci95_lo) << "," << fmt(est.ci95_hi) << "," << trials
        << "\n";
      f.flush();  // completed points survive a crash
      std::cerr << param << "=" << fmt(values[i])
                << (param2.empty() ? "" : " " + param2 + "=" + fmt(values2[j]))
                << " pe=" << fmt(est.pe) << "\n";
    }
  }
  std::cout << "sweep written to " << (outdir / "sweep.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diffusion-neuron hybrid molecular link simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;

  app.add_option("--config", config_path, "configuration file")->required();
  app.add_option("--set", overrides, "key=value override, repeatable");
  app.add_option("--seed", seed, "override sim.seed");

  auto* trace = app.add_subcommand("trace", "export one end-to-end run");
  std::string bits = "1011";
  std::string outdir = "out";
  trace->add_option("--bits", bits, "payload bit string")->required();
  trace->add_option("--out", outdir, "output directory")->required();

  auto* ber = app.add_subcommand("ber", "Monte-Carlo BER estimate");
  int trials = 100;
  ber->add_option("--trials", trials, "Monte-Carlo trials");

  auto* sweep = app.add_subcommand("sweep", "BER over a parameter grid");
  std::string param, param2, values_csv, values2_csv;
  sweep->add_option("--param", param, "dotted config key")->required();
  sweep->add_option("--values", values_csv, "comma-separated values")->required();
  sweep->add_option("--param2", param2, "second key for 2-D sweeps");
  sweep->add_option("--values2", values2_csv, "values for --param2");
  sweep->add_option("--trials", trials, "Monte-Carlo trials per grid point");
  sweep->add_option("--out", outdir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (seed) overrides.push_back("sim.seed=" + std::to_string(*seed));
    SystemConfig cfg = load_config(config_path, overrides);

    if (trace->parsed()) return cmd_trace(cfg, bits, outdir);
    if (ber->parsed() || sweep->parsed()) {
      if (trials < 1) throw ConfigError("--trials must be >= 1");
      if (ber->parsed()) return cmd_ber(cfg, trials);
      if (!param2.empty() && values2_csv.empty())
        throw ConfigError("--param2 requires --values2");
      return cmd_sweep(cfg, param, parse_values(values_csv), param2,
                       values2_csv.empty() ? std::vector<double>{} : parse_values(values2_csv),
                       trials, outdir);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalInstability& e) {
    std::cerr << "error: numerical instability: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
