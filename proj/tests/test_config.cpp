#include <doctest.h>

#include <string>

#include "hybridmc/config.hpp"

using namespace hybridmc;

TEST_CASE("shipped defaults are the published parameter set and validate") {
  SystemConfig cfg;  // defaults: D=0.1, Qtx=1e5, T=100, M=6, mu=20, a=40, b=0,
                     // V0=-70, theta1=-55, theta2=1, hp=1, tp=0.5, s1=s2=0.1
  CHECK_NOTHROW(cfg = validate_config(cfg));
  CHECK(cfg.tx.Qtx == 1e5);
  CHECK(cfg.diffusion.D == 0.1);
  CHECK(cfg.neuron.V0 == -70.0);
  CHECK(cfg.neuron.theta1 == -55.0);
  CHECK(cfg.rx.theta2 == 1.0);
}

TEST_CASE("M / r length mismatch is rejected") {
  SystemConfig cfg;
  cfg.cnd.M = 3;
  cfg.cnd.r = {1, 2, 3, 4, 5};
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  try {
    validate_config(cfg);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("cnd.M") != std::string::npos);
  }
}

TEST_CASE("zero release rate is rejected (Eq. 4 denominator)") {
  SystemConfig cfg;
  cfg.cnd.eps_release = 0.0;
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
}

TEST_CASE("every violation is listed, not just the first") {
  SystemConfig cfg;
  cfg.diffusion.D = -1.0;
  cfg.relay.p = 1.5;
  cfg.neuron.theta1 = -80.0;  // below V0
  try {
    validate_config(cfg);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.violations().size() >= 3);
  }
}

TEST_CASE("unit normalization happens once, via accessors") {
  SystemConfig cfg = validate_config(SystemConfig{});
  // 0.5 umol/L -> ~3.01e2 receptors per um^3
  CHECK(cfg.cnd.rho_per_um3() == doctest::Approx(301.107038).epsilon(1e-12));
  // 20 nA/cm^2 per molecule -> 0.02 uA/cm^2
  CHECK(cfg.cnd.mu_uA_per_cm2() == doctest::Approx(0.02).epsilon(1e-15));
  CHECK(cfg.cnd.reception_gain() == doctest::Approx(376.3837975).epsilon(1e-12));
}

TEST_CASE("config round-trips through serialize/parse/validate") {
  SystemConfig cfg;
  cfg.tx.Qtx = 1234.5;
  cfg.cnd.M = 2;
  cfg.cnd.r = {6.125, 7.0};
  cfg.relay.q_dist = QDist::parse("point:1.2");
  cfg.q_dist_explicit = true;
  cfg.neuron.backend = NeuronBackend::SRM;
  cfg.rx.mode = RxMode::spike_count;
  cfg.sim.seed = 987654321;
  cfg = validate_config(cfg);
  SystemConfig back = validate_config(parse_config(serialize_config(cfg)));
  CHECK(serialize_config(back) == serialize_config(cfg));
}

TEST_CASE("unknown keys are an error") {
  CHECK_THROWS_AS(parse_config("tx.Qtxx = 5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("bogus = 1\n"), ConfigError);
}

TEST_CASE("parser accepts comments, blank lines and reports line numbers") {
  auto cfg = parse_config("# comment\n\ntx.Qtx = 500 # inline\n");
  CHECK(cfg.tx.Qtx == 500.0);
  try {
    parse_config("tx.T = abc\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
}

TEST_CASE("q_dist defaults track hp unless given explicitly") {
  SystemConfig cfg;
  cfg.relay.hp = 2.0;
  cfg = validate_config(cfg);
  CHECK(cfg.relay.q_dist.kind == QDist::Kind::truncnormal);
  CHECK(cfg.relay.q_dist.mean == 2.0);
  CHECK(cfg.relay.q_dist.stddev == doctest::Approx(0.4));

  SystemConfig cfg2;
  set_config_field(cfg2, "relay.q_dist", "point:0.75");
  cfg2 = validate_config(cfg2);
  CHECK(cfg2.relay.q_dist.kind == QDist::Kind::point);
  CHECK(cfg2.relay.q_dist.mean == 0.75);
}

TEST_CASE("q_dist descriptor parsing") {
  auto q = QDist::parse("truncnormal:1.5:0.3");
  CHECK(q.kind == QDist::Kind::truncnormal);
  CHECK(q.mean == 1.5);
  CHECK(q.stddev == 0.3);
  CHECK_THROWS_AS(QDist::parse("gamma:1:2"), ConfigError);
  CHECK_THROWS_AS(QDist::parse("point"), ConfigError);
}

TEST_CASE("HH backend restricts dt_fast") {
  SystemConfig cfg;
  cfg.sim.dt_fast = 0.05;
  cfg.neuron.backend = NeuronBackend::HH;
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg.neuron.backend = NeuronBackend::SRM;
  CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("slot length must align with the slow grid") {
  SystemConfig cfg;
  cfg.tx.T = 100.5;
  cfg.sim.dt_slow = 1.0;
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
}

TEST_CASE("linspace distance rule materializes to M devices") {
  SystemConfig cfg;
  set_config_field(cfg, "cnd.r", "linspace:6.0:7.4");
  cfg.cnd.M = 8;
  cfg = validate_config(cfg);
  REQUIRE(cfg.cnd.r.size() == 8);
  CHECK(cfg.cnd.r.front() == 6.0);
  CHECK(cfg.cnd.r.back() == 7.4);
  CHECK(cfg.cnd.r[1] == doctest::Approx(6.2));

  // resizing M under the rule revalidates cleanly (M-sweeps rely on this)
  set_config_field(cfg, "cnd.M", "5");
  cfg = validate_config(cfg);
  REQUIRE(cfg.cnd.r.size() == 5);
  CHECK(cfg.cnd.r.front() == 6.0);
  CHECK(cfg.cnd.r.back() == 7.4);

  // round-trip keeps the rule, not the materialized list
  auto text = serialize_config(cfg);
  CHECK(text.find("linspace:6.0:7.4") != std::string::npos);

  CHECK_THROWS_AS(QDist::parse("x"), ConfigError);
  SystemConfig bad;
  CHECK_THROWS_AS(set_config_field(bad, "cnd.r", "linspace:5"), ConfigError);
}

TEST_CASE("numeric field lookup for sweeps") {
  SystemConfig cfg;
  cfg.cnd.mu = 33.0;
  CHECK(get_numeric_field(cfg, "cnd.mu") == 33.0);
  CHECK_THROWS_AS(get_numeric_field(cfg, "rx.mode"), ConfigError);
  CHECK_THROWS_AS(get_numeric_field(cfg, "cnd.r"), ConfigError);
}
