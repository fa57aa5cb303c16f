#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "rcamon/dgp.hpp"
#include "rcamon/errors.hpp"
#include "rcamon/monitor.hpp"

using namespace rcamon;

namespace {

LabeledConfig fixed_cusum(double psi, double critval) {
  MonitorConfig cfg;
  cfg.detector_kind = DetectorKind::Cusum;
  cfg.scheme = MonitorScheme::ClosedLong;
  cfg.psi = psi;
  cfg.fixed_critval = critval;
  return LabeledConfig{config_label(cfg), cfg};
}

}  // namespace

TEST_CASE("noiseless recursion is exact") {
  DgpSpec spec;
  spec.beta0 = 0.5;
  spec.sigma1 = 0.0;
  spec.sigma2 = 0.0;
  spec.n = 8;
  spec.burn_in = 0;
  spec.y0 = 1.0;
  const Series s = generate_rca(spec);
  REQUIRE(s.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(s.values[i] == std::pow(0.5, static_cast<double>(i + 1)));
  }
  CHECK(!s.has_covariates());
}

TEST_CASE("noiseless change flips the level at k_star") {
  DgpSpec spec;
  spec.beta0 = 1.0;
  spec.sigma1 = 0.0;
  spec.sigma2 = 0.0;
  spec.n = 6;
  spec.burn_in = 0;
  spec.y0 = 1.0;
  ChangeSpec change;
  change.k_star = 3;
  change.beta_a = 2.0;
  spec.change = change;
  const Series s = generate_rca(spec);
  const std::vector<double> expect{1.0, 1.0, 1.0, 2.0, 4.0, 8.0};
  CHECK(s.values == expect);
}

TEST_CASE("burn-in shifts the change index past the training window") {
  DgpSpec spec;
  spec.beta0 = 1.0;
  spec.sigma1 = 0.0;
  spec.sigma2 = 0.0;
  spec.n = 5;
  spec.burn_in = 10;
  spec.y0 = 1.0;
  ChangeSpec change;
  change.k_star = 2;
  change.beta_a = 3.0;
  spec.change = change;
  const Series s = generate_rca(spec);
  const std::vector<double> expect{1.0, 1.0, 3.0, 9.0, 27.0};
  CHECK(s.values == expect);
}

TEST_CASE("same seed, same series; covariates attach iff lambda0 != 0") {
  DgpSpec spec;
  spec.beta0 = 0.5;
  spec.sigma1 = 0.1;
  spec.sigma2 = 0.5;
  spec.n = 64;
  spec.burn_in = 100;
  spec.seed = 77;
  const Series a = generate_rca(spec);
  const Series b = generate_rca(spec);
  CHECK(a.values == b.values);
  CHECK(!a.has_covariates());

  spec.lambda0 = 0.7;
  const Series c = generate_rca(spec);
  const Series d = generate_rca(spec);
  REQUIRE(c.has_covariates());
  CHECK(c.covariate_dim() == 1);
  CHECK(c.covariates.size() == 64);
  CHECK(c.values == d.values);
  CHECK(c.covariates == d.covariates);
  CHECK(c.values != a.values);  // the extra draws shift the stream

  spec.seed = 78;
  const Series e = generate_rca(spec);
  CHECK(e.values != c.values);
}

TEST_CASE("regime indicator reproduces the known log-moments") {
  const std::size_t reps = 1000000;
  CHECK(std::abs(elog_check(0.5, 0.1, reps, 1) - (-0.717)) < 0.01);
  CHECK(std::abs(elog_check(1.05, 0.1, reps, 2) - 0.044) < 0.005);
  CHECK(std::abs(elog_check(1.0, 0.1, reps, 3) - (-0.007)) < 0.005);
  CHECK(elog_check(0.9, 0.0, 10000, 4) == doctest::Approx(std::log(0.9)).epsilon(1e-12));
  CHECK_THROWS_AS((void)elog_check(0.5, 0.1, 9999, 1), ConfigError);
}

TEST_CASE("case presets carry the paper's innovation variances") {
  CHECK(case_i().beta0 == 0.5);
  CHECK(case_i().sigma1 * case_i().sigma1 == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(case_i().sigma2 * case_i().sigma2 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(case_ii().beta0 == 1.05);
  CHECK(case_ii().sigma2 * case_ii().sigma2 == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(case_iii().beta0 == 1.0);
  CHECK(case_iii().sigma2 * case_iii().sigma2 == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("config labels name detector, weight and critical-value source") {
  MonitorConfig cfg;
  cfg.detector_kind = DetectorKind::Cusum;
  cfg.psi = 0.45;
  CHECK(config_label(cfg) == "cusum_psi0.45_sim");
  cfg.detector_kind = DetectorKind::Page;
  cfg.psi = 0.0;
  CHECK(config_label(cfg) == "page_psi0_sim");
  cfg.detector_kind = DetectorKind::Cusum;
  cfg.psi = 0.5;
  cfg.critval_source = CritvalSource::DarlingErdos;
  CHECK(config_label(cfg) == "cusum_psi0.5_de");
  cfg.critval_source = CritvalSource::Vostrikova;
  CHECK(config_label(cfg) == "cusum_psi0.5_vostr");
  cfg.critval_source = CritvalSource::Simulated;
  cfg.psi = 0.25;
  cfg.use_covariates = true;
  CHECK(config_label(cfg) == "cusum_psi0.25_sim_x");
}

TEST_CASE("experiment tables are bit-identical across worker counts") {
  const std::vector<LabeledConfig> configs{fixed_cusum(0.0, 2.0), fixed_cusum(0.45, 1.5)};
  const ExperimentTable t1 = size_experiment(case_i(), 50, 50, configs, 60, 123, 1);
  const ExperimentTable t3 = size_experiment(case_i(), 50, 50, configs, 60, 123, 3);
  const ExperimentTable t8 = size_experiment(case_i(), 50, 50, configs, 60, 123, 8);
  CHECK(t1.rejection == t3.rejection);
  CHECK(t3.rejection == t8.rejection);
  CHECK(t1.labels == t3.labels);

  ChangeParams change;
  change.beta_a = 0.9;
  const ExperimentTable p1 = power_experiment(case_i(), change, 50, 50, configs, 60, 123, 1);
  const ExperimentTable p4 = power_experiment(case_i(), change, 50, 50, configs, 60, 123, 4);
  CHECK(p1.rejection == p4.rejection);
  CHECK(p1.median_delay == p4.median_delay);
}

TEST_CASE("inflating the critical value cannot raise the rejection rate") {
  const std::vector<LabeledConfig> tight{fixed_cusum(0.25, 1.2)};
  const std::vector<LabeledConfig> loose{fixed_cusum(0.25, 2.4)};
  const ExperimentTable rt = size_experiment(case_i(), 60, 60, tight, 200, 5, 0);
  const ExperimentTable rl = size_experiment(case_i(), 60, 60, loose, 200, 5, 0);
  CHECK(rl.rejection[0] <= rt.rejection[0]);
  CHECK(rt.rejection[0] > 0.0);  // the tight boundary must actually trip
}

TEST_CASE("a larger break is easier to detect") {
  const std::vector<LabeledConfig> configs{fixed_cusum(0.0, 2.0)};
  ChangeParams small_break;
  small_break.beta_a = 0.6;
  ChangeParams big_break;
  big_break.beta_a = 1.0;
  const ExperimentTable ps =
      power_experiment(case_i(), small_break, 100, 100, configs, 200, 9, 0);
  const ExperimentTable pb =
      power_experiment(case_i(), big_break, 100, 100, configs, 200, 9, 0);
  CHECK(pb.rejection[0] >= ps.rejection[0]);
  REQUIRE(pb.median_delay.size() == 1);
  CHECK(pb.median_delay[0] > 0.0);
  CHECK(pb.median_delay[0] <= 100.0);
}

TEST_CASE("a zero-size change reproduces the size experiment") {
  const std::vector<LabeledConfig> configs{fixed_cusum(0.25, 1.8)};
  ChangeParams null_change;
  null_change.beta_a = case_i().beta0;
  const ExperimentTable null_table = size_experiment(case_i(), 60, 60, configs, 150, 42, 0);
  const ExperimentTable change_table =
      power_experiment(case_i(), null_change, 60, 60, configs, 150, 42, 0);
  CHECK(null_table.rejection == change_table.rejection);
}

TEST_CASE("experiment validation") {
  const std::vector<LabeledConfig> configs{fixed_cusum(0.0, 2.0)};
  CHECK_THROWS_AS((void)size_experiment(case_i(), 50, 50, configs, 0, 1, 0), ConfigError);
  CHECK_THROWS_AS((void)size_experiment(case_i(), 50, 50, {}, 100, 1, 0), ConfigError);

  // A config whose scheme needs m_star gets it pinned from the experiment
  // geometry rather than failing validation.
  MonitorConfig cfg;
  cfg.scheme = MonitorScheme::ClosedLong;
  cfg.psi = 0.5;
  cfg.critval_source = CritvalSource::Vostrikova;
  const std::vector<LabeledConfig> vostr{{config_label(cfg), cfg}};
  const ExperimentTable t = size_experiment(case_i(), 40, 40, vostr, 30, 2, 0);
  CHECK(t.labels[0] == "cusum_psi0.5_vostr");
  CHECK(t.rejection.size() == 1);
  CHECK(t.median_delay.empty());
}
