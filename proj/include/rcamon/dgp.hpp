#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rcamon/monitor.hpp"
#include "rcamon/series.hpp"

namespace rcamon {

// Change in the autoregressive level: beta switches from beta0 to beta_a for
// post-burn-in indices i > k_star.
struct ChangeSpec {
  std::size_t k_star = 0;
  double beta_a = 0.0;
};

// RCA(1) generator settings: y_i = (beta + eps_{i,1}) y_{i-1} + lambda0 x_i
// + eps_{i,2} with eps_1 ~ N(0, sigma1^2), eps_2 ~ N(0, sigma2^2), and
// x_i ~ N(0,1) attached as a covariate iff lambda0 != 0.
struct DgpSpec {
  double beta0 = 0.5;
  double sigma1 = 0.1;
  double sigma2 = 0.1;
  double lambda0 = 0.0;
  std::size_t n = 0;
  std::size_t burn_in = 1000;
  std::optional<ChangeSpec> change;
  std::uint64_t seed = 0;
  double y0 = 0.0;
};

// Innovation parameters of the paper's three experimental cases
// (sigma1, sigma2 are standard deviations; all cases use sigma1^2 = 0.01).
struct CaseParams {
  double beta0 = 0.5;
  double sigma1 = 0.1;
  double sigma2 = 0.1;
  double lambda0 = 0.0;
};

CaseParams case_i();    // stationary: beta0 = 0.5,  sigma2^2 = 0.5
CaseParams case_ii();   // explosive:  beta0 = 1.05, sigma2^2 = 0.1
CaseParams case_iii();  // STUR:       beta0 = 1.0,  sigma2^2 = 0.1

// Simulates the RCA recursion, discarding the first burn_in values. Draw
// order per index: eps_1, eps_2, then x when lambda0 != 0.
Series generate_rca(const DgpSpec& spec);

// Monte Carlo estimate of E log|beta + sigma1 g|, the regime indicator
// (< 0 stationary, > 0 explosive, ~ 0 STUR).
double elog_check(double beta, double sigma1, std::size_t reps, std::uint64_t seed);

// A monitor configuration with a printable column label for the tables.
struct LabeledConfig {
  std::string label;
  MonitorConfig config;
};

// Generates a label like "cusum_psi0.45_sim" from the configuration.
std::string config_label(const MonitorConfig& config);

// One table of experiment results; median_delay is filled by power
// experiments only (the median stopping step over detected replications,
// matching the paper's delay columns).
struct ExperimentTable {
  std::size_t m = 0;
  std::size_t m_star = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> labels;
  std::vector<double> rejection;
  std::vector<double> median_delay;
};

// Change applied from the first monitored index onward.
struct ChangeParams {
  double beta_a = 0.0;
  std::size_t k_star = 1;
};

// Null-hypothesis rejection frequencies: reps replications of the no-change
// DGP, each monitored by every configuration over a shared simulated series.
// Critical values are resolved once per configuration.
ExperimentTable size_experiment(const CaseParams& params, std::size_t m,
                                std::size_t m_star,
                                const std::vector<LabeledConfig>& configs,
                                std::size_t reps, std::uint64_t seed,
                                unsigned n_threads = 0);

// Same harness with beta switching to change.beta_a at monitored index
// change.k_star; reports rejection frequency over all replications and the
// median stopping step over detected ones.
ExperimentTable power_experiment(const CaseParams& params,
                                 const ChangeParams& change, std::size_t m,
                                 std::size_t m_star,
                                 const std::vector<LabeledConfig>& configs,
                                 std::size_t reps, std::uint64_t seed,
                                 unsigned n_threads = 0);

}  // namespace rcamon
