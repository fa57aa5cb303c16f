#include "rcamon/dgp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rcamon/errors.hpp"
#include "rcamon/parallel.hpp"
#include "rcamon/rng.hpp"

namespace rcamon {

CaseParams case_i() { return {0.5, std::sqrt(0.01), std::sqrt(0.5), 0.0}; }
CaseParams case_ii() { return {1.05, std::sqrt(0.01), std::sqrt(0.1), 0.0}; }
CaseParams case_iii() { return {1.0, std::sqrt(0.01), std::sqrt(0.1), 0.0}; }

Series generate_rca(const DgpSpec& spec) {
  if (spec.n < 1) throw ConfigError("DgpSpec.n must be >= 1");
  if (spec.sigma1 < 0.0 || spec.sigma2 < 0.0) {
    throw ConfigError("innovation scales must be nonnegative");
  }
  if (spec.change && spec.change->k_star >= spec.n) {
    throw ConfigError("change.k_star must be < n");
  }
  auto rng = make_rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const bool with_x = spec.lambda0 != 0.0;

  Series out;
  out.values.reserve(spec.n);
  if (with_x) out.covariates.reserve(spec.n);

  double y = spec.y0;
  const std::size_t total = spec.burn_in + spec.n;
  for (std::size_t i = 1; i <= total; ++i) {
    double beta = spec.beta0;
    if (spec.change && i > spec.burn_in + spec.change->k_star) {
      beta = spec.change->beta_a;
    }
    const double eps1 = spec.sigma1 * normal(rng);
    const double eps2 = spec.sigma2 * normal(rng);
    double x = 0.0;
    if (with_x) x = normal(rng);
    y = (beta + eps1) * y + spec.lambda0 * x + eps2;
    if (!std::isfinite(y)) throw NonFinite("RCA path overflowed");
    if (i > spec.burn_in) {
      out.values.push_back(y);
      if (with_x) out.covariates.push_back({x});
    }
  }
  return out;
}

double elog_check(double beta, double sigma1, std::size_t reps, std::uint64_t seed) {
  if (reps < 10000) throw ConfigError("elog_check needs reps >= 10^4");
  auto rng = make_rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < reps; ++i) {
    sum += std::log(std::abs(beta + sigma1 * normal(rng)));
  }
  return sum / static_cast<double>(reps);
}

std::string config_label(const MonitorConfig& config) {
  std::ostringstream out;
  out << (config.detector_kind == DetectorKind::Cusum ? "cusum" : "page");
  out << "_psi" << config.psi;
  switch (config.critval_source) {
    case CritvalSource::Simulated:
      out << "_sim";
      break;
    case CritvalSource::DarlingErdos:
      out << "_de";
      break;
    case CritvalSource::Vostrikova:
      out << "_vostr";
      break;
  }
  if (config.use_covariates) out << "_x";
  return out.str();
}

namespace {

double median_sorted(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

ExperimentTable run_experiment(const CaseParams& params,
                               const std::optional<ChangeParams>& change,
                               std::size_t m, std::size_t m_star,
                               const std::vector<LabeledConfig>& configs,
                               std::size_t reps, std::uint64_t seed,
                               unsigned n_threads) {
  if (reps == 0) throw ConfigError("reps must be >= 1");
  if (configs.empty()) throw ConfigError("no monitor configurations given");

  // Freeze each configuration: pin the horizon, then resolve the critical
  // value once. The value depends on the training fit only through the
  // covariate time dilation, so covariate closed-long simulated runs keep a
  // per-replication resolution instead.
  std::vector<MonitorConfig> frozen;
  frozen.reserve(configs.size());
  for (const auto& lc : configs) {
    MonitorConfig cfg = lc.config;
    const bool needs_mstar = cfg.scheme != MonitorScheme::OpenEnded ||
                             cfg.critval_source != CritvalSource::Simulated;
    if (needs_mstar) {
      if (cfg.m_star && *cfg.m_star != m_star) {
        throw ConfigError("configuration m_star differs from the experiment horizon");
      }
      cfg.m_star = m_star;
    }
    const bool fit_dependent = cfg.use_covariates &&
                               cfg.regime == Regime::Stationary &&
                               cfg.critval_source == CritvalSource::Simulated &&
                               cfg.scheme == MonitorScheme::ClosedLong;
    if (!cfg.fixed_critval && !fit_dependent) {
      cfg.fixed_critval = resolve_critical_value(cfg, m, std::nullopt, n_threads);
    }
    frozen.push_back(std::move(cfg));
  }

  const std::size_t n_cfg = frozen.size();
  std::vector<unsigned char> alarmed(reps * n_cfg, 0);
  std::vector<double> taus(reps * n_cfg, 0.0);

  parallel_for(reps, n_threads, [&](std::size_t rep) {
    DgpSpec dgp;
    dgp.beta0 = params.beta0;
    dgp.sigma1 = params.sigma1;
    dgp.sigma2 = params.sigma2;
    dgp.lambda0 = params.lambda0;
    dgp.n = m + m_star;
    dgp.seed = derive_seed(seed, rep);
    if (change) dgp.change = ChangeSpec{m + change->k_star - 1, change->beta_a};
    const Series series = generate_rca(dgp);
    const Series training = head(series, m);
    const Series stream = tail(series, m);
    for (std::size_t j = 0; j < n_cfg; ++j) {
      MonitorEngine engine = start_monitor(training, frozen[j]);
      const MonitorResult result = run_to_completion(engine, stream);
      if (result.tau) {
        alarmed[rep * n_cfg + j] = 1;
        taus[rep * n_cfg + j] = static_cast<double>(*result.tau);
      }
    }
  });

  ExperimentTable table;
  table.m = m;
  table.m_star = m_star;
  table.reps = reps;
  table.seed = seed;
  for (std::size_t j = 0; j < n_cfg; ++j) {
    table.labels.push_back(configs[j].label.empty() ? config_label(configs[j].config)
                                                    : configs[j].label);
    std::size_t hits = 0;
    std::vector<double> detected;
    for (std::size_t rep = 0; rep < reps; ++rep) {
      if (alarmed[rep * n_cfg + j]) {
        ++hits;
        detected.push_back(taus[rep * n_cfg + j]);
      }
    }
    table.rejection.push_back(static_cast<double>(hits) / static_cast<double>(reps));
    if (change) table.median_delay.push_back(median_sorted(std::move(detected)));
  }
  return table;
}

}  // namespace

ExperimentTable size_experiment(const CaseParams& params, std::size_t m,
                                std::size_t m_star,
                                const std::vector<LabeledConfig>& configs,
                                std::size_t reps, std::uint64_t seed,
                                unsigned n_threads) {
  return run_experiment(params, std::nullopt, m, m_star, configs, reps, seed,
                        n_threads);
}

ExperimentTable power_experiment(const CaseParams& params,
                                 const ChangeParams& change, std::size_t m,
                                 std::size_t m_star,
                                 const std::vector<LabeledConfig>& configs,
                                 std::size_t reps, std::uint64_t seed,
                                 unsigned n_threads) {
  if (change.k_star < 1) throw ConfigError("change.k_star must be >= 1");
  return run_experiment(params, change, m, m_star, configs, reps, seed, n_threads);
}

}  // namespace rcamon
