#include "rcamon/monitor.hpp"

#include <cmath>
#include <limits>

#include "rcamon/errors.hpp"

namespace rcamon {

void validate_config(const MonitorConfig& config) {
  if (!(config.psi >= 0.0 && config.psi <= 0.5)) {
    throw ConfigError("psi must be in [0, 1/2]");
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw ConfigError("alpha must be in (0,1)");
  }
  const bool closed_form_source = config.critval_source == CritvalSource::DarlingErdos ||
                                  config.critval_source == CritvalSource::Vostrikova;
  if (config.psi == 0.5) {
    if (!closed_form_source) {
      throw ConfigError("psi = 1/2 requires a DarlingErdos or Vostrikova critical value");
    }
    if (config.detector_kind != DetectorKind::Cusum) {
      throw ConfigError("psi = 1/2 is available for the Cusum detector only");
    }
  } else if (closed_form_source) {
    throw ConfigError("DarlingErdos/Vostrikova critical values apply to psi = 1/2 only");
  }
  const bool closed_scheme = config.scheme == MonitorScheme::ClosedLong ||
                             config.scheme == MonitorScheme::ClosedShort;
  if (closed_scheme && !config.m_star) {
    throw ConfigError("closed schemes require m_star");
  }
  if (closed_form_source && !config.m_star) {
    throw ConfigError("DarlingErdos/Vostrikova critical values require m_star");
  }
  if (config.m_star && *config.m_star < 1) throw ConfigError("m_star must be >= 1");
  if (config.use_covariates && config.scheme == MonitorScheme::ClosedShort) {
    throw ConfigError("no short-horizon boundary is defined for covariate monitoring");
  }
  if (config.max_steps && *config.max_steps < 1) {
    throw ConfigError("max_steps must be >= 1");
  }
}

double resolve_critical_value(const MonitorConfig& config, std::size_t m,
                              std::optional<double> sxd2, unsigned n_threads) {
  validate_config(config);
  if (config.fixed_critval) return *config.fixed_critval;
  switch (config.critval_source) {
    case CritvalSource::DarlingErdos:
      return critval_de(config.alpha, *config.m_star);
    case CritvalSource::Vostrikova:
      return critval_vostrikova(config.alpha, *config.m_star, config.vostrikova_h);
    case CritvalSource::Simulated:
      break;
  }
  const double dilation = sxd2.value_or(1.0);
  if (!(dilation > 0.0)) throw ConfigError("sxd2 must be positive");
  if (config.detector_kind == DetectorKind::Cusum) {
    double frac = 1.0;
    if (config.scheme == MonitorScheme::ClosedLong) {
      const double m0 = static_cast<double>(*config.m_star) /
                        (dilation * static_cast<double>(m));
      frac = m0 / (1.0 + m0);
    }
    return critval_cusum_weighted(config.alpha, config.psi, frac, config.sim_plan,
                                  n_threads);
  }
  switch (config.scheme) {
    case MonitorScheme::OpenEnded:
      return critval_page(config.alpha, config.psi,
                          std::numeric_limits<double>::infinity(), config.sim_plan,
                          n_threads);
    case MonitorScheme::ClosedLong: {
      const double m0 = static_cast<double>(*config.m_star) /
                        (dilation * static_cast<double>(m));
      return critval_page(config.alpha, config.psi, m0, config.sim_plan, n_threads);
    }
    case MonitorScheme::ClosedShort:
      return critval_page_short(config.alpha, config.psi, config.sim_plan, n_threads);
  }
  throw ConfigError("unreachable critical-value case");
}

MonitorEngine start_monitor(const Series& training, const MonitorConfig& config) {
  validate_config(config);
  MonitorEngine engine;
  engine.config_ = config;

  if (config.use_covariates) {
    if (!training.has_covariates()) {
      throw ConfigError("covariates configured but the training series has none");
    }
    engine.fit_ = fit_wls_covariates(training);
  } else if (training.has_covariates()) {
    Series stripped;
    stripped.values = training.values;
    engine.fit_ = fit_wls(stripped);
  } else {
    engine.fit_ = fit_wls(training);
  }
  const WlsFit& fit = engine.fit_;

  BoundarySpec& spec = engine.boundary_;
  spec.psi = config.psi;
  spec.m = fit.m;
  spec.m_star = config.m_star;
  spec.s = std::sqrt(fit.s2_hat);
  spec.c_source = config.critval_source;
  std::optional<double> dilation;
  if (config.use_covariates) {
    spec.scheme = BoundaryScheme::Covariate;
    if (config.regime == Regime::Stationary) {
      spec.sx2 = fit.sx2_hat;
      spec.sxd2 = fit.sxd2_hat;
      dilation = fit.sxd2_hat;
    } else {
      // Explosive branch of Eq. var-x: multiplier sigma_1 (plug-in sqrt of
      // the LRV, which converges to sigma_1^2 under divergence), dilation 1.
      spec.sx2 = std::sqrt(fit.s2_hat);
      spec.sxd2 = 1.0;
    }
  } else {
    switch (config.scheme) {
      case MonitorScheme::OpenEnded:
        spec.scheme = BoundaryScheme::OpenEnded;
        break;
      case MonitorScheme::ClosedLong:
        spec.scheme = BoundaryScheme::ClosedLong;
        break;
      case MonitorScheme::ClosedShort:
        spec.scheme = BoundaryScheme::ClosedShort;
        break;
    }
  }
  spec.c = resolve_critical_value(config, fit.m, dilation);
  if (!(spec.c > 0.0)) throw ConfigError("critical value must be positive");

  engine.state_ = make_detector_state(config.detector_kind);
  engine.y_prev_ = training.values[fit.m - 1];
  const bool closed_scheme = config.scheme == MonitorScheme::ClosedLong ||
                             config.scheme == MonitorScheme::ClosedShort;
  if (closed_scheme) {
    engine.horizon_ = *config.m_star;
    engine.cap_exit_ = false;
  } else {
    engine.horizon_ = config.max_steps.value_or(10 * fit.m);
    engine.cap_exit_ = true;
  }
  return engine;
}

MonitorEvent MonitorEngine::step(double y_new,
                                 std::optional<std::span<const double>> x_new) {
  if (terminal()) throw StepAfterTerminal("monitor already reached a terminal verdict");
  if (!std::isfinite(y_new)) throw NonFinite("non-finite observation");

  const double r = residual(y_new, y_prev_, fit_, x_new);
  const double value = config_.detector_kind == DetectorKind::Cusum
                           ? cusum_update(state_, r)
                           : page_update(state_, r);
  const std::size_t k = state_.k;
  const double g = boundary_value(boundary_, k);
  y_prev_ = y_new;

  MonitorEvent event{Verdict::Continue, k, value, g};
  if (value >= g) {
    event.verdict = Verdict::Alarm;
    reason_ = TerminalReason::Alarm;
  } else if (k >= horizon_) {
    event.verdict = Verdict::HorizonReached;
    reason_ = cap_exit_ ? TerminalReason::StepCap : TerminalReason::Horizon;
  }
  return event;
}

MonitorResult run_to_completion(MonitorEngine& engine, const Series& stream,
                                std::optional<std::size_t> k_star) {
  validate_series(stream);
  const bool pass_covariates = engine.fit().has_covariates();
  if (pass_covariates && !stream.has_covariates()) {
    throw ConfigError("covariates configured but the stream has none");
  }
  MonitorResult result;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    std::optional<std::span<const double>> x;
    if (pass_covariates) x = std::span<const double>(stream.covariates[i]);
    const MonitorEvent event = engine.step(stream.values[i], x);
    result.events.push_back(event);
    if (event.verdict == Verdict::Alarm) {
      result.tau = event.k;
      break;
    }
    if (event.verdict == Verdict::HorizonReached) break;
  }
  result.reason = engine.terminal_reason();
  if (result.tau && k_star) {
    if (*result.tau >= *k_star) {
      result.delay = *result.tau - *k_star;
    } else {
      result.early_alarm = true;
    }
  }
  return result;
}

}  // namespace rcamon
