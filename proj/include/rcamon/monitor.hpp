#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rcamon/boundary.hpp"
#include "rcamon/detector.hpp"
#include "rcamon/limit_sim.hpp"
#include "rcamon/series.hpp"
#include "rcamon/wls.hpp"

namespace rcamon {

enum class MonitorScheme { OpenEnded, ClosedLong, ClosedShort };
enum class Regime { Stationary, Explosive };
enum class Verdict { Continue, Alarm, HorizonReached };

// Why a run ended: Alarm (boundary crossed), Horizon (closed scheme reached
// m*), StepCap (open-ended safety cap), None (stream ran out first).
enum class TerminalReason { None, Alarm, Horizon, StepCap };

struct MonitorConfig {
  DetectorKind detector_kind = DetectorKind::Cusum;
  MonitorScheme scheme = MonitorScheme::OpenEnded;
  double psi = 0.0;
  double alpha = 0.05;
  std::optional<std::size_t> m_star;
  CritvalSource critval_source = CritvalSource::Simulated;
  SimPlan sim_plan;
  std::optional<double> vostrikova_h;
  bool use_covariates = false;
  Regime regime = Regime::Stationary;
  std::optional<std::size_t> max_steps;
  // When set, skips critical-value computation and uses this value; lets
  // experiments resolve c once per configuration and replay it.
  std::optional<double> fixed_critval;
};

struct MonitorEvent {
  Verdict verdict = Verdict::Continue;
  std::size_t k = 0;
  double detector_value = 0.0;
  double boundary_value = 0.0;
};

struct MonitorResult {
  std::optional<std::size_t> tau;
  std::optional<std::size_t> delay;
  bool early_alarm = false;
  TerminalReason reason = TerminalReason::None;
  std::vector<MonitorEvent> events;
};

// Throws ConfigError when the configuration breaks an invariant:
// psi = 1/2 pairs only with DarlingErdos/Vostrikova and the Cusum detector,
// psi < 1/2 only with Simulated, closed schemes and DE/Vostrikova require
// m_star, and ClosedShort cannot be combined with covariates.
void validate_config(const MonitorConfig& config);

// Critical value for a configuration, independent of training data except
// through the covariate time dilation sxd2 (1 when absent). Closed-long
// horizons map to the limit parameters m0 = m*/(sxd2 m), m_* = m0/(1+m0).
double resolve_critical_value(const MonitorConfig& config, std::size_t m,
                              std::optional<double> sxd2 = std::nullopt,
                              unsigned n_threads = 0);

// Streaming monitor: holds the training fit, the resolved boundary and the
// detector state; consumes one observation per step.
class MonitorEngine {
 public:
  MonitorEvent step(double y_new,
                    std::optional<std::span<const double>> x_new = std::nullopt);

  bool terminal() const { return reason_ != TerminalReason::None; }
  TerminalReason terminal_reason() const { return reason_; }
  std::size_t steps_taken() const { return state_.k; }
  const WlsFit& fit() const { return fit_; }
  const BoundarySpec& boundary() const { return boundary_; }
  const MonitorConfig& config() const { return config_; }

 private:
  friend MonitorEngine start_monitor(const Series&, const MonitorConfig&);
  MonitorEngine() = default;

  MonitorConfig config_;
  WlsFit fit_;
  BoundarySpec boundary_;
  DetectorState state_;
  double y_prev_ = 0.0;
  std::size_t horizon_ = 0;  // last step index before a horizon/cap verdict
  TerminalReason reason_ = TerminalReason::None;
  bool cap_exit_ = false;
};

// Fits the training window, resolves the boundary (critical value per
// config.critval_source) and returns an engine primed with y_prev = y_m.
// A training series carrying covariates is used as-is when use_covariates
// is set and stripped to its observation column otherwise.
MonitorEngine start_monitor(const Series& training, const MonitorConfig& config);

// Feeds the stream to the engine until a terminal verdict or the stream ends.
// delay = tau - k_star when an alarm comes at or after a known change index;
// an earlier alarm sets early_alarm instead.
MonitorResult run_to_completion(MonitorEngine& engine, const Series& stream,
                                std::optional<std::size_t> k_star = std::nullopt);

}  // namespace rcamon
