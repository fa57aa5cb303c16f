// Command-line front end: fit a training window, monitor a stream, resolve
// critical values, and reproduce the size/power tables.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rcamon/boundary.hpp"
#include "rcamon/csv.hpp"
#include "rcamon/detector.hpp"
#include "rcamon/dgp.hpp"
#include "rcamon/errors.hpp"
#include "rcamon/limit_sim.hpp"
#include "rcamon/monitor.hpp"
#include "rcamon/series.hpp"
#include "rcamon/wls.hpp"

using namespace rcamon;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitAlarm = 2;

const std::map<std::string, DetectorKind> kDetectorNames{
    {"cusum", DetectorKind::Cusum}, {"page", DetectorKind::Page}};
const std::map<std::string, MonitorScheme> kSchemeNames{
    {"open", MonitorScheme::OpenEnded},
    {"closed-long", MonitorScheme::ClosedLong},
    {"closed-short", MonitorScheme::ClosedShort}};
const std::map<std::string, CritvalSource> kSourceNames{
    {"sim", CritvalSource::Simulated},
    {"de", CritvalSource::DarlingErdos},
    {"vostrikova", CritvalSource::Vostrikova}};
const std::map<std::string, Regime> kRegimeNames{{"stationary", Regime::Stationary},
                                                 {"explosive", Regime::Explosive}};

const char* source_name(CritvalSource source) {
  switch (source) {
    case CritvalSource::Simulated:
      return "sim";
    case CritvalSource::DarlingErdos:
      return "de";
    case CritvalSource::Vostrikova:
      return "vostrikova";
  }
  return "unknown";
}

struct IoOptions {
  std::string input;
  bool log_transform = false;
  bool diff_covs = false;
};

void add_io_options(CLI::App* cmd, IoOptions& io) {
  cmd->add_option("-i,--input", io.input, "Input CSV: observations, then covariate columns")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_flag("--log-transform", io.log_transform,
                "Monitor log(1 + y) instead of y");
  cmd->add_flag("--diff-covariates", io.diff_covs,
                "First-difference the covariate columns (drops the first row)");
}

Series load_input(const IoOptions& io) {
  Series s = load_series_csv(io.input, io.log_transform);
  if (io.diff_covs) diff_covariates(s);
  return s;
}

struct ConfigOptions {
  std::string detector = "cusum";
  std::string scheme = "open";
  double psi = 0.0;
  double alpha = 0.05;
  std::size_t m_star = 0;
  std::string source = "sim";
  double vostrikova_h = 0.0;
  std::size_t n_grid = 10000;
  std::size_t sim_reps = 100000;
  double truncation_x = 100.0;
  std::uint64_t seed = 0;
  double fixed_critval = 0.0;
  bool use_covariates = false;
  std::string regime = "stationary";
  std::size_t max_steps = 0;
};

void add_config_options(CLI::App* cmd, ConfigOptions& opts) {
  cmd->add_option("--detector", opts.detector, "Detector statistic")
      ->check(CLI::IsMember({"cusum", "page"}))
      ->capture_default_str();
  cmd->add_option("--scheme", opts.scheme, "Monitoring horizon scheme")
      ->check(CLI::IsMember({"open", "closed-long", "closed-short"}))
      ->capture_default_str();
  cmd->add_option("--psi", opts.psi, "Boundary weight exponent in [0, 1/2]")
      ->capture_default_str();
  cmd->add_option("--alpha", opts.alpha, "Significance level")->capture_default_str();
  cmd->add_option("--mstar", opts.m_star, "Closed monitoring horizon m*");
  cmd->add_option("--source", opts.source,
                  "Critical value source (sim, de, vostrikova)")
      ->check(CLI::IsMember({"sim", "de", "vostrikova"}))
      ->capture_default_str();
  cmd->add_option("--vostrikova-h", opts.vostrikova_h,
                  "Window parameter h of the Vostrikova approximation "
                  "(default sqrt(log m*))");
  cmd->add_option("--ngrid", opts.n_grid, "Wiener grid points per unit time")
      ->capture_default_str();
  cmd->add_option("--sim-reps", opts.sim_reps, "Simulation replications")
      ->capture_default_str();
  cmd->add_option("--truncation-x", opts.truncation_x,
                  "Open-ended horizon truncation for the Page limit")
      ->capture_default_str();
  cmd->add_option("--seed", opts.seed, "Base RNG seed")
      ->envname("RCAMON_SEED")
      ->capture_default_str();
  cmd->add_option("--critval", opts.fixed_critval,
                  "Use this critical value instead of resolving one");
  cmd->add_flag("--covariates", opts.use_covariates,
                "Use the covariate-adjusted estimator and boundary");
  cmd->add_option("--regime", opts.regime, "Assumed regime for covariate scales")
      ->check(CLI::IsMember({"stationary", "explosive"}))
      ->capture_default_str();
  cmd->add_option("--max-steps", opts.max_steps,
                  "Step cap for open-ended monitoring (default 10 m)");
}

MonitorConfig build_config(const ConfigOptions& opts) {
  MonitorConfig cfg;
  cfg.detector_kind = kDetectorNames.at(opts.detector);
  cfg.scheme = kSchemeNames.at(opts.scheme);
  cfg.psi = opts.psi;
  cfg.alpha = opts.alpha;
  if (opts.m_star > 0) cfg.m_star = opts.m_star;
  cfg.critval_source = kSourceNames.at(opts.source);
  if (opts.vostrikova_h > 0.0) cfg.vostrikova_h = opts.vostrikova_h;
  cfg.sim_plan.n_grid = opts.n_grid;
  cfg.sim_plan.reps = opts.sim_reps;
  cfg.sim_plan.seed = opts.seed;
  cfg.sim_plan.truncation_x = opts.truncation_x;
  cfg.use_covariates = opts.use_covariates;
  cfg.regime = kRegimeNames.at(opts.regime);
  if (opts.max_steps > 0) cfg.max_steps = opts.max_steps;
  if (opts.fixed_critval > 0.0) cfg.fixed_critval = opts.fixed_critval;
  return cfg;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw ParseError("cannot open " + path + " for writing", 0);
  return file;
}

void print_fit(const WlsFit& fit) {
  std::cout << "m=" << fit.m << "\n";
  std::cout << "beta_hat=" << format_double(fit.beta_hat) << "\n";
  std::cout << "s2_hat=" << format_double(fit.s2_hat) << "\n";
  if (fit.lambda_hat) {
    for (std::size_t j = 0; j < fit.lambda_hat->size(); ++j) {
      std::cout << "lambda_hat_" << (j + 1) << "="
                << format_double((*fit.lambda_hat)[j]) << "\n";
    }
  }
  if (fit.sx2_hat) std::cout << "sx2_hat=" << format_double(*fit.sx2_hat) << "\n";
  if (fit.sxd2_hat) std::cout << "sxd2_hat=" << format_double(*fit.sxd2_hat) << "\n";
}

// "detector:psi[:source]" -> a closed-long monitoring configuration.
MonitorConfig parse_table_config(const std::string& text, double alpha,
                                 const SimPlan& plan) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() < 2 || parts.size() > 3) {
    throw ConfigError("config spec '" + text + "' is not detector:psi[:source]");
  }
  if (!kDetectorNames.count(parts[0])) {
    throw ConfigError("unknown detector '" + parts[0] + "' in '" + text + "'");
  }
  MonitorConfig cfg;
  cfg.detector_kind = kDetectorNames.at(parts[0]);
  cfg.scheme = MonitorScheme::ClosedLong;
  try {
    cfg.psi = std::stod(parts[1]);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse psi in '" + text + "'");
  }
  if (parts.size() == 3) {
    if (!kSourceNames.count(parts[2])) {
      throw ConfigError("unknown critical-value source '" + parts[2] + "'");
    }
    cfg.critval_source = kSourceNames.at(parts[2]);
  }
  cfg.alpha = alpha;
  cfg.sim_plan = plan;
  return cfg;
}

std::vector<LabeledConfig> table_configs(const std::vector<std::string>& specs,
                                         double alpha, const SimPlan& plan) {
  std::vector<std::string> texts = specs;
  if (texts.empty()) {
    texts = {"cusum:0",      "cusum:0.25", "cusum:0.45", "cusum:0.5:de",
             "cusum:0.5:vostrikova", "page:0",     "page:0.25",  "page:0.45"};
  }
  std::vector<LabeledConfig> configs;
  for (const auto& text : texts) {
    MonitorConfig cfg = parse_table_config(text, alpha, plan);
    configs.push_back({config_label(cfg), cfg});
  }
  return configs;
}

struct CaseOptions {
  std::string name = "I";
  double beta0 = 0.0;
  double sigma1_sq = -1.0;
  double sigma2_sq = -1.0;
  double lambda0 = 0.0;
};

void add_case_options(CLI::App* cmd, CaseOptions& opts) {
  cmd->add_option("--case", opts.name, "Parameter preset (I, II, III)")
      ->check(CLI::IsMember({"I", "II", "III"}))
      ->capture_default_str();
  cmd->add_option("--beta0", opts.beta0, "Override the autoregressive coefficient");
  cmd->add_option("--sigma1-sq", opts.sigma1_sq,
                  "Override the coefficient-noise variance");
  cmd->add_option("--sigma2-sq", opts.sigma2_sq,
                  "Override the innovation variance");
  cmd->add_option("--lambda0", opts.lambda0, "Covariate coefficient of the DGP");
}

CaseParams build_case(const CLI::App* cmd, const CaseOptions& opts) {
  CaseParams params = opts.name == "II" ? case_ii()
                      : opts.name == "III" ? case_iii()
                                           : case_i();
  if (cmd->count("--beta0") > 0) params.beta0 = opts.beta0;
  if (cmd->count("--sigma1-sq") > 0) params.sigma1 = std::sqrt(opts.sigma1_sq);
  if (cmd->count("--sigma2-sq") > 0) params.sigma2 = std::sqrt(opts.sigma2_sq);
  if (cmd->count("--lambda0") > 0) params.lambda0 = opts.lambda0;
  return params;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential changepoint monitoring for random coefficient autoregressions"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Key=value options file; put subcommand options under a "
                 "[subcommand] section");

  // fit ------------------------------------------------------------------
  auto* fit_cmd = app.add_subcommand("fit", "Fit the weighted LS training estimate");
  IoOptions fit_io;
  add_io_options(fit_cmd, fit_io);
  std::size_t fit_train = 0;
  bool fit_ignore_covs = false;
  fit_cmd->add_option("-m,--train", fit_train,
                      "Use only the first m observations (default: all)");
  fit_cmd->add_flag("--ignore-covariates", fit_ignore_covs,
                    "Drop covariate columns before fitting");

  // monitor --------------------------------------------------------------
  auto* mon_cmd = app.add_subcommand("monitor", "Monitor a stream after a training window");
  IoOptions mon_io;
  add_io_options(mon_cmd, mon_io);
  ConfigOptions mon_opts;
  add_config_options(mon_cmd, mon_opts);
  std::size_t mon_train = 0;
  mon_cmd->add_option("-m,--train", mon_train, "Training window length")->required();
  std::size_t mon_kstar = 0;
  mon_cmd->add_option("--kstar", mon_kstar,
                      "Known change step for delay reporting (1-based)");
  unsigned mon_threads = 0;
  mon_cmd->add_option("--threads", mon_threads,
                      "Worker threads for critical-value simulation (0 = all cores)");
  std::string mon_output;
  mon_cmd->add_option("-o,--output", mon_output, "Event CSV destination (default stdout)");

  // critvals -------------------------------------------------------------
  auto* crit_cmd = app.add_subcommand("critvals", "Resolve a boundary critical value");
  ConfigOptions crit_opts;
  add_config_options(crit_cmd, crit_opts);
  std::size_t crit_m = 0;
  crit_cmd->add_option("-m,--train", crit_m,
                       "Training window length (sets the closed-long horizon ratio)");
  double crit_sxd2 = 1.0;
  crit_cmd->add_option("--sxd2", crit_sxd2, "Covariate time dilation")
      ->capture_default_str();
  unsigned crit_threads = 0;
  crit_cmd->add_option("--threads", crit_threads, "Worker threads (0 = all cores)");

  // simulate-size / simulate-power ---------------------------------------
  auto* size_cmd = app.add_subcommand("simulate-size",
                                      "Empirical null rejection rates of the monitors");
  auto* power_cmd = app.add_subcommand(
      "simulate-power", "Empirical rejection rates and delays under a change");

  struct TableOptions {
    CaseOptions case_opts;
    std::size_t m = 100;
    std::size_t m_star = 100;
    std::size_t reps = 1000;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    std::size_t n_grid = 10000;
    std::size_t sim_reps = 20000;
    unsigned threads = 0;
    std::vector<std::string> specs;
    std::string output;
  };
  TableOptions size_opts, power_opts;
  std::vector<double> power_beta_a;
  std::size_t power_kstar = 1;

  auto add_table_options = [](CLI::App* cmd, TableOptions& opts) {
    add_case_options(cmd, opts.case_opts);
    cmd->add_option("-m,--train", opts.m, "Training window length")->capture_default_str();
    cmd->add_option("--mstar", opts.m_star, "Monitoring horizon")->capture_default_str();
    cmd->add_option("--reps", opts.reps, "Monte Carlo replications")->capture_default_str();
    cmd->add_option("--seed", opts.seed, "Base RNG seed")
        ->envname("RCAMON_SEED")
        ->capture_default_str();
    cmd->add_option("--alpha", opts.alpha, "Significance level")->capture_default_str();
    cmd->add_option("--ngrid", opts.n_grid, "Wiener grid points for simulated critical values")
        ->capture_default_str();
    cmd->add_option("--sim-reps", opts.sim_reps,
                    "Replications for simulated critical values")
        ->capture_default_str();
    cmd->add_option("--threads", opts.threads, "Worker threads (0 = all cores)");
    cmd->add_option("--monitor", opts.specs,
                    "Monitor column as detector:psi[:source]; repeatable "
                    "(default: the full table battery)");
    cmd->add_option("-o,--output", opts.output, "Table CSV destination (default stdout)");
  };
  add_table_options(size_cmd, size_opts);
  add_table_options(power_cmd, power_opts);
  power_cmd->add_option("--beta-a", power_beta_a,
                        "Post-change coefficient; repeatable (default per case)");
  power_cmd->add_option("--kstar", power_kstar, "Change step within the monitoring window")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (fit_cmd->parsed()) {
      Series series = load_input(fit_io);
      if (fit_ignore_covs) series.covariates.clear();
      if (fit_train > 0) series = head(series, fit_train);
      print_fit(series.has_covariates() ? fit_wls_covariates(series) : fit_wls(series));
      return kExitOk;
    }

    if (mon_cmd->parsed()) {
      const Series series = load_input(mon_io);
      if (mon_train == 0 || mon_train >= series.size()) {
        throw ConfigError("--train must split the series into training and stream");
      }
      Series training = head(series, mon_train);
      const Series stream = tail(series, mon_train);
      MonitorConfig cfg = build_config(mon_opts);
      if (!cfg.use_covariates) training.covariates.clear();
      MonitorEngine engine = start_monitor(training, cfg);

      std::ofstream file;
      std::ostream& out = open_output(mon_output, file);
      write_event_header(out);
      std::optional<std::size_t> tau;
      for (std::size_t j = 0; j < stream.size() && !engine.terminal(); ++j) {
        const MonitorEvent event =
            engine.fit().has_covariates()
                ? engine.step(stream.values[j],
                              std::span<const double>(stream.covariates[j]))
                : engine.step(stream.values[j]);
        write_event_row(out, event);
        if (event.verdict == Verdict::Alarm) tau = event.k;
      }
      out.flush();

      std::cerr << "steps=" << engine.steps_taken();
      if (tau) {
        std::cerr << " tau=" << *tau;
        if (mon_kstar > 0) {
          if (*tau >= mon_kstar) {
            std::cerr << " delay=" << (*tau - mon_kstar);
          } else {
            std::cerr << " early_alarm=1";
          }
        }
      } else {
        std::cerr << " tau=none";
      }
      std::cerr << " critval=" << format_double(engine.boundary().c) << "\n";
      return tau ? kExitAlarm : kExitOk;
    }

    if (crit_cmd->parsed()) {
      const MonitorConfig cfg = build_config(crit_opts);
      validate_config(cfg);
      if (cfg.scheme == MonitorScheme::ClosedLong && crit_m == 0) {
        throw ConfigError("closed-long critical values need --train");
      }
      const double c = resolve_critical_value(cfg, crit_m, crit_sxd2, crit_threads);
      std::cout << "critval=" << format_double(c) << "\n";
      std::cout << "source=" << source_name(cfg.critval_source) << "\n";
      std::cout << "detector=" << (cfg.detector_kind == DetectorKind::Page ? "page" : "cusum")
                << "\n";
      std::cout << "alpha=" << format_double(cfg.alpha) << "\n";
      std::cout << "psi=" << format_double(cfg.psi) << "\n";
      if (cfg.m_star) std::cout << "m_star=" << *cfg.m_star << "\n";
      if (cfg.critval_source == CritvalSource::Simulated) {
        std::cout << "n_grid=" << cfg.sim_plan.n_grid << "\n";
        std::cout << "reps=" << cfg.sim_plan.reps << "\n";
        std::cout << "seed=" << cfg.sim_plan.seed << "\n";
      }
      return kExitOk;
    }

    const bool is_power = power_cmd->parsed();
    TableOptions& opts = is_power ? power_opts : size_opts;
    CLI::App* cmd = is_power ? power_cmd : size_cmd;
    const CaseParams params = build_case(cmd, opts.case_opts);
    SimPlan plan;
    plan.n_grid = opts.n_grid;
    plan.reps = opts.sim_reps;
    plan.seed = opts.seed;
    const std::vector<LabeledConfig> configs =
        table_configs(opts.specs, opts.alpha, plan);

    std::ofstream file;
    std::ostream& out = open_output(opts.output, file);
    if (!is_power) {
      const ExperimentTable table = size_experiment(params, opts.m, opts.m_star, configs,
                                                    opts.reps, opts.seed, opts.threads);
      out << experiment_to_csv(table);
    } else {
      std::vector<double> beta_as = power_beta_a;
      if (beta_as.empty()) {
        if (opts.case_opts.name == "II") {
          beta_as = {0.95, 0.969};
        } else if (opts.case_opts.name == "III") {
          beta_as = {1.1};
        } else {
          beta_as = {0.75};
        }
      }
      for (double beta_a : beta_as) {
        ChangeParams change;
        change.beta_a = beta_a;
        change.k_star = power_kstar;
        const ExperimentTable table = power_experiment(
            params, change, opts.m, opts.m_star, configs, opts.reps, opts.seed, opts.threads);
        out << "# beta_a=" << format_double(beta_a) << "\n" << experiment_to_csv(table);
      }
    }
    out.flush();
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
