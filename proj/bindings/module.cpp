// Python bindings for the monitoring toolkit.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <span>
#include <vector>

#include "rcamon/boundary.hpp"
#include "rcamon/csv.hpp"
#include "rcamon/detector.hpp"
#include "rcamon/dgp.hpp"
#include "rcamon/errors.hpp"
#include "rcamon/limit_sim.hpp"
#include "rcamon/monitor.hpp"
#include "rcamon/rng.hpp"
#include "rcamon/series.hpp"
#include "rcamon/wls.hpp"

namespace py = pybind11;
using namespace rcamon;

namespace {

Series make_series(std::vector<double> values,
                   std::optional<std::vector<std::vector<double>>> covariates) {
  Series s;
  s.values = std::move(values);
  if (covariates) s.covariates = std::move(*covariates);
  validate_series(s);
  return s;
}

std::optional<std::span<const double>> as_span(
    const std::optional<std::vector<double>>& x) {
  if (!x) return std::nullopt;
  return std::span<const double>(*x);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sequential changepoint monitoring for random coefficient autoregressions";

  py::register_exception<DegenerateTraining>(m, "DegenerateTraining", PyExc_RuntimeError);
  py::register_exception<NonFinite>(m, "NonFinite", PyExc_RuntimeError);
  py::register_exception<SingularGram>(m, "SingularGram", PyExc_RuntimeError);
  py::register_exception<DegenerateScales>(m, "DegenerateScales", PyExc_RuntimeError);
  py::register_exception<ArityMismatch>(m, "ArityMismatch", PyExc_RuntimeError);
  py::register_exception<OutOfHorizon>(m, "OutOfHorizon", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NoRoot>(m, "NoRoot", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<StepAfterTerminal>(m, "StepAfterTerminal", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::enum_<DetectorKind>(m, "DetectorKind")
      .value("CUSUM", DetectorKind::Cusum)
      .value("PAGE", DetectorKind::Page);
  py::enum_<BoundaryScheme>(m, "BoundaryScheme")
      .value("OPEN_ENDED", BoundaryScheme::OpenEnded)
      .value("CLOSED_LONG", BoundaryScheme::ClosedLong)
      .value("CLOSED_SHORT", BoundaryScheme::ClosedShort)
      .value("COVARIATE", BoundaryScheme::Covariate);
  py::enum_<CritvalSource>(m, "CritvalSource")
      .value("SIMULATED", CritvalSource::Simulated)
      .value("DARLING_ERDOS", CritvalSource::DarlingErdos)
      .value("VOSTRIKOVA", CritvalSource::Vostrikova);
  py::enum_<MonitorScheme>(m, "MonitorScheme")
      .value("OPEN_ENDED", MonitorScheme::OpenEnded)
      .value("CLOSED_LONG", MonitorScheme::ClosedLong)
      .value("CLOSED_SHORT", MonitorScheme::ClosedShort);
  py::enum_<Regime>(m, "Regime")
      .value("STATIONARY", Regime::Stationary)
      .value("EXPLOSIVE", Regime::Explosive);
  py::enum_<Verdict>(m, "Verdict")
      .value("CONTINUE", Verdict::Continue)
      .value("ALARM", Verdict::Alarm)
      .value("HORIZON_REACHED", Verdict::HorizonReached);
  py::enum_<TerminalReason>(m, "TerminalReason")
      .value("NONE", TerminalReason::None)
      .value("ALARM", TerminalReason::Alarm)
      .value("HORIZON", TerminalReason::Horizon)
      .value("STEP_CAP", TerminalReason::StepCap);

  py::class_<Series>(m, "Series")
      .def(py::init(&make_series), py::arg("values"),
           py::arg("covariates") = std::nullopt)
      .def_readwrite("values", &Series::values)
      .def_readwrite("covariates", &Series::covariates)
      .def("__len__", &Series::size)
      .def_property_readonly("has_covariates", &Series::has_covariates)
      .def_property_readonly("covariate_dim", &Series::covariate_dim);
  m.def("head", &head, py::arg("series"), py::arg("m"));
  m.def("tail", &tail, py::arg("series"), py::arg("m"));
  m.def("log1p_transform", &log1p_transform, py::arg("series"));
  m.def("diff_covariates", &diff_covariates, py::arg("series"));

  py::class_<WlsFit>(m, "WlsFit")
      .def_readonly("beta_hat", &WlsFit::beta_hat)
      .def_readonly("lambda_hat", &WlsFit::lambda_hat)
      .def_readonly("s2_hat", &WlsFit::s2_hat)
      .def_readonly("m", &WlsFit::m)
      .def_readonly("sx2_hat", &WlsFit::sx2_hat)
      .def_readonly("sxd2_hat", &WlsFit::sxd2_hat)
      .def_property_readonly("has_covariates", &WlsFit::has_covariates);
  m.def("fit_wls", &fit_wls, py::arg("training"));
  m.def("fit_wls_covariates", &fit_wls_covariates, py::arg("training"));

  py::class_<DetectorState>(m, "DetectorState")
      .def_readonly("kind", &DetectorState::kind)
      .def_readonly("k", &DetectorState::k)
      .def_readonly("prefix_sum", &DetectorState::prefix_sum)
      .def_readonly("run_min", &DetectorState::run_min)
      .def_readonly("run_max", &DetectorState::run_max);
  m.def("make_detector_state", &make_detector_state, py::arg("kind"));
  m.def(
      "residual",
      [](double y_new, double y_prev, const WlsFit& fit,
         std::optional<std::vector<double>> x_new) {
        return residual(y_new, y_prev, fit, as_span(x_new));
      },
      py::arg("y_new"), py::arg("y_prev"), py::arg("fit"),
      py::arg("x_new") = std::nullopt);
  m.def("cusum_update", &cusum_update, py::arg("state"), py::arg("residual"));
  m.def("page_update", &page_update, py::arg("state"), py::arg("residual"));
  m.def("page_bruteforce", &page_bruteforce, py::arg("residuals"));

  py::class_<BoundarySpec>(m, "BoundarySpec")
      .def(py::init<>())
      .def_readwrite("psi", &BoundarySpec::psi)
      .def_readwrite("scheme", &BoundarySpec::scheme)
      .def_readwrite("c", &BoundarySpec::c)
      .def_readwrite("s", &BoundarySpec::s)
      .def_readwrite("m", &BoundarySpec::m)
      .def_readwrite("m_star", &BoundarySpec::m_star)
      .def_readwrite("sx2", &BoundarySpec::sx2)
      .def_readwrite("sxd2", &BoundarySpec::sxd2)
      .def_readwrite("c_source", &BoundarySpec::c_source);
  m.def("boundary_value", &boundary_value, py::arg("spec"), py::arg("k"));
  m.def("de_norming", &de_norming, py::arg("x"));
  m.def("critval_de", &critval_de, py::arg("alpha"), py::arg("m_star"));
  m.def("critval_vostrikova", &critval_vostrikova, py::arg("alpha"), py::arg("m_star"),
        py::arg("h") = std::nullopt);

  py::class_<SimPlan>(m, "SimPlan")
      .def(py::init<>())
      .def_readwrite("n_grid", &SimPlan::n_grid)
      .def_readwrite("reps", &SimPlan::reps)
      .def_readwrite("seed", &SimPlan::seed)
      .def_readwrite("truncation_x", &SimPlan::truncation_x);
  m.def(
      "simulate_wiener_path",
      [](std::size_t n_grid, std::uint64_t seed) {
        auto rng = make_rng(seed);
        return simulate_wiener_path(n_grid, rng);
      },
      py::arg("n_grid"), py::arg("seed"));
  m.def("order_statistic_quantile", &order_statistic_quantile, py::arg("values"),
        py::arg("alpha"));
  m.def("sup_abs_wiener_cdf", &sup_abs_wiener_cdf, py::arg("x"));
  m.def("critval_cusum_weighted", &critval_cusum_weighted, py::arg("alpha"),
        py::arg("psi"), py::arg("m_star_frac"), py::arg("plan"), py::arg("n_threads") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("critval_page", &critval_page, py::arg("alpha"), py::arg("psi"), py::arg("m0"),
        py::arg("plan"), py::arg("n_threads") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("critval_page_short", &critval_page_short, py::arg("alpha"), py::arg("psi"),
        py::arg("plan"), py::arg("n_threads") = 0,
        py::call_guard<py::gil_scoped_release>());

  py::class_<MonitorConfig>(m, "MonitorConfig")
      .def(py::init<>())
      .def_readwrite("detector_kind", &MonitorConfig::detector_kind)
      .def_readwrite("scheme", &MonitorConfig::scheme)
      .def_readwrite("psi", &MonitorConfig::psi)
      .def_readwrite("alpha", &MonitorConfig::alpha)
      .def_readwrite("m_star", &MonitorConfig::m_star)
      .def_readwrite("critval_source", &MonitorConfig::critval_source)
      .def_readwrite("sim_plan", &MonitorConfig::sim_plan)
      .def_readwrite("vostrikova_h", &MonitorConfig::vostrikova_h)
      .def_readwrite("use_covariates", &MonitorConfig::use_covariates)
      .def_readwrite("regime", &MonitorConfig::regime)
      .def_readwrite("max_steps", &MonitorConfig::max_steps)
      .def_readwrite("fixed_critval", &MonitorConfig::fixed_critval);
  m.def("validate_config", &validate_config, py::arg("config"));
  m.def("resolve_critical_value", &resolve_critical_value, py::arg("config"),
        py::arg("m"), py::arg("sxd2") = std::nullopt, py::arg("n_threads") = 0,
        py::call_guard<py::gil_scoped_release>());

  py::class_<MonitorEvent>(m, "MonitorEvent")
      .def_readonly("verdict", &MonitorEvent::verdict)
      .def_readonly("k", &MonitorEvent::k)
      .def_readonly("detector_value", &MonitorEvent::detector_value)
      .def_readonly("boundary_value", &MonitorEvent::boundary_value);
  py::class_<MonitorResult>(m, "MonitorResult")
      .def_readonly("tau", &MonitorResult::tau)
      .def_readonly("delay", &MonitorResult::delay)
      .def_readonly("early_alarm", &MonitorResult::early_alarm)
      .def_readonly("reason", &MonitorResult::reason)
      .def_readonly("events", &MonitorResult::events);
  py::class_<MonitorEngine>(m, "MonitorEngine")
      .def(
          "step",
          [](MonitorEngine& engine, double y_new,
             std::optional<std::vector<double>> x_new) {
            return engine.step(y_new, as_span(x_new));
          },
          py::arg("y_new"), py::arg("x_new") = std::nullopt)
      .def_property_readonly("terminal", &MonitorEngine::terminal)
      .def_property_readonly("terminal_reason", &MonitorEngine::terminal_reason)
      .def_property_readonly("steps_taken", &MonitorEngine::steps_taken)
      .def_property_readonly("fit", &MonitorEngine::fit,
                             py::return_value_policy::reference_internal)
      .def_property_readonly("boundary", &MonitorEngine::boundary,
                             py::return_value_policy::reference_internal)
      .def_property_readonly("config", &MonitorEngine::config,
                             py::return_value_policy::reference_internal);
  m.def("start_monitor", &start_monitor, py::arg("training"), py::arg("config"));
  m.def("run_to_completion", &run_to_completion, py::arg("engine"), py::arg("stream"),
        py::arg("k_star") = std::nullopt);

  py::class_<ChangeSpec>(m, "ChangeSpec")
      .def(py::init<>())
      .def_readwrite("k_star", &ChangeSpec::k_star)
      .def_readwrite("beta_a", &ChangeSpec::beta_a);
  py::class_<DgpSpec>(m, "DgpSpec")
      .def(py::init<>())
      .def_readwrite("beta0", &DgpSpec::beta0)
      .def_readwrite("sigma1", &DgpSpec::sigma1)
      .def_readwrite("sigma2", &DgpSpec::sigma2)
      .def_readwrite("lambda0", &DgpSpec::lambda0)
      .def_readwrite("n", &DgpSpec::n)
      .def_readwrite("burn_in", &DgpSpec::burn_in)
      .def_readwrite("change", &DgpSpec::change)
      .def_readwrite("seed", &DgpSpec::seed)
      .def_readwrite("y0", &DgpSpec::y0);
  py::class_<CaseParams>(m, "CaseParams")
      .def(py::init<>())
      .def_readwrite("beta0", &CaseParams::beta0)
      .def_readwrite("sigma1", &CaseParams::sigma1)
      .def_readwrite("sigma2", &CaseParams::sigma2)
      .def_readwrite("lambda0", &CaseParams::lambda0);
  m.def("case_i", &case_i);
  m.def("case_ii", &case_ii);
  m.def("case_iii", &case_iii);
  m.def("generate_rca", &generate_rca, py::arg("spec"));
  m.def("elog_check", &elog_check, py::arg("beta"), py::arg("sigma1"), py::arg("reps"),
        py::arg("seed"));
  m.def("derive_seed", &derive_seed, py::arg("base"), py::arg("index"));

  py::class_<LabeledConfig>(m, "LabeledConfig")
      .def(py::init<>())
      .def_readwrite("label", &LabeledConfig::label)
      .def_readwrite("config", &LabeledConfig::config);
  m.def("config_label", &config_label, py::arg("config"));
  py::class_<ChangeParams>(m, "ChangeParams")
      .def(py::init<>())
      .def_readwrite("beta_a", &ChangeParams::beta_a)
      .def_readwrite("k_star", &ChangeParams::k_star);
  py::class_<ExperimentTable>(m, "ExperimentTable")
      .def_readonly("m", &ExperimentTable::m)
      .def_readonly("m_star", &ExperimentTable::m_star)
      .def_readonly("reps", &ExperimentTable::reps)
      .def_readonly("seed", &ExperimentTable::seed)
      .def_readonly("labels", &ExperimentTable::labels)
      .def_readonly("rejection", &ExperimentTable::rejection)
      .def_readonly("median_delay", &ExperimentTable::median_delay);
  m.def("size_experiment", &size_experiment, py::arg("params"), py::arg("m"),
        py::arg("m_star"), py::arg("configs"), py::arg("reps"), py::arg("seed"),
        py::arg("n_threads") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("power_experiment", &power_experiment, py::arg("params"), py::arg("change"),
        py::arg("m"), py::arg("m_star"), py::arg("configs"), py::arg("reps"),
        py::arg("seed"), py::arg("n_threads") = 0,
        py::call_guard<py::gil_scoped_release>());

  m.def("load_series_csv", &load_series_csv, py::arg("path"),
        py::arg("log_transform") = false);
  m.def("save_series_csv", &save_series_csv, py::arg("series"), py::arg("path"));
  m.def("events_to_csv", &events_to_csv, py::arg("events"));
  m.def("experiment_to_csv", &experiment_to_csv, py::arg("table"));
  m.def("format_double", &format_double, py::arg("v"));
}
