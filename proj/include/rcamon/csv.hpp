#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "rcamon/dgp.hpp"
#include "rcamon/limit_sim.hpp"
#include "rcamon/monitor.hpp"
#include "rcamon/series.hpp"

namespace rcamon {

// Shortest decimal string that round-trips the double exactly.
std::string format_double(double v);

const char* verdict_name(Verdict v);

// First column observations, any further columns covariates; a single
// non-numeric first row is treated as a header. log_transform applies
// log(1 + v) to the observation column.
Series load_series_csv(const std::string& path, bool log_transform = false);

void save_series_csv(const Series& series, const std::string& path);

// Event rows "k,detector_value,boundary_value,verdict".
void write_event_header(std::ostream& out);
void write_event_row(std::ostream& out, const MonitorEvent& event);
std::string events_to_csv(const std::vector<MonitorEvent>& events);

// Quantile table rows
// "functional,alpha,psi,horizon_param,n_grid,reps,seed,quantile".
std::string quantile_records_to_csv(const std::vector<QuantileRecord>& records);

// One row per experiment: "m,m_star" then a rejection column per label, and
// for power tables a delay column per label as well.
std::string experiment_to_csv(const ExperimentTable& table);

}  // namespace rcamon
