#include "rcamon/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "rcamon/errors.hpp"

namespace rcamon {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Continue:
      return "continue";
    case Verdict::Alarm:
      return "alarm";
    case Verdict::HorizonReached:
      return "horizon";
  }
  return "unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_double(std::string_view field, double& out) {
  field = trim(field);
  if (field.empty()) return false;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), out);
  return res.ec == std::errc() && res.ptr == field.data() + field.size();
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

}  // namespace

Series load_series_csv(const std::string& path, bool log_transform) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  Series series;
  std::string line;
  std::size_t line_no = 0;
  std::size_t n_fields = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    double v = 0.0;
    if (first_content) {
      first_content = false;
      n_fields = fields.size();
      if (!parse_double(fields[0], v)) continue;  // header row
    }
    if (fields.size() != n_fields) {
      throw ParseError("row has " + std::to_string(fields.size()) + " fields, expected " +
                           std::to_string(n_fields),
                       line_no);
    }
    if (!parse_double(fields[0], v)) {
      throw ParseError("cannot parse observation '" + std::string(trim(fields[0])) + "'",
                       line_no);
    }
    series.values.push_back(v);
    if (n_fields > 1) {
      std::vector<double> x(n_fields - 1);
      for (std::size_t j = 1; j < n_fields; ++j) {
        if (!parse_double(fields[j], x[j - 1])) {
          throw ParseError("cannot parse covariate '" + std::string(trim(fields[j])) + "'",
                           line_no);
        }
      }
      series.covariates.push_back(std::move(x));
    }
  }
  validate_series(series);
  if (log_transform) log1p_transform(series);
  return series;
}

void save_series_csv(const Series& series, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing", 0);
  out << "y";
  for (std::size_t j = 0; j < series.covariate_dim(); ++j) out << ",x" << (j + 1);
  out << "\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << format_double(series.values[i]);
    if (series.has_covariates()) {
      for (double x : series.covariates[i]) out << "," << format_double(x);
    }
    out << "\n";
  }
}

void write_event_header(std::ostream& out) {
  out << "k,detector_value,boundary_value,verdict\n";
}

void write_event_row(std::ostream& out, const MonitorEvent& event) {
  out << event.k << "," << format_double(event.detector_value) << ","
      << format_double(event.boundary_value) << "," << verdict_name(event.verdict)
      << "\n";
}

std::string events_to_csv(const std::vector<MonitorEvent>& events) {
  std::ostringstream out;
  write_event_header(out);
  for (const auto& e : events) write_event_row(out, e);
  return out.str();
}

std::string quantile_records_to_csv(const std::vector<QuantileRecord>& records) {
  std::ostringstream out;
  out << "functional,alpha,psi,horizon_param,n_grid,reps,seed,quantile\n";
  for (const auto& r : records) {
    out << r.functional << "," << format_double(r.alpha) << "," << format_double(r.psi)
        << "," << format_double(r.horizon_param) << "," << r.n_grid << "," << r.reps
        << "," << r.seed << "," << format_double(r.quantile) << "\n";
  }
  return out.str();
}

std::string experiment_to_csv(const ExperimentTable& table) {
  std::ostringstream out;
  const bool power = !table.median_delay.empty();
  out << "m,m_star";
  for (const auto& label : table.labels) {
    out << "," << label << (power ? "_rejection" : "");
    if (power) out << "," << label << "_delay";
  }
  out << "\n" << table.m << "," << table.m_star;
  for (std::size_t j = 0; j < table.labels.size(); ++j) {
    out << "," << format_double(table.rejection[j]);
    if (power) out << "," << format_double(table.median_delay[j]);
  }
  out << "\n";
  return out.str();
}

}  // namespace rcamon
