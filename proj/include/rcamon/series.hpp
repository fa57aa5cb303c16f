#pragma once

#include <cstddef>
#include <vector>

namespace rcamon {

// Ordered observations y_1..y_n with optional aligned covariate vectors.
// covariates is either empty or has one entry per observation, all of the
// same dimension p >= 1.
struct Series {
  std::vector<double> values;
  std::vector<std::vector<double>> covariates;

  bool has_covariates() const { return !covariates.empty(); }
  std::size_t size() const { return values.size(); }
  std::size_t covariate_dim() const {
    return covariates.empty() ? 0 : covariates.front().size();
  }
};

// Throws NonFinite / ArityMismatch if the invariants fail.
void validate_series(const Series& s);

// Sub-series of the first m observations (with covariates if present).
Series head(const Series& s, std::size_t m);

// Sub-series of everything after the first m observations.
Series tail(const Series& s, std::size_t m);

// In-place log(1 + v) on the observation column; DomainError on v <= -1.
void log1p_transform(Series& s);

// In-place first differences of the covariate columns; the first row of the
// whole series is dropped so y_i stays aligned with x_i - x_{i-1}.
void diff_covariates(Series& s);

}  // namespace rcamon
