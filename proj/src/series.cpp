#include "rcamon/series.hpp"

#include <cmath>

#include "rcamon/errors.hpp"

namespace rcamon {

void validate_series(const Series& s) {
  for (double v : s.values) {
    if (!std::isfinite(v)) throw NonFinite("series contains a non-finite observation");
  }
  if (s.covariates.empty()) return;
  if (s.covariates.size() != s.values.size()) {
    throw ArityMismatch("covariate rows do not align with observations");
  }
  const std::size_t p = s.covariates.front().size();
  if (p == 0) throw ArityMismatch("covariate dimension must be >= 1");
  for (const auto& x : s.covariates) {
    if (x.size() != p) throw ArityMismatch("covariate rows have mixed dimensions");
    for (double v : x) {
      if (!std::isfinite(v)) throw NonFinite("series contains a non-finite covariate");
    }
  }
}

Series head(const Series& s, std::size_t m) {
  Series out;
  if (m > s.size()) m = s.size();
  out.values.assign(s.values.begin(), s.values.begin() + static_cast<std::ptrdiff_t>(m));
  if (s.has_covariates()) {
    out.covariates.assign(s.covariates.begin(),
                          s.covariates.begin() + static_cast<std::ptrdiff_t>(m));
  }
  return out;
}

Series tail(const Series& s, std::size_t m) {
  Series out;
  if (m > s.size()) m = s.size();
  out.values.assign(s.values.begin() + static_cast<std::ptrdiff_t>(m), s.values.end());
  if (s.has_covariates()) {
    out.covariates.assign(s.covariates.begin() + static_cast<std::ptrdiff_t>(m),
                          s.covariates.end());
  }
  return out;
}

void log1p_transform(Series& s) {
  for (double& v : s.values) {
    if (v <= -1.0) throw DomainError("log(1+v) undefined for v <= -1");
    v = std::log1p(v);
  }
}

void diff_covariates(Series& s) {
  if (!s.has_covariates()) throw DomainError("series has no covariates to difference");
  const std::size_t n = s.covariates.size();
  if (n < 2) throw DomainError("differencing needs at least two rows");
  for (std::size_t i = n - 1; i >= 1; --i) {
    auto& xi = s.covariates[i];
    const auto& xp = s.covariates[i - 1];
    for (std::size_t j = 0; j < xi.size(); ++j) xi[j] -= xp[j];
  }
  s.values.erase(s.values.begin());
  s.covariates.erase(s.covariates.begin());
}

}  // namespace rcamon
