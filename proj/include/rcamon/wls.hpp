#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rcamon/series.hpp"

namespace rcamon {

// Training-window estimates. lambda_hat and the covariate scales are present
// iff the fit used covariates.
struct WlsFit {
  double beta_hat = 0.0;
  std::optional<std::vector<double>> lambda_hat;
  double s2_hat = 0.0;
  std::size_t m = 0;
  std::optional<double> sx2_hat;
  std::optional<double> sxd2_hat;

  bool has_covariates() const { return lambda_hat.has_value(); }
  std::size_t covariate_dim() const { return lambda_hat ? lambda_hat->size() : 0; }
};

// WLS fit of y_i = beta y_{i-1} + noise with weights 1/(1+y_{i-1}^2):
//   beta_hat = (sum y_{i-1}^2 w_i)^{-1} sum y_i y_{i-1} w_i,   i = 2..m,
// and the long-run variance
//   s2_hat = (1/m) sum ((y_i - beta_hat y_{i-1}) y_{i-1} w_i)^2.
WlsFit fit_wls(const Series& training);

// WLS fit of y_i = beta y_{i-1} + lambda' x_i + noise: solves the weighted
// normal equations with regressor rows (y_{i-1}, x_i') and the same weights,
// then the LRV from the full residuals and the covariate boundary scales.
WlsFit fit_wls_covariates(const Series& training);

// Plug-in estimates (sx2_hat, sxd2_hat) of the covariate boundary constants:
// sample means of z z', eta eta' and the weighted score vector a over the
// training window, combined as
//   sx1sq = a' Q C Q a,   sx2sq = (1/m) sum (first coord of eta_i)^2,
//   sxd2_hat = sx2sq / sx1sq,   sx2_hat = sx2sq / sqrt(sx1sq).
std::pair<double, double> estimate_covariate_scales(const Series& training,
                                                    const WlsFit& fit);

}  // namespace rcamon
