#include "rcamon/wls.hpp"

#include <cmath>

#include "rcamon/errors.hpp"
#include "rcamon/linalg.hpp"

namespace rcamon {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw NonFinite(what);
}

// Shared accumulation for both fits; p = 0 reduces to the plain WLS ratio
// through the same summation order, so the two entry points agree exactly.
WlsFit fit_core(const std::vector<double>& y,
                const std::vector<std::vector<double>>* xs, std::size_t p) {
  const std::size_t m = y.size();
  const std::size_t d = p + 1;
  if (m < p + 3) throw DegenerateTraining("training window shorter than p + 3");

  std::vector<double> g(d * d, 0.0);
  std::vector<double> rhs(d, 0.0);
  std::vector<double> z(d);
  for (std::size_t i = 1; i < m; ++i) {
    const double yp = y[i - 1];
    const double w = 1.0 / (1.0 + yp * yp);
    z[0] = yp;
    for (std::size_t j = 0; j < p; ++j) z[1 + j] = (*xs)[i][j];
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) g[r * d + c] += w * z[r] * z[c];
    }
    for (std::size_t r = 0; r < d; ++r) rhs[r] += w * z[r] * y[i];
  }
  for (double v : g) require_finite(v, "overflow in the weighted Gram matrix");
  for (double v : rhs) require_finite(v, "overflow in the weighted right-hand side");
  if (!(g[0] > 0.0)) throw DegenerateTraining("zero weighted denominator");

  const std::vector<double> coef = solve_symmetric(g, rhs, d);

  WlsFit fit;
  fit.m = m;
  fit.beta_hat = coef[0];
  require_finite(fit.beta_hat, "non-finite beta estimate");
  if (p > 0) fit.lambda_hat = std::vector<double>(coef.begin() + 1, coef.end());

  double s2 = 0.0;
  for (std::size_t i = 1; i < m; ++i) {
    const double yp = y[i - 1];
    double e = y[i] - fit.beta_hat * yp;
    for (std::size_t j = 0; j < p; ++j) e -= coef[1 + j] * (*xs)[i][j];
    const double r = e * yp / (1.0 + yp * yp);
    s2 += r * r;
  }
  fit.s2_hat = s2 / static_cast<double>(m);
  require_finite(fit.s2_hat, "non-finite LRV estimate");
  return fit;
}

}  // namespace

WlsFit fit_wls(const Series& training) {
  validate_series(training);
  if (training.has_covariates()) {
    throw ArityMismatch("fit_wls takes a series without covariates");
  }
  return fit_core(training.values, nullptr, 0);
}

WlsFit fit_wls_covariates(const Series& training) {
  validate_series(training);
  if (!training.has_covariates()) {
    throw ArityMismatch("fit_wls_covariates requires covariates");
  }
  WlsFit fit = fit_core(training.values, &training.covariates, training.covariate_dim());
  const auto scales = estimate_covariate_scales(training, fit);
  fit.sx2_hat = scales.first;
  fit.sxd2_hat = scales.second;
  return fit;
}

std::pair<double, double> estimate_covariate_scales(const Series& training,
                                                    const WlsFit& fit) {
  if (!fit.has_covariates()) {
    throw ArityMismatch("fit carries no covariate coefficients");
  }
  const std::size_t m = fit.m;
  const std::size_t p = fit.covariate_dim();
  const std::size_t d = p + 1;
  if (training.size() < m || training.covariate_dim() != p) {
    throw ArityMismatch("series does not match the fitted window");
  }
  const auto& y = training.values;
  const auto& xs = training.covariates;
  const auto& lambda = *fit.lambda_hat;

  std::vector<double> qmat(d * d, 0.0);
  std::vector<double> cmat(d * d, 0.0);
  std::vector<double> avec(d, 0.0);
  std::vector<double> z(d), eta(d);
  double sx2sq = 0.0;
  for (std::size_t i = 1; i < m; ++i) {
    const double yp = y[i - 1];
    const double w = 1.0 / (1.0 + yp * yp);
    const double sw = std::sqrt(w);
    double e = y[i] - fit.beta_hat * yp;
    for (std::size_t j = 0; j < p; ++j) e -= lambda[j] * xs[i][j];

    z[0] = yp * sw;
    eta[0] = e * yp * w;
    avec[0] += yp * yp * w;
    for (std::size_t j = 0; j < p; ++j) {
      z[1 + j] = xs[i][j] * sw;
      eta[1 + j] = e * xs[i][j] * w;
      avec[1 + j] += xs[i][j] * yp * w;
    }
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        qmat[r * d + c] += z[r] * z[c];
        cmat[r * d + c] += eta[r] * eta[c];
      }
    }
    sx2sq += eta[0] * eta[0];
  }
  const double inv = 1.0 / static_cast<double>(m - 1);
  for (auto& v : qmat) v *= inv;
  for (auto& v : cmat) v *= inv;
  for (auto& v : avec) v *= inv;
  sx2sq /= static_cast<double>(m);

  // sx1sq = a' Q C Q a as two matvecs and a dot product.
  std::vector<double> qa(d, 0.0), cqa(d, 0.0);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) qa[r] += qmat[r * d + c] * avec[c];
  }
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) cqa[r] += cmat[r * d + c] * qa[c];
  }
  double sx1sq = 0.0;
  for (std::size_t r = 0; r < d; ++r) sx1sq += qa[r] * cqa[r];

  if (!std::isfinite(sx1sq) || !std::isfinite(sx2sq)) {
    throw NonFinite("non-finite covariate scale");
  }
  if (!(sx1sq > 0.0) || !(sx2sq > 0.0)) {
    throw DegenerateScales("nonpositive covariate scale estimate");
  }
  const double sx2_hat = sx2sq / std::sqrt(sx1sq);
  const double sxd2_hat = sx2sq / sx1sq;
  return {sx2_hat, sxd2_hat};
}

}  // namespace rcamon
