#include "rcamon/detector.hpp"

#include <algorithm>
#include <cmath>

#include "rcamon/errors.hpp"

namespace rcamon {

double residual(double y_new, double y_prev, const WlsFit& fit,
                std::optional<std::span<const double>> x_new) {
  double e = y_new - fit.beta_hat * y_prev;
  if (fit.has_covariates()) {
    if (!x_new) throw ArityMismatch("fit has covariates but no x_new given");
    const auto& lambda = *fit.lambda_hat;
    if (x_new->size() != lambda.size()) {
      throw ArityMismatch("covariate vector has wrong dimension");
    }
    for (std::size_t j = 0; j < lambda.size(); ++j) e -= lambda[j] * (*x_new)[j];
  } else if (x_new && !x_new->empty()) {
    throw ArityMismatch("fit has no covariates but x_new given");
  }
  const double r = e * y_prev / (1.0 + y_prev * y_prev);
  if (!std::isfinite(r)) throw NonFinite("non-finite residual");
  return r;
}

double cusum_update(DetectorState& state, double r) {
  if (!std::isfinite(r)) throw NonFinite("non-finite residual");
  state.prefix_sum += r;
  state.k += 1;
  return std::abs(state.prefix_sum);
}

double page_update(DetectorState& state, double r) {
  if (!std::isfinite(r)) throw NonFinite("non-finite residual");
  const double s = state.prefix_sum + r;
  const double z = std::max(s - state.run_min, state.run_max - s);
  state.prefix_sum = s;
  state.run_min = std::min(state.run_min, s);
  state.run_max = std::max(state.run_max, s);
  state.k += 1;
  return z;
}

std::vector<double> page_bruteforce(const std::vector<double>& residuals) {
  const std::size_t n = residuals.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + residuals[i];
  std::vector<double> out(n);
  for (std::size_t k = 1; k <= n; ++k) {
    double best = 0.0;
    for (std::size_t l = 1; l <= k; ++l) {
      best = std::max(best, std::abs(prefix[k] - prefix[l - 1]));
    }
    out[k - 1] = best;
  }
  return out;
}

}  // namespace rcamon
