#include "rcamon/limit_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rcamon/errors.hpp"
#include "rcamon/parallel.hpp"
#include "rcamon/rng.hpp"

namespace rcamon {

namespace {

void validate_plan(const SimPlan& plan) {
  if (plan.n_grid < 100) throw ConfigError("SimPlan.n_grid must be >= 100");
  if (plan.reps < 100) throw ConfigError("SimPlan.reps must be >= 100");
  if (!(plan.truncation_x > 0.0)) throw ConfigError("SimPlan.truncation_x must be > 0");
}

void validate_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must be in (0,1)");
}

}  // namespace

std::vector<double> simulate_wiener_path(std::size_t n_grid, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_grid));
  std::vector<double> path(n_grid + 1);
  path[0] = 0.0;
  for (std::size_t j = 1; j <= n_grid; ++j) path[j] = path[j - 1] + normal(rng) * scale;
  return path;
}

double order_statistic_quantile(std::vector<double> values, double alpha) {
  validate_alpha(alpha);
  if (values.empty()) throw ConfigError("quantile of an empty sample");
  const std::size_t n = values.size();
  std::size_t idx = static_cast<std::size_t>(
      std::ceil((1.0 - alpha) * static_cast<double>(n)));
  if (idx < 1) idx = 1;
  if (idx > n) idx = n;
  std::sort(values.begin(), values.end());
  return values[idx - 1];
}

double critval_cusum_weighted(double alpha, double psi, double m_star_frac,
                              const SimPlan& plan, unsigned n_threads) {
  validate_plan(plan);
  validate_alpha(alpha);
  if (!(psi >= 0.0 && psi < 0.5)) throw DomainError("psi must be in [0, 1/2)");
  if (!(m_star_frac > 0.0 && m_star_frac <= 1.0)) {
    throw DomainError("m_star_frac must be in (0, 1]");
  }
  const std::size_t n = plan.n_grid;
  std::size_t j_max = static_cast<std::size_t>(
      std::ceil(m_star_frac * static_cast<double>(n)));
  if (j_max < 1) j_max = 1;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));

  std::vector<double> inv_weight(j_max + 1, 1.0);
  if (psi > 0.0) {
    for (std::size_t j = 1; j <= j_max; ++j) {
      inv_weight[j] = std::pow(static_cast<double>(j) / static_cast<double>(n), -psi);
    }
  }

  std::vector<double> maxima(plan.reps);
  parallel_for(plan.reps, n_threads, [&](std::size_t rep) {
    auto rng = make_rng(derive_seed(plan.seed, rep));
    std::normal_distribution<double> normal(0.0, 1.0);
    double w = 0.0;
    double best = 0.0;
    for (std::size_t j = 1; j <= j_max; ++j) {
      w += normal(rng) * scale;
      const double v = std::abs(w) * inv_weight[j];
      if (v > best) best = v;
    }
    maxima[rep] = best;
  });
  return order_statistic_quantile(std::move(maxima), alpha);
}

double critval_page(double alpha, double psi, double m0, const SimPlan& plan,
                    unsigned n_threads) {
  validate_plan(plan);
  validate_alpha(alpha);
  if (!(psi >= 0.0 && psi < 0.5)) throw DomainError("psi must be in [0, 1/2)");
  if (!(m0 > 0.0)) throw DomainError("m0 must be positive");
  const double x_max = std::min(m0, plan.truncation_x);
  const std::size_t n = plan.n_grid;

  // Unit-rate grid on (0, min(x_max, 1)], then a coarser stretch to x_max.
  std::size_t n1 = n;
  double dx1 = 1.0 / static_cast<double>(n);
  if (x_max < 1.0) {
    n1 = static_cast<std::size_t>(std::ceil(x_max * static_cast<double>(n)));
    if (n1 < 1) n1 = 1;
  }
  std::size_t n2 = 0;
  double dx2 = 0.0;
  if (x_max > 1.0) {
    n2 = n;
    dx2 = (x_max - 1.0) / static_cast<double>(n);
  }

  const std::size_t total = n1 + n2;
  std::vector<double> inv_weight(total), sq_dx(total), dx(total);
  for (std::size_t j = 0; j < total; ++j) {
    const bool fine = j < n1;
    const double step = fine ? dx1 : dx2;
    const double x = fine ? dx1 * static_cast<double>(j + 1)
                          : 1.0 + dx2 * static_cast<double>(j + 1 - n1);
    dx[j] = step;
    sq_dx[j] = std::sqrt(step);
    inv_weight[j] = 1.0 / ((1.0 + x) * std::pow(x / (1.0 + x), psi));
  }

  std::vector<double> maxima(plan.reps);
  parallel_for(plan.reps, n_threads, [&](std::size_t rep) {
    auto rng = make_rng(derive_seed(plan.seed, rep));
    std::normal_distribution<double> normal(0.0, 1.0);
    const double w1 = normal(rng);  // W1(1), drawn before the W2 increments
    double d = 0.0;
    double run_min = 0.0, run_max = 0.0;
    double best = 0.0;
    for (std::size_t j = 0; j < total; ++j) {
      d += normal(rng) * sq_dx[j] - w1 * dx[j];
      if (d < run_min) run_min = d;
      if (d > run_max) run_max = d;
      const double v = std::max(d - run_min, run_max - d) * inv_weight[j];
      if (v > best) best = v;
    }
    maxima[rep] = best;
  });
  return order_statistic_quantile(std::move(maxima), alpha);
}

double critval_page_short(double alpha, double psi, const SimPlan& plan,
                          unsigned n_threads) {
  validate_plan(plan);
  validate_alpha(alpha);
  if (!(psi >= 0.0 && psi < 0.5)) throw DomainError("psi must be in [0, 1/2)");
  const std::size_t n = plan.n_grid;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));

  std::vector<double> inv_weight(n + 1, 1.0);
  if (psi > 0.0) {
    for (std::size_t j = 1; j <= n; ++j) {
      inv_weight[j] = std::pow(static_cast<double>(j) / static_cast<double>(n), -psi);
    }
  }

  std::vector<double> maxima(plan.reps);
  parallel_for(plan.reps, n_threads, [&](std::size_t rep) {
    auto rng = make_rng(derive_seed(plan.seed, rep));
    std::normal_distribution<double> normal(0.0, 1.0);
    double w = 0.0;
    double run_min = 0.0, run_max = 0.0;
    double best = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      w += normal(rng) * scale;
      if (w < run_min) run_min = w;
      if (w > run_max) run_max = w;
      const double v = std::max(w - run_min, run_max - w) * inv_weight[j];
      if (v > best) best = v;
    }
    maxima[rep] = best;
  });
  return order_statistic_quantile(std::move(maxima), alpha);
}

double sup_abs_wiener_cdf(double x) {
  if (!(x > 0.0)) return 0.0;
  const double pi = M_PI;
  double sum = 0.0;
  for (int n = 0;; ++n) {
    const double odd = 2.0 * n + 1.0;
    const double term = (n % 2 == 0 ? 1.0 : -1.0) / odd *
                        std::exp(-odd * odd * pi * pi / (8.0 * x * x));
    sum += term;
    if (std::abs(term) < 1e-14) break;
  }
  const double p = 4.0 / pi * sum;
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace rcamon
