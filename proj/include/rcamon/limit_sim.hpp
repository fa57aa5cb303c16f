#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace rcamon {

// Monte Carlo settings for the limiting Wiener functionals.
struct SimPlan {
  std::size_t n_grid = 10000;
  std::size_t reps = 100000;
  std::uint64_t seed = 0;
  double truncation_x = 100.0;
};

// One row of an exportable quantile table.
struct QuantileRecord {
  std::string functional;
  double alpha = 0.0;
  double psi = 0.0;
  double horizon_param = 0.0;
  std::size_t n_grid = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  double quantile = 0.0;
};

// Random-walk approximation of W on [0, 1]: path[0] = 0,
// path[j] = path[j-1] + g_j / sqrt(n_grid).
std::vector<double> simulate_wiener_path(std::size_t n_grid, std::mt19937_64& rng);

// Order statistic at 1-based index ceil((1-alpha) * n) of the sorted values.
double order_statistic_quantile(std::vector<double> values, double alpha);

// (1-alpha) quantile of max_{1<=j<=ceil(frac n)} |W(j/n)| / (j/n)^psi,
// the weighted-CUSUM limit; frac = m_* (1 for open-ended monitoring).
double critval_cusum_weighted(double alpha, double psi, double m_star_frac,
                              const SimPlan& plan, unsigned n_threads = 0);

// (1-alpha) quantile of the Page limit
//   sup_x sup_{0<=t<=x} |(W2(x)-W2(t)) - (x-t) W1(1)| / ((1+x)(x/(1+x))^psi)
// over x <= m0; pass m0 = infinity for the open-ended functional, which is
// truncated at plan.truncation_x.
double critval_page(double alpha, double psi, double m0, const SimPlan& plan,
                    unsigned n_threads = 0);

// (1-alpha) quantile of the short-horizon Page limit
//   sup_{0<x<=1} sup_{0<=t<=x} |W(x) - W(t)| / x^psi.
double critval_page_short(double alpha, double psi, const SimPlan& plan,
                          unsigned n_threads = 0);

// Analytic P(sup_{[0,1]} |W| <= x) via the alternating series, truncated when
// terms drop below 1e-14; the validation oracle for the psi = 0 quantiles.
double sup_abs_wiener_cdf(double x);

}  // namespace rcamon
