#include <cmath>
#include <vector>

#include "doctest.h"
#include "rcamon/dgp.hpp"
#include "rcamon/errors.hpp"
#include "rcamon/rng.hpp"
#include "rcamon/series.hpp"
#include "rcamon/wls.hpp"

using namespace rcamon;

namespace {

Series make_series(std::vector<double> values) {
  Series s;
  s.values = std::move(values);
  return s;
}

double sample_variance(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  return var / static_cast<double>(v.size() - 1);
}

}  // namespace

TEST_CASE("noiseless AR recovers beta exactly") {
  const Series s = make_series({1, 0.5, 0.25, 0.125, 0.0625});
  const WlsFit fit = fit_wls(s);
  CHECK(fit.beta_hat == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(fit.s2_hat == doctest::Approx(0.0).scale(1).epsilon(1e-14));
  CHECK(fit.m == 5);
  CHECK_FALSE(fit.has_covariates());
}

TEST_CASE("noiseless AR recovery across beta values and window lengths") {
  for (double beta : {0.5, 1.0, 1.05, -0.8}) {
    for (std::size_t m : {3u, 7u, 40u}) {
      Series s;
      double y = 1.0;
      for (std::size_t i = 0; i < m; ++i) {
        s.values.push_back(y);
        y *= beta;
      }
      const WlsFit fit = fit_wls(s);
      CHECK(std::abs(fit.beta_hat - beta) < 1e-12);
      CHECK(std::abs(fit.s2_hat) < 1e-24);
    }
  }
}

TEST_CASE("hand-evaluated fit on 1,2,1,3") {
  const WlsFit fit = fit_wls(make_series({1, 2, 1, 3}));
  // num = 2*1/2 + 1*2/5 + 3*1/2 = 2.9, den = 1/2 + 4/5 + 1/2 = 1.8
  CHECK(fit.beta_hat == doctest::Approx(2.9 / 1.8).epsilon(1e-13));
}

TEST_CASE("degenerate and invalid training windows") {
  CHECK_THROWS_AS((void)fit_wls(make_series({0, 0, 0, 0})), DegenerateTraining);
  CHECK_THROWS_AS((void)fit_wls(make_series({1, 2})), DegenerateTraining);
  Series with_x = make_series({1, 2, 3, 4});
  with_x.covariates = {{1}, {1}, {1}, {1}};
  CHECK_THROWS_AS((void)fit_wls(with_x), ArityMismatch);
  Series nan_series = make_series({1, 2, std::nan(""), 4});
  CHECK_THROWS_AS((void)fit_wls(nan_series), NonFinite);
}

TEST_CASE("fit is independent of index position within a longer record") {
  DgpSpec spec;
  spec.beta0 = 0.5;
  spec.sigma1 = 0.1;
  spec.sigma2 = 0.7;
  spec.n = 60;
  spec.burn_in = 50;
  spec.seed = 99;
  const Series full = generate_rca(spec);
  const Series windowed = head(tail(full, 17), 30);
  Series direct;
  direct.values.assign(full.values.begin() + 17, full.values.begin() + 47);
  const WlsFit a = fit_wls(windowed);
  const WlsFit b = fit_wls(direct);
  CHECK(a.beta_hat == b.beta_hat);
  CHECK(a.s2_hat == b.s2_hat);
}

TEST_CASE("sign flip leaves beta and the LRV unchanged") {
  DgpSpec spec;
  spec.beta0 = 0.5;
  spec.sigma1 = 0.1;
  spec.sigma2 = 0.7;
  spec.n = 200;
  spec.seed = 5;
  const Series s = generate_rca(spec);
  Series flipped = s;
  for (double& v : flipped.values) v = -v;
  const WlsFit a = fit_wls(s);
  const WlsFit b = fit_wls(flipped);
  CHECK(a.beta_hat == b.beta_hat);
  CHECK(a.s2_hat == b.s2_hat);
}

TEST_CASE("Case I consistency: beta_hat near 0.5 at m = 2000") {
  // The estimator's sampling SD at m = 2000 is about 0.023, so individual
  // draws can sit 2-3 SDs out; the mean over 50 seeds pins the center.
  CaseParams params = case_i();
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    DgpSpec spec;
    spec.beta0 = params.beta0;
    spec.sigma1 = params.sigma1;
    spec.sigma2 = params.sigma2;
    spec.n = 2000;
    spec.seed = derive_seed(1234, seed);
    const WlsFit fit = fit_wls(generate_rca(spec));
    CHECK(std::abs(fit.beta_hat - 0.5) < 0.12);
    sum += fit.beta_hat;
  }
  CHECK(std::abs(sum / 50.0 - 0.5) < 0.01);
}

TEST_CASE("LRV spread shrinks with the window (variance ratio < 0.25)") {
  CaseParams params = case_i();
  std::vector<double> s2_small, s2_large;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    DgpSpec spec;
    spec.beta0 = params.beta0;
    spec.sigma1 = params.sigma1;
    spec.sigma2 = params.sigma2;
    spec.seed = derive_seed(777, seed);
    spec.n = 500;
    s2_small.push_back(fit_wls(generate_rca(spec)).s2_hat);
    spec.n = 5000;
    s2_large.push_back(fit_wls(generate_rca(spec)).s2_hat);
  }
  CHECK(sample_variance(s2_large) < 0.25 * sample_variance(s2_small));
}

TEST_CASE("noiseless covariate model recovers both coefficients") {
  Series s;
  s.values.push_back(1.0);
  s.covariates.push_back({0.0});
  for (std::size_t i = 1; i < 30; ++i) {
    const double x = std::sin(static_cast<double>(i));
    s.covariates.push_back({x});
    s.values.push_back(0.5 * s.values[i - 1] + 1.0 * x);
  }
  const WlsFit fit = fit_wls_covariates(s);
  CHECK(std::abs(fit.beta_hat - 0.5) < 1e-10);
  CHECK(std::abs((*fit.lambda_hat)[0] - 1.0) < 1e-10);
  CHECK(fit.s2_hat < 1e-20);
}

TEST_CASE("hand-built 2x2 normal equations, p = 1, m = 4") {
  Series s;
  s.values = {1.0, 2.0, 1.0, 3.0};
  s.covariates = {{0.5}, {1.0}, {-1.0}, {2.0}};
  const WlsFit fit = fit_wls_covariates(s);

  // Independent solve of the same 2x2 system.
  double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
  for (std::size_t i = 1; i < 4; ++i) {
    const double yp = s.values[i - 1];
    const double x = s.covariates[i][0];
    const double w = 1.0 / (1.0 + yp * yp);
    a11 += w * yp * yp;
    a12 += w * yp * x;
    a22 += w * x * x;
    b1 += w * yp * s.values[i];
    b2 += w * x * s.values[i];
  }
  const double det = a11 * a22 - a12 * a12;
  const double beta = (a22 * b1 - a12 * b2) / det;
  const double lambda = (a11 * b2 - a12 * b1) / det;
  CHECK(fit.beta_hat == doctest::Approx(beta).epsilon(1e-12));
  CHECK((*fit.lambda_hat)[0] == doctest::Approx(lambda).epsilon(1e-12));
}

TEST_CASE("constant-zero covariate column is singular") {
  Series s;
  s.values = {1.0, 2.0, 1.0, 3.0, 2.0};
  s.covariates = {{0.0}, {0.0}, {0.0}, {0.0}, {0.0}};
  CHECK_THROWS_AS((void)fit_wls_covariates(s), SingularGram);
}

TEST_CASE("noise covariate with true lambda = 0 estimates near zero") {
  double lambda_sum = 0.0, beta_sum = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    DgpSpec spec;
    spec.beta0 = 0.5;
    spec.sigma1 = 0.1;
    spec.sigma2 = std::sqrt(0.5);
    spec.n = 2000;
    spec.seed = derive_seed(4242, seed);
    Series s = generate_rca(spec);
    auto rng = make_rng(derive_seed(4243, seed));
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 0; i < s.size(); ++i) s.covariates.push_back({normal(rng)});
    const WlsFit fit = fit_wls_covariates(s);
    CHECK(std::abs((*fit.lambda_hat)[0]) < 0.12);
    CHECK(std::abs(fit.beta_hat - 0.5) < 0.12);
    lambda_sum += (*fit.lambda_hat)[0];
    beta_sum += fit.beta_hat;
  }
  CHECK(std::abs(lambda_sum / 50.0) < 0.01);
  CHECK(std::abs(beta_sum / 50.0 - 0.5) < 0.012);
}

TEST_CASE("covariate scales: hand window of length 5, p = 1") {
  Series s;
  s.values = {1.0, 2.0, 1.0, 3.0, 2.0};
  s.covariates = {{0.3}, {1.1}, {-0.7}, {2.2}, {0.9}};
  const WlsFit fit = fit_wls_covariates(s);

  // Independent re-implementation of the sample means.
  const std::size_t m = 5, d = 2;
  double q[4] = {0, 0, 0, 0}, c[4] = {0, 0, 0, 0}, a[2] = {0, 0};
  double sx2sq = 0.0;
  for (std::size_t i = 1; i < m; ++i) {
    const double yp = s.values[i - 1];
    const double x = s.covariates[i][0];
    const double w = 1.0 / (1.0 + yp * yp);
    const double e = s.values[i] - fit.beta_hat * yp - (*fit.lambda_hat)[0] * x;
    const double z[2] = {yp * std::sqrt(w), x * std::sqrt(w)};
    const double eta[2] = {e * yp * w, e * x * w};
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t cc = 0; cc < d; ++cc) {
        q[r * d + cc] += z[r] * z[cc];
        c[r * d + cc] += eta[r] * eta[cc];
      }
    }
    a[0] += yp * yp * w;
    a[1] += x * yp * w;
    sx2sq += eta[0] * eta[0];
  }
  for (auto& v : q) v /= 4.0;
  for (auto& v : c) v /= 4.0;
  for (auto& v : a) v /= 4.0;
  sx2sq /= 5.0;
  const double qa[2] = {q[0] * a[0] + q[1] * a[1], q[2] * a[0] + q[3] * a[1]};
  const double cqa[2] = {c[0] * qa[0] + c[1] * qa[1], c[2] * qa[0] + c[3] * qa[1]};
  const double sx1sq = qa[0] * cqa[0] + qa[1] * cqa[1];

  CHECK(*fit.sx2_hat == doctest::Approx(sx2sq / std::sqrt(sx1sq)).epsilon(1e-12));
  CHECK(*fit.sxd2_hat == doctest::Approx(sx2sq / sx1sq).epsilon(1e-12));
  CHECK(*fit.sx2_hat > 0.0);
  CHECK(*fit.sxd2_hat > 0.0);
}

TEST_CASE("covariate scales are stable over seeds (CV < 10%)") {
  std::vector<double> sxd2;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    DgpSpec spec;
    spec.beta0 = 0.5;
    spec.sigma1 = 0.1;
    spec.sigma2 = std::sqrt(0.5);
    spec.lambda0 = 1.0;
    spec.n = 2000;
    spec.seed = derive_seed(31415, seed);
    const WlsFit fit = fit_wls_covariates(generate_rca(spec));
    REQUIRE(fit.sxd2_hat.has_value());
    CHECK(*fit.sxd2_hat > 0.0);
    sxd2.push_back(*fit.sxd2_hat);
  }
  double mean = 0.0;
  for (double v : sxd2) mean += v;
  mean /= static_cast<double>(sxd2.size());
  CHECK(std::sqrt(sample_variance(sxd2)) / mean < 0.10);
}
