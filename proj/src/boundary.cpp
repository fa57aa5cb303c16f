#include "rcamon/boundary.hpp"

#include <cmath>

#include "rcamon/errors.hpp"

namespace rcamon {

double boundary_value(const BoundarySpec& spec, std::size_t k) {
  if (k < 1) throw DomainError("boundary defined for k >= 1");
  const bool closed = spec.scheme == BoundaryScheme::ClosedLong ||
                      spec.scheme == BoundaryScheme::ClosedShort ||
                      (spec.scheme == BoundaryScheme::Covariate && spec.m_star);
  if (closed) {
    if (!spec.m_star) throw ConfigError("closed scheme without m_star");
    if (k > *spec.m_star) throw OutOfHorizon("step beyond the monitoring horizon");
  }
  const double kd = static_cast<double>(k);
  const double md = static_cast<double>(spec.m);
  double g = 0.0;
  switch (spec.scheme) {
    case BoundaryScheme::OpenEnded:
    case BoundaryScheme::ClosedLong:
      g = spec.c * spec.s * std::sqrt(md) * (1.0 + kd / md) *
          std::pow(kd / (md + kd), spec.psi);
      break;
    case BoundaryScheme::ClosedShort: {
      const double ms = static_cast<double>(*spec.m_star);
      g = spec.c * spec.s * std::pow(ms, 0.5 - spec.psi) * std::pow(kd, spec.psi);
      break;
    }
    case BoundaryScheme::Covariate: {
      if (!spec.sx2 || !spec.sxd2) throw ConfigError("covariate boundary without scales");
      const double dil = *spec.sxd2 * md;
      g = spec.c * *spec.sx2 * std::sqrt(md) * (1.0 + kd / dil) *
          std::pow(kd / (dil + kd), spec.psi);
      break;
    }
  }
  if (!std::isfinite(g)) throw NonFinite("non-finite boundary value");
  return g;
}

std::pair<double, double> de_norming(double x) {
  if (!(x > 1.0)) throw DomainError("de_norming requires x > 1");
  const double lx = std::log(x);
  const double gamma = std::sqrt(2.0 * lx);
  const double delta = 2.0 * lx + 0.5 * std::log(lx) - 0.5 * std::log(M_PI);
  return {gamma, delta};
}

double critval_de(double alpha, std::size_t m_star) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must be in (0,1)");
  if (m_star < 16) throw DomainError("critval_de requires m* >= 16");
  const double x_alpha = -std::log(-std::log(1.0 - alpha));
  const auto [gamma, delta] = de_norming(std::log(static_cast<double>(m_star)));
  return (x_alpha + delta) / gamma;
}

namespace {

double vostrikova_f(double c, double log_phi, double alpha) {
  return c * std::exp(-0.5 * c * c) / std::sqrt(2.0 * M_PI) *
             (log_phi + (4.0 - log_phi) / (c * c)) -
         alpha;
}

}  // namespace

double critval_vostrikova(double alpha, std::size_t m_star, std::optional<double> h) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must be in (0,1)");
  if (m_star < 3) throw DomainError("critval_vostrikova requires m* >= 3");
  const double ms = static_cast<double>(m_star);
  const double hv = h ? *h : std::sqrt(std::log(ms));
  if (!(hv > 0.0)) throw DomainError("h must be positive");
  const double phi = (ms + hv) / (2.0 * hv);
  if (!(phi > 1.0)) throw DomainError("phi must exceed 1");
  const double log_phi = std::log(phi);

  // Scan from the right so the largest root (the asymptotic branch) wins.
  const int cells = 4096;
  const double lo_end = 1.0, hi_end = 20.0;
  const double step = (hi_end - lo_end) / cells;
  double lo = 0.0, hi = 0.0;
  bool found = false;
  double f_hi = vostrikova_f(hi_end, log_phi, alpha);
  for (int i = cells; i-- > 0;) {
    const double x = lo_end + step * i;
    const double f_lo = vostrikova_f(x, log_phi, alpha);
    if ((f_lo < 0.0) != (f_hi < 0.0) || f_lo == 0.0) {
      lo = x;
      hi = x + step;
      found = true;
      break;
    }
    f_hi = f_lo;
  }
  if (!found) throw NoRoot("no sign change on [1, 20]");

  double f_lo = vostrikova_f(lo, log_phi, alpha);
  double mid = lo;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double f_mid = vostrikova_f(mid, log_phi, alpha);
    if (std::abs(f_mid) < 1e-12) break;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  if (!(std::abs(vostrikova_f(mid, log_phi, alpha)) < 1e-12)) {
    throw NoRoot("bisection failed to reach |f| < 1e-12");
  }
  if (!(mid > std::sqrt(log_phi))) {
    throw NoRoot("root below sqrt(log phi); outside the asymptotic branch");
  }
  return mid;
}

}  // namespace rcamon
