#pragma once

#include <cstddef>
#include <optional>
#include <utility>

namespace rcamon {

enum class BoundaryScheme { OpenEnded, ClosedLong, ClosedShort, Covariate };
enum class CritvalSource { Simulated, DarlingErdos, Vostrikova };

// A fully resolved boundary g(k): weighting exponent psi in [0, 1/2], the
// critical value c with its provenance, the LRV plug-in s = sqrt(s2_hat),
// and for the covariate form the scale constants sx2 (multiplier) and sxd2
// (time dilation).
struct BoundarySpec {
  double psi = 0.0;
  BoundaryScheme scheme = BoundaryScheme::OpenEnded;
  double c = 0.0;
  double s = 1.0;
  std::size_t m = 0;
  std::optional<std::size_t> m_star;
  std::optional<double> sx2;
  std::optional<double> sxd2;
  CritvalSource c_source = CritvalSource::Simulated;
};

// g(k) for step k >= 1:
//   OpenEnded/ClosedLong:  c s m^{1/2} (1 + k/m) (k/(m+k))^psi
//   ClosedShort:           c s (m*)^{1/2-psi} k^psi
//   Covariate:             c sx2 m^{1/2} (1 + k/(sxd2 m)) (k/(sxd2 m + k))^psi
// Closed schemes reject k > m_star with OutOfHorizon.
double boundary_value(const BoundarySpec& spec, std::size_t k);

// Darling-Erdos norming pair gamma(x) = sqrt(2 log x),
// delta(x) = 2 log x + (1/2) log log x - (1/2) log pi, for x > 1.
std::pair<double, double> de_norming(double x);

// Asymptotic critical value for the standardised (psi = 1/2) CUSUM:
// (x_alpha + delta(log m*)) / gamma(log m*) with x_alpha the Gumbel upper
// quantile -log(-log(1-alpha)).
double critval_de(double alpha, std::size_t m_star);

// Vostrikova approximation: the largest root c in [1, 20] of
//   c exp(-c^2/2)/sqrt(2 pi) (log phi + (4 - log phi)/c^2) = alpha,
// phi = (m* + h)/(2h), default h = sqrt(log m*); refined to |f| < 1e-12.
double critval_vostrikova(double alpha, std::size_t m_star,
                          std::optional<double> h = std::nullopt);

}  // namespace rcamon
