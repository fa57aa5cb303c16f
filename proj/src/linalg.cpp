#include "rcamon/linalg.hpp"

#include <cmath>
#include <utility>

#include "rcamon/errors.hpp"

namespace rcamon {

std::vector<double> solve_symmetric(std::vector<double> a, std::vector<double> b,
                                    std::size_t n, double rel_tol) {
  if (a.size() != n * n || b.size() != n) throw ArityMismatch("solve_symmetric: bad shapes");
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  if (!(scale > 0.0)) throw SingularGram("zero Gram matrix");
  const double tol = rel_tol * scale;

  // Gaussian elimination with partial pivoting; n is tiny so O(n^3) is fine.
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    }
    if (std::abs(a[piv * n + col]) < tol) {
      throw SingularGram("Gram matrix below conditioning threshold");
    }
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[col * n + j], a[piv * n + j]);
      std::swap(b[col], b[piv]);
    }
    const double d = a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / d;
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
    x[i] = s / a[i * n + i];
    if (!std::isfinite(x[i])) throw NonFinite("non-finite solution component");
  }
  return x;
}

}  // namespace rcamon
