#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rcamon/wls.hpp"

namespace rcamon {

enum class DetectorKind { Cusum, Page };

// Incremental state shared by both detectors. prefix_sum is
// S_k = sum of the k weighted residuals seen so far; run_min/run_max track
// min/max of S_0..S_k (S_0 = 0) and are used by the Page recursion only.
struct DetectorState {
  DetectorKind kind = DetectorKind::Cusum;
  std::size_t k = 0;
  double prefix_sum = 0.0;
  double run_min = 0.0;
  double run_max = 0.0;
};

inline DetectorState make_detector_state(DetectorKind kind) {
  return DetectorState{kind, 0, 0.0, 0.0, 0.0};
}

// Weighted one-step-ahead residual
//   (y_new - beta_hat y_prev - lambda_hat' x_new) y_prev / (1 + y_prev^2),
// the lambda term only when the fit has covariates.
double residual(double y_new, double y_prev, const WlsFit& fit,
                std::optional<std::span<const double>> x_new = std::nullopt);

// CUSUM update: S_k <- S_{k-1} + r, returns Z(k) = |S_k|.
double cusum_update(DetectorState& state, double r);

// Page-CUSUM update: returns
//   Zdag(k) = max(S_k - min S_j, max S_j - S_k) over j = 0..k-1,
// which equals max over change onsets l <= k of |S_k - S_{l-1}|, then folds
// S_k into the running min/max.
double page_update(DetectorState& state, double r);

// O(k^2) evaluation of the Page detector straight from the definition,
// sharing prefix sums with the recursion; the test oracle.
std::vector<double> page_bruteforce(const std::vector<double>& residuals);

}  // namespace rcamon
