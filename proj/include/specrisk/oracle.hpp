#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "specrisk/detrend.hpp"
#include "specrisk/spectrum.hpp"

namespace specrisk {

struct QuadratureResult {
  Complex value;
  double est_error = 0.0;
  std::size_t evaluations = 0;
  bool budget_exceeded = false;
  bool roundoff_limited = false;  // stopped because every panel sat at its rounding floor
};

struct QuadratureOptions {
  double tol = 1e-12;                      // relative, >= 1e-13
  std::size_t max_evaluations = 4'000'000;
};

/// Adaptive Gauss-Kronrod (7/15) integration of g(t) * exp(-i*omega*t) over
/// the curve's support. Panels start as one per segment and are bisected,
/// worst first, until the summed error estimate falls below
/// tol * (|value| + 1e-12 * p0), the worst panel is already at its rounding
/// floor, or the evaluation budget runs out. Any real omega is accepted.
QuadratureResult quadrature_transform(const DetrendedCurve& curve, double omega,
                                      const QuadratureOptions& options = {});

inline constexpr double kVerifyThreshold = 1e-9;

struct VerifyResult {
  std::size_t samples = 0;
  // |analytic - quad| / (|quad| + 1e-12 * p0); a sample where both sides are
  // below the null-spectrum threshold counts as 0.
  double max_deviation = 0.0;
  double worst_omega = 0.0;
  bool passed() const { return max_deviation < kVerifyThreshold; }
};

using AnalyticTransform = std::function<Complex(const DetrendedCurve&, double)>;

/// Compares the analytic transform with quadrature at `samples` seeded
/// uniform frequencies in (0, omega_max].
VerifyResult verify_transform(const DetrendedCurve& curve, std::size_t samples,
                              std::uint64_t seed, double omega_max = kTwoPi,
                              const AnalyticTransform& analytic = transform_at);

}  // namespace specrisk
