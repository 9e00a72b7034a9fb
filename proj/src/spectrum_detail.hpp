#pragma once

#include "specrisk/spectrum.hpp"

namespace specrisk::detail {

/// Below this |z| the removable singularity of (e^z - 1)/z is evaluated by
/// its Taylor series.
inline constexpr double kSmallArgument = 1e-6;

/// (e^z - 1)/z for z = rate - i*omega, with expm1/half-angle forms so the
/// numerator never cancels.
Complex exp_ratio(double rate, double omega);

/// e^{-i * omega * t}. The product omega * t is carried as hi + lo (exact
/// via fma) and the rounding residue lo is folded in to first order, so the
/// phase does not lose accuracy as t grows.
Complex unit_phase(double omega, double t);

/// Per-segment closed form; shared by the reference path and by the plan's
/// small-frequency branch.
Complex segment_term(double amplitude, double rate, double start, double p0, double omega);

}  // namespace specrisk::detail
