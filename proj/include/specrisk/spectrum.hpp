#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "specrisk/detrend.hpp"

namespace specrisk {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Spectra whose largest amplitude is at or below this multiple of the
/// curve's first price are treated as identically zero.
inline constexpr double kNullSpectrumTolerance = 1e-10;

/// Uniform frequency grid on [0, omega_max] (rad/day), both ends included.
/// One spectral oscillation spans 2*pi/T; each is cut into
/// `points_per_oscillation` steps, so
///   M = ceil(omega_max / (2*pi/T)) * points_per_oscillation + 1.
struct GridSpec {
  double omega_max = kTwoPi;
  std::size_t points_per_oscillation = 1000;
  double span_days = 1.0;

  /// Throws ArgumentError on non-positive fields.
  static GridSpec for_curve(const DetrendedCurve& curve, double omega_max = kTwoPi,
                            std::size_t points_per_oscillation = 1000);

  std::size_t oscillations() const;
  std::size_t size() const { return oscillations() * points_per_oscillation + 1; }
  double step() const { return omega_max / static_cast<double>(size() - 1); }
  /// omega_j = j * step(); the last point is exactly omega_max.
  double omega(std::size_t j) const;
  /// Smallest j with omega(j) >= omega (clamped to the grid).
  std::size_t lower_index(double omega) const;

  void validate() const;
};

struct SpectrumGrid {
  GridSpec spec;
  std::vector<Complex> values;    // transform at omega(j)
  std::vector<double> amplitudes;  // |values[j]|
  double scale = 1.0;             // p0 of the source curve; reference for the zero-spectrum test

  std::size_t size() const noexcept { return amplitudes.size(); }
};

/// Closed-form integral of one segment against exp(-i*omega*t) over
/// [start, start + 1]. The omega -> 0 and rate -> 0 limits are handled by a
/// Taylor branch. Straightforward evaluation; serves as the reference kernel.
Complex segment_transform(const Segment& segment, double p0, double omega);

/// Sum of segment_transform over all segments in ascending order.
Complex transform_reference(const DetrendedCurve& curve, double omega);

/// Frequency-independent per-segment factors laid out for the grid kernel.
/// The evaluation is bitwise identical whether a frequency is computed alone
/// or inside a batch, and independent of the batch position.
class TransformPlan {
 public:
  explicit TransformPlan(const DetrendedCurve& curve);

  Complex operator()(double omega) const;
  /// out[i] = (*this)(omegas[i]).
  void evaluate(std::span<const double> omegas, std::span<Complex> out) const;

  std::size_t segments() const noexcept { return amplitude_.size(); }

 private:
  Complex evaluate_generic(double omega) const;

  std::vector<double> amplitude_;
  std::vector<double> rate_;
  std::vector<double> rate_sq_;
  std::vector<double> growth_m1_;  // expm1(rate)
  std::vector<double> growth_;     // 1 + expm1(rate)
  double p0_;
  std::int64_t origin_;
};

/// Exact transform of the curve at one frequency (omega >= 0). Uses the
/// same arithmetic as evaluate_grid, so grid values match it bit for bit.
Complex transform_at(const DetrendedCurve& curve, double omega);

struct EvalOptions {
  int workers = 0;                // 0: all available
  double work_budget = 2.0e11;    // max grid points * segments
};

/// Parallel over frequencies. Every output slot has one owner and the
/// per-frequency sum order is fixed, so the result does not depend on the
/// worker count. Throws ResourceError past the work budget.
SpectrumGrid evaluate_grid(const DetrendedCurve& curve, const GridSpec& spec,
                           const EvalOptions& options = {});

/// Single-threaded loop over transform_at; kept as the reference for the
/// parallel kernel.
SpectrumGrid evaluate_grid_serial(const DetrendedCurve& curve, const GridSpec& spec);

/// Streams the grid in chunks of `chunk_points` without materializing it.
/// `sink(first_index, values)` is called in ascending order.
using ChunkSink = std::function<void(std::size_t, std::span<const Complex>)>;
void evaluate_grid_chunked(const DetrendedCurve& curve, const GridSpec& spec,
                           const EvalOptions& options, std::size_t chunk_points,
                           const ChunkSink& sink);

/// Contiguous run of grid points with omega_lo <= omega_j <= omega_hi.
struct AmplitudeBand {
  GridSpec spec;
  std::size_t first = 0;
  std::span<const double> amplitudes;
  std::span<const Complex> values;

  std::size_t size() const noexcept { return amplitudes.size(); }
  double omega(std::size_t i) const { return spec.omega(first + i); }
};

/// Throws ArgumentError unless 0 <= omega_lo < omega_hi <= omega_max, and
/// when no grid point falls in the band.
AmplitudeBand amplitude_band(const SpectrumGrid& grid, double omega_lo, double omega_hi);

/// omega = 2*pi / period.
inline double omega_from_days(double period_days) { return kTwoPi / period_days; }

int resolve_workers(int requested);

}  // namespace specrisk
