#include "specrisk/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <omp.h>
#include <string>

#include "specrisk/errors.hpp"
#include "spectrum_detail.hpp"

namespace specrisk {

namespace detail {

Complex exp_ratio(double rate, double omega) {
  const Complex z(rate, -omega);
  if (std::abs(z) < kSmallArgument) {
    // 1 + z/2 + z^2/6 + z^3/24 + z^4/120 + z^5/720
    return 1.0 + z * (1.0 / 2 + z * (1.0 / 6 + z * (1.0 / 24 + z * (1.0 / 120 + z * (1.0 / 720)))));
  }
  const double half = std::sin(0.5 * omega);
  const Complex numerator(std::expm1(rate) * std::cos(omega) - 2.0 * half * half,
                          -std::exp(rate) * std::sin(omega));
  return numerator / z;
}

Complex unit_phase(double omega, double t) {
  const double hi = omega * t;
  const double lo = std::fma(omega, t, -hi);
  const double c = std::cos(hi);
  const double s = std::sin(hi);
  return Complex(c - s * lo, -(s + c * lo));
}

Complex segment_term(double amplitude, double rate, double start, double p0, double omega) {
  const Complex body = amplitude * exp_ratio(rate, omega) - p0 * exp_ratio(0.0, omega);
  return unit_phase(omega, start) * body;
}

}  // namespace detail

namespace {

void check_omega(double omega) {
  if (!(omega >= 0.0) || !std::isfinite(omega))
    throw ArgumentError("frequency must be finite and >= 0, got " + std::to_string(omega));
}

}  // namespace

GridSpec GridSpec::for_curve(const DetrendedCurve& curve, double omega_max,
                             std::size_t points_per_oscillation) {
  GridSpec spec{omega_max, points_per_oscillation, curve.span_days()};
  spec.validate();
  return spec;
}

void GridSpec::validate() const {
  if (!(omega_max > 0.0) || !std::isfinite(omega_max))
    throw ArgumentError("omega_max must be positive");
  if (points_per_oscillation == 0) throw ArgumentError("points_per_oscillation must be positive");
  if (!(span_days >= 1.0)) throw ArgumentError("span must be at least one day");
}

std::size_t GridSpec::oscillations() const {
  const double ratio = omega_max * span_days / kTwoPi;
  const double nearest = std::round(ratio);
  // omega_max = 2*pi with integer T lands within rounding of an integer.
  const double count = std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest) ? nearest
                                                                                  : std::ceil(ratio);
  return std::max<std::size_t>(1, static_cast<std::size_t>(count));
}

double GridSpec::omega(std::size_t j) const {
  const std::size_t m = size();
  if (j + 1 >= m) return omega_max;
  return static_cast<double>(j) * step();
}

std::size_t GridSpec::lower_index(double w) const {
  const std::size_t last = size() - 1;
  if (w <= 0.0) return 0;
  if (w >= omega_max) return last;
  auto j = static_cast<std::size_t>(std::floor(w / step()));
  j = std::min(j, last);
  while (j < last && omega(j) < w) ++j;
  while (j > 0 && omega(j - 1) >= w) --j;
  return j;
}

Complex segment_transform(const Segment& segment, double p0, double omega) {
  check_omega(omega);
  return detail::segment_term(segment.amplitude, segment.rate, static_cast<double>(segment.start),
                              p0, omega);
}

Complex transform_reference(const DetrendedCurve& curve, double omega) {
  check_omega(omega);
  Complex sum{};
  for (const auto& s : curve.segments)
    sum += detail::segment_term(s.amplitude, s.rate, static_cast<double>(s.start), curve.p0, omega);
  return sum;
}

Complex transform_at(const DetrendedCurve& curve, double omega) {
  check_omega(omega);
  return TransformPlan(curve)(omega);
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  return std::max(1, omp_get_num_procs());
}

namespace {

void check_budget(const DetrendedCurve& curve, const GridSpec& spec, const EvalOptions& options) {
  const double work = static_cast<double>(spec.size()) * static_cast<double>(curve.segments.size());
  if (work > options.work_budget)
    throw ResourceError("grid of " + std::to_string(spec.size()) + " points x " +
                        std::to_string(curve.segments.size()) +
                        " segments exceeds the work budget");
}

// Fills out[0..count) with omegas first..first+count, parallel over
// fixed-size batches so each slot has exactly one writer.
void fill_range(const TransformPlan& plan, const GridSpec& spec, std::size_t first,
                std::size_t count, Complex* out, int workers) {
  constexpr std::size_t kBatch = 64;
  const auto batches = static_cast<std::int64_t>((count + kBatch - 1) / kBatch);
#pragma omp parallel for schedule(static) num_threads(workers)
  for (std::int64_t b = 0; b < batches; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBatch;
    const std::size_t n = std::min(kBatch, count - lo);
    double omegas[kBatch];
    for (std::size_t i = 0; i < n; ++i) omegas[i] = spec.omega(first + lo + i);
    plan.evaluate(std::span<const double>(omegas, n), std::span<Complex>(out + lo, n));
  }
}

SpectrumGrid make_grid(const DetrendedCurve& curve, const GridSpec& spec) {
  spec.validate();
  SpectrumGrid grid;
  grid.spec = spec;
  grid.scale = curve.p0;
  grid.values.resize(spec.size());
  grid.amplitudes.resize(spec.size());
  return grid;
}

}  // namespace

SpectrumGrid evaluate_grid(const DetrendedCurve& curve, const GridSpec& spec,
                           const EvalOptions& options) {
  check_budget(curve, spec, options);
  SpectrumGrid grid = make_grid(curve, spec);
  const TransformPlan plan(curve);
  const int workers = resolve_workers(options.workers);
  fill_range(plan, spec, 0, grid.values.size(), grid.values.data(), workers);
  const auto m = static_cast<std::int64_t>(grid.values.size());
#pragma omp parallel for schedule(static) num_threads(workers)
  for (std::int64_t j = 0; j < m; ++j) grid.amplitudes[j] = std::abs(grid.values[j]);
  return grid;
}

SpectrumGrid evaluate_grid_serial(const DetrendedCurve& curve, const GridSpec& spec) {
  SpectrumGrid grid = make_grid(curve, spec);
  const TransformPlan plan(curve);
  for (std::size_t j = 0; j < grid.values.size(); ++j) {
    grid.values[j] = plan(spec.omega(j));
    grid.amplitudes[j] = std::abs(grid.values[j]);
  }
  return grid;
}

void evaluate_grid_chunked(const DetrendedCurve& curve, const GridSpec& spec,
                           const EvalOptions& options, std::size_t chunk_points,
                           const ChunkSink& sink) {
  spec.validate();
  check_budget(curve, spec, options);
  if (chunk_points == 0) throw ArgumentError("chunk size must be positive");
  const TransformPlan plan(curve);
  const int workers = resolve_workers(options.workers);
  const std::size_t m = spec.size();
  std::vector<Complex> buffer(std::min(chunk_points, m));
  for (std::size_t first = 0; first < m; first += chunk_points) {
    const std::size_t n = std::min(chunk_points, m - first);
    fill_range(plan, spec, first, n, buffer.data(), workers);
    sink(first, std::span<const Complex>(buffer.data(), n));
  }
}

AmplitudeBand amplitude_band(const SpectrumGrid& grid, double omega_lo, double omega_hi) {
  const GridSpec& spec = grid.spec;
  if (!(omega_lo >= 0.0 && omega_lo < omega_hi && omega_hi <= spec.omega_max))
    throw ArgumentError("band must satisfy 0 <= lo < hi <= omega_max");
  const std::size_t first = spec.lower_index(omega_lo);
  std::size_t last = spec.lower_index(omega_hi);
  if (spec.omega(last) > omega_hi) {
    if (last == 0) throw ArgumentError("empty frequency band");
    --last;
  }
  if (first > last || spec.omega(first) > omega_hi) throw ArgumentError("empty frequency band");
  const std::size_t n = last - first + 1;
  return AmplitudeBand{spec, first,
                       std::span<const double>(grid.amplitudes).subspan(first, n),
                       std::span<const Complex>(grid.values).subspan(first, n)};
}

}  // namespace specrisk
