#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "specrisk/ingest.hpp"

namespace specrisk {

/// One exponential piece of the detrended curve:
///   g(t) = amplitude * exp(rate * (t - start)) - p0   for t in [start, start + 1].
struct Segment {
  std::int64_t start;
  double amplitude;  // detrended value at `start` before the offset is removed, > 0
  double rate;       // per-day log return minus the mean log rate
};

/// Piecewise-exponential, trend-free function built from a price series.
/// Zero at both ends of its support and zero outside it.
struct DetrendedCurve {
  std::vector<Segment> segments;  // segment k covers [origin + k, origin + k + 1]
  double p0 = 0.0;                // first price, subtracted everywhere on the support
  double rbar = 0.0;              // mean log rate per day
  std::size_t n_points = 0;       // N knots, N - 1 segments
  std::int64_t origin = 0;        // day index of the first knot

  double span_days() const noexcept { return static_cast<double>(n_points - 1); }
  double begin_day() const noexcept { return static_cast<double>(origin); }
  double end_day() const noexcept { return static_cast<double>(origin) + span_days(); }
};

/// ln(p_{N-1} / p_0) / (N - 1): the constant rate whose removal makes the
/// first and last detrended values equal.
double mean_log_rate(const IndexedSeries& series);

DetrendedCurve build_curve(const IndexedSeries& series);

/// g(t) for t in [begin_day, end_day]. Segments are right-open except the
/// last. Throws ArgumentError outside the support.
double evaluate_curve(const DetrendedCurve& curve, double t);

/// The same curve with every knot moved by `days`.
DetrendedCurve shift_origin(const DetrendedCurve& curve, std::int64_t days);

/// Debug dump: `p0=<v>,rbar=<v>,N=<v>` then one `k,a_k,c_k` line per segment.
void write_curve(std::ostream& out, const DetrendedCurve& curve);

}  // namespace specrisk
