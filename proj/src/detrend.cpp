#include "specrisk/detrend.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

#include "specrisk/errors.hpp"

namespace specrisk {

double mean_log_rate(const IndexedSeries& series) {
  const auto p = series.prices();
  return std::log(p.back() / p.front()) / series.span_days();
}

DetrendedCurve build_curve(const IndexedSeries& series) {
  const auto p = series.prices();
  DetrendedCurve curve;
  curve.p0 = p.front();
  curve.rbar = mean_log_rate(series);
  curve.n_points = p.size();
  curve.segments.reserve(p.size() - 1);
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    const double raw_rate = std::log(p[k + 1] / p[k]);
    const double amplitude = k == 0 ? p[0] : p[k] * std::exp(-curve.rbar * static_cast<double>(k));
    curve.segments.push_back({static_cast<std::int64_t>(k), amplitude, raw_rate - curve.rbar});
  }
  return curve;
}

double evaluate_curve(const DetrendedCurve& curve, double t) {
  const double local = t - curve.begin_day();
  if (!(local >= 0.0 && local <= curve.span_days()))
    throw ArgumentError("t = " + std::to_string(t) + " outside curve support");
  auto k = static_cast<std::size_t>(local);
  if (k >= curve.segments.size()) k = curve.segments.size() - 1;
  const Segment& s = curve.segments[k];
  return s.amplitude * std::exp(s.rate * (t - static_cast<double>(s.start))) - curve.p0;
}

DetrendedCurve shift_origin(const DetrendedCurve& curve, std::int64_t days) {
  DetrendedCurve shifted = curve;
  shifted.origin += days;
  for (auto& s : shifted.segments) s.start += days;
  return shifted;
}

void write_curve(std::ostream& out, const DetrendedCurve& curve) {
  auto num = [](double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
  };
  std::string text = "p0=" + num(curve.p0) + ",rbar=" + num(curve.rbar) +
                     ",N=" + std::to_string(curve.n_points) + "\n";
  for (const auto& s : curve.segments)
    text += std::to_string(s.start) + "," + num(s.amplitude) + "," + num(s.rate) + "\n";
  out << text;
}

}  // namespace specrisk
