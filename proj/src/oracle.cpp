#include "specrisk/oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <vector>

#include "specrisk/errors.hpp"

namespace specrisk {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
using Gauss = boost::math::quadrature::gauss<double, 7>;

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double lo, hi;
  Complex value;
  double error;
  double roundoff;  // error floor set by the integrand's magnitude
  std::size_t segment;

  bool operator<(const Panel& other) const { return error < other.error; }
};

// 15-point Kronrod panel with the embedded 7-point Gauss rule. The error is
// scaled as in QUADPACK's qk15: resasc * min(1, (200 |K - G| / resasc)^1.5),
// never below the 50 eps * resabs roundoff floor.
template <class F>
Panel kronrod_panel(F&& f, double lo, double hi, std::size_t segment) {
  static const auto& xk = Kronrod::abscissa();
  static const auto& wk = Kronrod::weights();
  static const auto& wg = Gauss::weights();

  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  Complex fv[15];
  fv[0] = f(center);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    fv[2 * i - 1] = f(center - half * xk[i]);
    fv[2 * i] = f(center + half * xk[i]);
  }

  // Gauss nodes are the even-indexed Kronrod abscissae.
  Complex resk = wk[0] * fv[0];
  Complex resg = wg[0] * fv[0];
  double resabs = wk[0] * std::abs(fv[0]);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const Complex pair = fv[2 * i - 1] + fv[2 * i];
    resk += wk[i] * pair;
    resabs += wk[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
    if (i % 2 == 0) resg += wg[i / 2] * pair;
  }
  const Complex mean = 0.5 * resk;
  double resasc = wk[0] * std::abs(fv[0] - mean);
  for (std::size_t i = 1; i < xk.size(); ++i)
    resasc += wk[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));

  resk *= half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg * half));
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double roundoff = 50.0 * kEps * resabs;
  return Panel{lo, hi, resk, std::max(err, roundoff), roundoff, segment};
}

}  // namespace

QuadratureResult quadrature_transform(const DetrendedCurve& curve, double omega,
                                      const QuadratureOptions& options) {
  if (!(options.tol >= 1e-13)) throw ArgumentError("quadrature tolerance must be >= 1e-13");
  static const bool nodes_nested = [] {
    const auto& xk = Kronrod::abscissa();
    const auto& xg = Gauss::abscissa();
    for (std::size_t i = 0; i < xg.size(); ++i)
      if (xg[i] != xk[2 * i]) return false;
    return xk.size() == 8 && xg.size() == 4;
  }();
  if (!nodes_nested) throw InvariantError("unexpected Gauss-Kronrod node layout");

  QuadratureResult result;

  // The integrand is smooth inside a segment; knots only break derivatives.
  auto integrate = [&](std::size_t s, double lo, double hi) {
    const Segment& seg = curve.segments[s];
    const double start = static_cast<double>(seg.start);
    auto f = [&](double t) {
      const double g = seg.amplitude * std::exp(seg.rate * (t - start)) - curve.p0;
      return Complex(g * std::cos(omega * t), -g * std::sin(omega * t));
    };
    result.evaluations += 15;
    return kronrod_panel(f, lo, hi, s);
  };

  std::priority_queue<Panel> panels;
  Complex total{};
  double error = 0.0;
  for (std::size_t s = 0; s < curve.segments.size(); ++s) {
    const double start = static_cast<double>(curve.segments[s].start);
    Panel p = integrate(s, start, start + 1.0);
    total += p.value;
    error += p.error;
    panels.push(p);
  }

  const double floor = 1e-12 * curve.p0;
  while (!panels.empty() && error >= options.tol * (std::abs(total) + floor) && error > 0.0) {
    const Panel worst = panels.top();
    if (worst.error <= worst.roundoff) {
      // Every panel is at its rounding floor; bisecting cannot help.
      result.roundoff_limited = true;
      break;
    }
    if (result.evaluations + 30 > options.max_evaluations) {
      result.budget_exceeded = true;
      break;
    }
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Panel left = integrate(worst.segment, worst.lo, mid);
    const Panel right = integrate(worst.segment, mid, worst.hi);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }

  // Re-sum in time order to shed the drift of the running updates.
  std::vector<Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  result.value = Complex{};
  result.est_error = 0.0;
  for (const auto& p : all) {
    result.value += p.value;
    result.est_error += p.error;
  }
  return result;
}

VerifyResult verify_transform(const DetrendedCurve& curve, std::size_t samples,
                              std::uint64_t seed, double omega_max,
                              const AnalyticTransform& analytic) {
  std::mt19937_64 engine(seed);
  VerifyResult result;
  result.samples = samples;
  const double floor = 1e-12 * curve.p0;
  for (std::size_t i = 0; i < samples; ++i) {
    // (engine() >> 11) * 2^-53 in [0, 1); flip to (0, 1].
    const double u = 1.0 - static_cast<double>(engine() >> 11) * 0x1.0p-53;
    const double omega = u * omega_max;
    const Complex quad = quadrature_transform(curve, omega).value;
    const Complex exact = analytic(curve, omega);
    // Both sides at rounding level: nothing to compare.
    const double null = kNullSpectrumTolerance * curve.p0;
    const double deviation = std::abs(quad) <= null && std::abs(exact) <= null
                                 ? 0.0
                                 : std::abs(exact - quad) / (std::abs(quad) + floor);
    if (i == 0 || deviation > result.max_deviation || std::isnan(deviation)) {
      result.max_deviation = std::isnan(deviation) ? INFINITY : deviation;
      result.worst_omega = omega;
    }
  }
  return result;
}

}  // namespace specrisk
