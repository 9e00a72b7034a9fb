#include "specrisk/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "specrisk/errors.hpp"

namespace specrisk {

double CumulativeSpectrum::at(double omega) const {
  if (!(omega >= 0.0 && omega <= spec.omega_max))
    throw ArgumentError("frequency outside the cumulative grid");
  const std::size_t j = spec.lower_index(omega);
  const double wj = spec.omega(j);
  if (wj == omega || j == 0) return F[j];
  const double wp = spec.omega(j - 1);
  const double t = (omega - wp) / (wj - wp);
  return F[j - 1] + t * (F[j] - F[j - 1]);
}

CumulativeSpectrum cumulative(const SpectrumGrid& grid) {
  return cumulative(grid.spec, grid.amplitudes, grid.scale);
}

CumulativeSpectrum cumulative(const GridSpec& spec, std::span<const double> amplitudes,
                              double scale) {
  if (amplitudes.empty() || amplitudes.size() != spec.size())
    throw ArgumentError("amplitude count does not match the grid");
  const double peak = *std::max_element(amplitudes.begin(), amplitudes.end());
  if (!(peak > kNullSpectrumTolerance * scale)) throw NoRiskSignal();

  CumulativeSpectrum cs;
  cs.spec = spec;
  cs.F.resize(amplitudes.size());
  cs.F[0] = 0.0;
  for (std::size_t j = 1; j < amplitudes.size(); ++j) {
    const double width = spec.omega(j) - spec.omega(j - 1);
    cs.F[j] = cs.F[j - 1] + 0.5 * width * (amplitudes[j - 1] + amplitudes[j]);
  }
  cs.Ftot = cs.F.back();
  cs.Fnorm.resize(cs.F.size());
  for (std::size_t j = 0; j < cs.F.size(); ++j) cs.Fnorm[j] = cs.F[j] / cs.Ftot;
  return cs;
}

double band_share(const CumulativeSpectrum& cs, double omega_lo, double omega_hi) {
  if (!(omega_lo >= 0.0 && omega_lo < omega_hi && omega_hi <= cs.spec.omega_max))
    throw ArgumentError("band must satisfy 0 <= lo < hi <= omega_max");
  return (cs.at(omega_hi) - cs.at(omega_lo)) / cs.Ftot;
}

double irrationality_continuous(const CumulativeSpectrum& cs, double omega_cut) {
  if (!(omega_cut > 0.0 && omega_cut <= cs.spec.omega_max))
    throw ArgumentError("cutoff must satisfy 0 < cut <= omega_max");
  return cs.at(omega_cut) / cs.Ftot;
}

DiscreteCoefficients dft_coefficients(const DetrendedCurve& curve, std::size_t max_harmonic,
                                      const EvalOptions& options) {
  if (max_harmonic < 1) throw ArgumentError("max harmonic must be >= 1");
  DiscreteCoefficients dc;
  dc.period = curve.span_days();
  const double base = kTwoPi / dc.period;
  std::vector<double> omegas(max_harmonic + 1);
  for (std::size_t k = 0; k <= max_harmonic; ++k) omegas[k] = base * static_cast<double>(k);

  dc.c.resize(omegas.size());
  const TransformPlan plan(curve);
  constexpr std::size_t kBatch = 64;
  const auto batches = static_cast<std::int64_t>((omegas.size() + kBatch - 1) / kBatch);
#pragma omp parallel for schedule(static) num_threads(resolve_workers(options.workers))
  for (std::int64_t b = 0; b < batches; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBatch;
    const std::size_t n = std::min(kBatch, omegas.size() - lo);
    plan.evaluate(std::span<const double>(omegas).subspan(lo, n),
                  std::span<Complex>(dc.c).subspan(lo, n));
  }
  for (auto& c : dc.c) c /= dc.period;
  return dc;
}

double irrationality_discrete(const DiscreteCoefficients& dc, std::size_t n_cut) {
  if (dc.c.empty()) throw ArgumentError("no coefficients");
  if (n_cut > dc.max_harmonic()) throw ArgumentError("cutoff harmonic exceeds K");
  double low = 0.0, total = 0.0;
  for (std::size_t k = 0; k < dc.c.size(); ++k) {
    const double m = std::abs(dc.c[k]);
    total += m;
    if (k <= n_cut) low += m;
  }
  if (!(total > 0.0)) throw NoRiskSignal();
  return low / total;
}

std::size_t nearest_harmonic(double omega, double period_days) {
  return static_cast<std::size_t>(std::llround(omega * period_days / kTwoPi));
}

double volatility(const IndexedSeries& series) {
  const auto p = series.prices();
  if (p.size() < 3) throw ArgumentError("volatility needs at least 3 prices");
  std::vector<double> returns(p.size() - 1);
  for (std::size_t k = 0; k + 1 < p.size(); ++k) returns[k] = std::log(p[k + 1] / p[k]);
  const double n = static_cast<double>(returns.size());
  const double mean = std::accumulate(returns.begin(), returns.end(), 0.0) / n;
  double ss = 0.0;
  for (double r : returns) ss += (r - mean) * (r - mean);
  return std::sqrt(ss / (n - 1.0)) * std::sqrt(kTradingDaysPerYear);
}

RiskReport build_report(const std::string& series_id, const IndexedSeries& series,
                        const DetrendedCurve& curve, const SpectrumGrid& grid,
                        const ReportConfig& config, const EvalOptions& options) {
  RiskReport report;
  report.series_id = series_id;
  report.n_points = series.size();
  report.grid = grid.spec;
  report.omega_cut_days = config.omega_cut_days;
  report.volatility_annualized = series.size() >= 3 ? volatility(series) : 0.0;

  CumulativeSpectrum cs;
  try {
    cs = cumulative(grid);
  } catch (const NoRiskSignal&) {
    report.risk_signal = false;
    return report;
  }

  const double omega_cut = omega_from_days(config.omega_cut_days);
  report.irrationality_continuous = irrationality_continuous(cs, omega_cut);

  const double period = curve.span_days();
  const std::size_t k_max = std::max<std::size_t>(1, nearest_harmonic(grid.spec.omega_max, period));
  const auto dc = dft_coefficients(curve, k_max, options);
  report.irrationality_discrete =
      irrationality_discrete(dc, std::min(k_max, nearest_harmonic(omega_cut, period)));

  for (const auto& band : config.bands)
    report.band_shares.push_back({band, band_share(cs, band.omega_lo(), band.omega_hi())});
  return report;
}

}  // namespace specrisk
