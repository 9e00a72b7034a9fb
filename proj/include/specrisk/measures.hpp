#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specrisk/detrend.hpp"
#include "specrisk/ingest.hpp"
#include "specrisk/spectrum.hpp"

namespace specrisk {

/// Running trapezoid integral of |f(omega)| from 0, and its normalization.
struct CumulativeSpectrum {
  GridSpec spec;
  std::vector<double> F;      // F[0] = 0, nondecreasing
  std::vector<double> Fnorm;  // F / Ftot, last element exactly 1
  double Ftot = 0.0;

  /// F at any omega in [0, omega_max], linear between grid points.
  double at(double omega) const;
};

/// Throws NoRiskSignal when every amplitude is <= kNullSpectrumTolerance * scale.
CumulativeSpectrum cumulative(const SpectrumGrid& grid);
CumulativeSpectrum cumulative(const GridSpec& spec, std::span<const double> amplitudes,
                              double scale);

/// (F(omega_hi) - F(omega_lo)) / Ftot.
double band_share(const CumulativeSpectrum& cs, double omega_lo, double omega_hi);

/// F(omega_cut) / Ftot: share of amplitude mass at or below the cutoff.
double irrationality_continuous(const CumulativeSpectrum& cs, double omega_cut);

/// c_k = transform_at(curve, 2*pi*k/T) / T for k = 0..K.
struct DiscreteCoefficients {
  std::vector<Complex> c;
  double period = 0.0;  // T in days

  std::size_t max_harmonic() const noexcept { return c.empty() ? 0 : c.size() - 1; }
};

DiscreteCoefficients dft_coefficients(const DetrendedCurve& curve, std::size_t max_harmonic,
                                      const EvalOptions& options = {});

/// sum_{k<=n_cut} |c_k| / sum_{k<=K} |c_k|. Throws NoRiskSignal on all-zero
/// coefficients and ArgumentError if n_cut > K.
double irrationality_discrete(const DiscreteCoefficients& dc, std::size_t n_cut);

/// Harmonic k of period T closest to omega (k = round(omega * T / 2pi)).
std::size_t nearest_harmonic(double omega, double period_days);

/// Sample standard deviation of daily log returns times sqrt(252).
/// Requires N >= 3.
double volatility(const IndexedSeries& series);

inline constexpr double kTradingDaysPerYear = 252.0;

/// A frequency band given by periods in days; lo_days > hi_days.
struct BandDays {
  double lo_days;
  double hi_days;

  double omega_lo() const { return omega_from_days(lo_days); }
  double omega_hi() const { return omega_from_days(hi_days); }
};

struct ReportConfig {
  double omega_cut_days = 10.0;
  std::vector<BandDays> bands{{50.0, 1.0}, {5.0, 1.0}};
};

struct BandShare {
  BandDays band;
  double share;
};

struct RiskReport {
  std::string series_id;
  std::size_t n_points = 0;
  GridSpec grid;
  double omega_cut_days = 10.0;
  bool risk_signal = true;  // false: spectrum identically zero, ratios absent
  std::optional<double> irrationality_continuous;
  std::optional<double> irrationality_discrete;
  std::vector<BandShare> band_shares;
  double volatility_annualized = 0.0;
};

/// Aggregates the scalar measures for one series. A zero spectrum yields a
/// report with risk_signal == false instead of an exception.
RiskReport build_report(const std::string& series_id, const IndexedSeries& series,
                        const DetrendedCurve& curve, const SpectrumGrid& grid,
                        const ReportConfig& config, const EvalOptions& options = {});

}  // namespace specrisk
