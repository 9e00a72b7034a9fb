#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace specrisk {

using Date = std::chrono::year_month_day;

struct Observation {
  Date date;
  double price;  // currency units, > 0

  friend bool operator==(const Observation&, const Observation&) = default;
};

/// Calendar-dated closing prices. Dates strictly increase, prices are
/// positive and finite, and there are at least two observations.
class PriceSeries {
 public:
  /// Throws InvariantError if any invariant fails.
  explicit PriceSeries(std::vector<Observation> observations);

  std::span<const Observation> observations() const noexcept { return observations_; }
  std::size_t size() const noexcept { return observations_.size(); }

  friend bool operator==(const PriceSeries&, const PriceSeries&) = default;

 private:
  std::vector<Observation> observations_;
};

/// Prices at unit-spaced trading-day positions 0..N-1; calendar gaps between
/// quotes are collapsed.
class IndexedSeries {
 public:
  /// Throws InvariantError unless N >= 2 and every price is positive and finite.
  IndexedSeries(std::vector<double> prices, Date origin_date);

  std::span<const double> prices() const noexcept { return prices_; }
  double operator[](std::size_t k) const noexcept { return prices_[k]; }
  std::size_t size() const noexcept { return prices_.size(); }
  Date origin_date() const noexcept { return origin_date_; }
  /// T = N - 1 days.
  double span_days() const noexcept { return static_cast<double>(prices_.size() - 1); }

 private:
  std::vector<double> prices_;
  Date origin_date_;
};

/// Strict YYYY-MM-DD; nullopt for anything else (including impossible dates).
std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date date);

/// Reads `YYYY-MM-DD,<price>` rows. An optional `date,close` header is
/// skipped, blank lines are ignored and `\r\n` endings are accepted.
/// Throws ParseError (with line number) or InvariantError.
PriceSeries parse_prices(std::string_view text);
PriceSeries parse_prices(std::istream& in);
PriceSeries read_prices(const std::filesystem::path& path);

/// Writes the header plus one row per observation, prices in shortest
/// round-trip form, so parse_prices(write_prices(s)) == s.
void write_prices(std::ostream& out, const PriceSeries& series);

IndexedSeries index_series(const PriceSeries& series);

}  // namespace specrisk
