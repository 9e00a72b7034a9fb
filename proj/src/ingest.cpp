#include "specrisk/ingest.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "specrisk/errors.hpp"

namespace specrisk {

namespace {

std::string describe(Date d) { return format_date(d); }

bool all_digits(std::string_view s) {
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return !s.empty();
}

unsigned to_unsigned(std::string_view s) {
  unsigned v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    char x = a[i], y = b[i];
    if (x >= 'A' && x <= 'Z') x = static_cast<char>(x - 'A' + 'a');
    if (y >= 'A' && y <= 'Z') y = static_cast<char>(y - 'A' + 'a');
    if (x != y) return false;
  }
  return true;
}

}  // namespace

PriceSeries::PriceSeries(std::vector<Observation> observations)
    : observations_(std::move(observations)) {
  if (observations_.size() < 2)
    throw InvariantError("price series needs at least 2 observations, got " +
                         std::to_string(observations_.size()));
  for (std::size_t i = 0; i < observations_.size(); ++i) {
    const auto& o = observations_[i];
    if (!o.date.ok()) throw InvariantError("invalid date at observation " + std::to_string(i));
    if (!std::isfinite(o.price) || o.price <= 0.0)
      throw InvariantError("non-positive price on " + describe(o.date));
    if (i > 0 && !(observations_[i - 1].date < o.date))
      throw InvariantError("non-increasing date " + describe(o.date));
  }
}

IndexedSeries::IndexedSeries(std::vector<double> prices, Date origin_date)
    : prices_(std::move(prices)), origin_date_(origin_date) {
  if (prices_.size() < 2)
    throw InvariantError("indexed series needs at least 2 prices, got " +
                         std::to_string(prices_.size()));
  for (std::size_t k = 0; k < prices_.size(); ++k)
    if (!std::isfinite(prices_[k]) || prices_[k] <= 0.0)
      throw InvariantError("non-positive price at index " + std::to_string(k));
}

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto y = text.substr(0, 4), m = text.substr(5, 2), d = text.substr(8, 2);
  if (!all_digits(y) || !all_digits(m) || !all_digits(d)) return std::nullopt;
  Date date{std::chrono::year{static_cast<int>(to_unsigned(y))},
            std::chrono::month{to_unsigned(m)}, std::chrono::day{to_unsigned(d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_date(Date date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

PriceSeries parse_prices(std::string_view text) {
  std::vector<Observation> rows;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    line = trim(line);
    if (line.empty()) continue;

    auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
      throw ParseError(line_no, "expected `YYYY-MM-DD,<price>`");
    auto date_field = trim(line.substr(0, comma));
    auto price_field = trim(line.substr(comma + 1));

    if (!seen_content) {
      seen_content = true;
      if (iequals(date_field, "date")) continue;
    }

    auto date = parse_date(date_field);
    if (!date) throw ParseError(line_no, "bad date `" + std::string(date_field) + "`");

    double price = 0.0;
    auto [ptr, ec] = std::from_chars(price_field.data(), price_field.data() + price_field.size(),
                                     price, std::chars_format::fixed);
    if (ec != std::errc{} || ptr != price_field.data() + price_field.size() ||
        !std::isfinite(price))
      throw ParseError(line_no, "bad price `" + std::string(price_field) + "`");
    if (price <= 0.0) throw ParseError(line_no, "non-positive price " + std::string(price_field));
    if (!rows.empty() && !(rows.back().date < *date))
      throw ParseError(line_no, "non-increasing date " + std::string(date_field));

    rows.push_back({*date, price});
  }
  if (rows.size() < 2)
    throw ParseError(0, "need at least 2 price rows, got " + std::to_string(rows.size()));
  return PriceSeries(std::move(rows));
}

PriceSeries parse_prices(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_prices(std::string_view(text));
}

PriceSeries read_prices(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input file " + path.string());
  return parse_prices(in);
}

void write_prices(std::ostream& out, const PriceSeries& series) {
  std::string buf = "date,close\n";
  char num[64];
  for (const auto& o : series.observations()) {
    buf += format_date(o.date);
    buf += ',';
    auto r = std::to_chars(num, num + sizeof num, o.price, std::chars_format::fixed);
    buf.append(num, r.ptr);
    buf += '\n';
  }
  out << buf;
}

IndexedSeries index_series(const PriceSeries& series) {
  std::vector<double> prices;
  prices.reserve(series.size());
  for (const auto& o : series.observations()) prices.push_back(o.price);
  return IndexedSeries(std::move(prices), series.observations().front().date);
}

}  // namespace specrisk
