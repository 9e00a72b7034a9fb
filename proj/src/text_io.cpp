#include "specrisk/text_io.hpp"

#include <charconv>
#include <json.hpp>
#include <ostream>

namespace specrisk {

void append_number(std::string& out, double value) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, r.ptr);
}

SpectrumWriter::SpectrumWriter(std::ostream& out, GridSpec spec, OutputFormat format)
    : out_(out), spec_(spec), format_(format) {
  if (format_ == OutputFormat::columns) out_ << "omega,re,im,abs\n";
}

void SpectrumWriter::write_chunk(std::size_t first, std::span<const Complex> values) {
  buffer_.clear();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double omega = spec_.omega(first + i);
    const Complex v = values[i];
    const double fields[4] = {omega, v.real(), v.imag(), std::abs(v)};
    if (format_ == OutputFormat::columns) {
      for (int f = 0; f < 4; ++f) {
        if (f) buffer_ += ',';
        append_number(buffer_, fields[f]);
      }
    } else {
      static constexpr const char* kNames[4] = {"omega", "re", "im", "abs"};
      buffer_ += '{';
      for (int f = 0; f < 4; ++f) {
        if (f) buffer_ += ',';
        buffer_ += '"';
        buffer_ += kNames[f];
        buffer_ += "\":";
        append_number(buffer_, fields[f]);
      }
      buffer_ += '}';
    }
    buffer_ += '\n';
  }
  out_ << buffer_;
}

void write_cumulative(std::ostream& out, const CumulativeSpectrum& cs, OutputFormat format) {
  std::string buf;
  if (format == OutputFormat::columns) buf = "omega,F,Fnorm\n";
  for (std::size_t j = 0; j < cs.F.size(); ++j) {
    if (format == OutputFormat::columns) {
      append_number(buf, cs.spec.omega(j));
      buf += ',';
      append_number(buf, cs.F[j]);
      buf += ',';
      append_number(buf, cs.Fnorm[j]);
    } else {
      buf += "{\"omega\":";
      append_number(buf, cs.spec.omega(j));
      buf += ",\"F\":";
      append_number(buf, cs.F[j]);
      buf += ",\"Fnorm\":";
      append_number(buf, cs.Fnorm[j]);
      buf += '}';
    }
    buf += '\n';
    if (buf.size() > (1u << 20)) {
      out << buf;
      buf.clear();
    }
  }
  out << buf;
}

namespace {

nlohmann::ordered_json to_json(const RiskReport& r) {
  nlohmann::ordered_json doc;
  doc["series"] = r.series_id;
  doc["N"] = r.n_points;
  doc["status"] = r.risk_signal ? "ok" : "no risk signal";
  auto optional = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  doc["irrationality_continuous"] = optional(r.irrationality_continuous);
  doc["irrationality_discrete"] = optional(r.irrationality_discrete);
  doc["volatility_annualized"] = r.volatility_annualized;
  doc["omega_cut_days"] = r.omega_cut_days;
  auto bands = nlohmann::ordered_json::array();
  for (const auto& b : r.band_shares)
    bands.push_back({{"lo_days", b.band.lo_days}, {"hi_days", b.band.hi_days}, {"share", b.share}});
  doc["band_shares"] = bands;
  doc["grid"] = {{"omega_max", r.grid.omega_max},
                 {"points_per_oscillation", r.grid.points_per_oscillation},
                 {"points", r.grid.size()}};
  return doc;
}

std::string days_label(double d) {
  std::string s;
  append_number(s, d);
  return s;
}

}  // namespace

void write_reports(std::ostream& out, std::span<const RiskReport> reports, OutputFormat format) {
  if (format == OutputFormat::structured) {
    if (reports.size() == 1) {
      out << to_json(reports.front()).dump(2) << '\n';
    } else {
      auto all = nlohmann::ordered_json::array();
      for (const auto& r : reports) all.push_back(to_json(r));
      out << all.dump(2) << '\n';
    }
    return;
  }

  std::string buf =
      "series,N,status,irrationality_continuous,irrationality_discrete,volatility_annualized";
  if (!reports.empty())
    for (const auto& b : reports.front().band_shares)
      buf += ",share_" + days_label(b.band.lo_days) + "_" + days_label(b.band.hi_days);
  buf += '\n';
  for (const auto& r : reports) {
    buf += r.series_id + "," + std::to_string(r.n_points) + "," +
           (r.risk_signal ? "ok" : "no risk signal") + ",";
    if (r.irrationality_continuous) append_number(buf, *r.irrationality_continuous);
    buf += ',';
    if (r.irrationality_discrete) append_number(buf, *r.irrationality_discrete);
    buf += ',';
    append_number(buf, r.volatility_annualized);
    for (const auto& b : r.band_shares) {
      buf += ',';
      append_number(buf, b.share);
    }
    buf += '\n';
  }
  out << buf;
}

}  // namespace specrisk
