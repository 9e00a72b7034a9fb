#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>

#include "specrisk/measures.hpp"
#include "specrisk/spectrum.hpp"

namespace specrisk {

enum class OutputFormat { columns, structured };

/// Shortest decimal that parses back to the same double.
void append_number(std::string& out, double value);

/// `omega,re,im,abs` rows (columns) or one JSON object per line (structured).
class SpectrumWriter {
 public:
  SpectrumWriter(std::ostream& out, GridSpec spec, OutputFormat format);
  void write_chunk(std::size_t first, std::span<const Complex> values);

 private:
  std::ostream& out_;
  GridSpec spec_;
  OutputFormat format_;
  std::string buffer_;
};

/// `omega,F,Fnorm` rows or JSON lines.
void write_cumulative(std::ostream& out, const CumulativeSpectrum& cs, OutputFormat format);

/// Columns: one CSV header plus one row per report. Structured: a JSON
/// document per report, or a JSON array when there is more than one.
void write_reports(std::ostream& out, std::span<const RiskReport> reports, OutputFormat format);

}  // namespace specrisk
