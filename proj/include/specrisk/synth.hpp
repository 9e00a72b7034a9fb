#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

#include "specrisk/ingest.hpp"

namespace specrisk {

enum class SynthKind { constant, exponential, modulated, randomwalk };

SynthKind parse_synth_kind(std::string_view name);

struct SynthSpec {
  SynthKind kind = SynthKind::constant;
  std::size_t n = 1000;
  double p0 = 100.0;
  double rate = 0.0;      // per day
  double epsilon = 0.0;   // modulation depth, |epsilon| < 1
  double period = 5.0;    // modulation period in days, >= 2
  double sigma = 0.02;    // random-walk daily log volatility
  std::uint64_t seed = 1;

  void validate() const;
};

/// Standard-normal deviates from std::mt19937_64 (whose output sequence is
/// fixed by the C++ standard) through the cosine branch of Box-Muller.
/// Each deviate consumes exactly two engine outputs:
///   u1 = (x1 >> 11 + 1) * 2^-53  in (0, 1]
///   u2 = (x2 >> 11) * 2^-53      in [0, 1)
///   z  = sqrt(-2 ln u1) * cos(2 pi u2)
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}
  double operator()();

 private:
  std::mt19937_64 engine_;
};

/// Deterministic synthetic series; the same spec always yields the same
/// prices. The origin date is 2000-01-03.
IndexedSeries generate(const SynthSpec& spec);

/// Assigns consecutive Monday-Friday dates starting at the series origin
/// (moved forward to a weekday if needed).
PriceSeries to_business_days(const IndexedSeries& series);

}  // namespace specrisk
