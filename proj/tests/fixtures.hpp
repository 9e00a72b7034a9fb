#pragma once

// Shared fixtures and the small helpers the unit tests lean on.

#include <cmath>
#include <random>
#include <vector>

#include "specrisk/detrend.hpp"
#include "specrisk/ingest.hpp"
#include "specrisk/synth.hpp"

namespace fixtures {

inline specrisk::Date day0() {
  using namespace std::chrono;
  return specrisk::Date{year{2020}, January, day{2}};
}

inline specrisk::IndexedSeries prices(std::vector<double> p) {
  return specrisk::IndexedSeries(std::move(p), day0());
}

inline specrisk::IndexedSeries random_walk(std::size_t n, std::uint64_t seed,
                                           double sigma = 0.02, double rate = 0.0) {
  specrisk::SynthSpec s;
  s.kind = specrisk::SynthKind::randomwalk;
  s.n = n;
  s.seed = seed;
  s.sigma = sigma;
  s.rate = rate;
  return specrisk::generate(s);
}

inline specrisk::IndexedSeries modulated(std::size_t n, double period, double epsilon = 0.01,
                                         double rate = 0.0) {
  specrisk::SynthSpec s;
  s.kind = specrisk::SynthKind::modulated;
  s.n = n;
  s.period = period;
  s.epsilon = epsilon;
  s.rate = rate;
  return specrisk::generate(s);
}

inline specrisk::IndexedSeries exponential(std::size_t n, double rate, double p0 = 100.0) {
  specrisk::SynthSpec s;
  s.kind = specrisk::SynthKind::exponential;
  s.n = n;
  s.rate = rate;
  s.p0 = p0;
  return specrisk::generate(s);
}

inline double rel(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace fixtures
