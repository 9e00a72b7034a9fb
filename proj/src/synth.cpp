#include "specrisk/synth.hpp"

#include <cmath>
#include <string>

#include "specrisk/errors.hpp"
#include "specrisk/spectrum.hpp"

namespace specrisk {

SynthKind parse_synth_kind(std::string_view name) {
  if (name == "constant") return SynthKind::constant;
  if (name == "exponential") return SynthKind::exponential;
  if (name == "modulated") return SynthKind::modulated;
  if (name == "randomwalk") return SynthKind::randomwalk;
  throw ArgumentError("unknown series kind `" + std::string(name) + "`");
}

void SynthSpec::validate() const {
  if (n < 2) throw ArgumentError("synthetic series needs N >= 2");
  if (!(p0 > 0.0) || !std::isfinite(p0)) throw ArgumentError("p0 must be positive");
  if (!std::isfinite(rate)) throw ArgumentError("rate must be finite");
  if (!(std::abs(epsilon) < 1.0)) throw ArgumentError("|epsilon| must be < 1");
  if (!(period >= 2.0)) throw ArgumentError("period must be >= 2 days");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ArgumentError("sigma must be >= 0");
}

double NormalStream::operator()() {
  const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

IndexedSeries generate(const SynthSpec& spec) {
  spec.validate();
  std::vector<double> p(spec.n);
  switch (spec.kind) {
    case SynthKind::constant:
      std::fill(p.begin(), p.end(), spec.p0);
      break;
    case SynthKind::exponential:
      for (std::size_t k = 0; k < spec.n; ++k)
        p[k] = spec.p0 * std::exp(spec.rate * static_cast<double>(k));
      break;
    case SynthKind::modulated:
      for (std::size_t k = 0; k < spec.n; ++k) {
        const double t = static_cast<double>(k);
        p[k] = spec.p0 * std::exp(spec.rate * t) *
               (1.0 + spec.epsilon * std::sin(kTwoPi * t / spec.period));
      }
      break;
    case SynthKind::randomwalk: {
      NormalStream normal(spec.seed);
      p[0] = spec.p0;
      for (std::size_t k = 0; k + 1 < spec.n; ++k)
        p[k + 1] = p[k] * std::exp(spec.rate + spec.sigma * normal());
      break;
    }
  }
  using namespace std::chrono;
  return IndexedSeries(std::move(p), Date{year{2000}, January, day{3}});
}

PriceSeries to_business_days(const IndexedSeries& series) {
  using namespace std::chrono;
  auto weekend = [](sys_days d) {
    const weekday wd{d};
    return wd == Saturday || wd == Sunday;
  };
  sys_days day_point{series.origin_date()};
  std::vector<Observation> rows;
  rows.reserve(series.size());
  for (double price : series.prices()) {
    while (weekend(day_point)) day_point += days{1};
    rows.push_back({Date{day_point}, price});
    day_point += days{1};
  }
  return PriceSeries(std::move(rows));
}

}  // namespace specrisk
