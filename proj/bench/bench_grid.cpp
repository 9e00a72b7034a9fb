// Times the spectrum grid three ways on a synthetic random walk:
//   reference  - sum of segment_transform per frequency
//   serial     - evaluate_grid_serial (plan kernel, one frequency at a time)
//   parallel   - evaluate_grid at several worker counts
//
// usage: bench_grid [N=5050] [points_per_oscillation=20] [max_workers=8]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <omp.h>

#include "specrisk/detrend.hpp"
#include "specrisk/spectrum.hpp"
#include "specrisk/synth.hpp"

using namespace specrisk;

template <class F>
double time_it(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 5050;
  const std::size_t ppo = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 20;
  const int max_workers = argc > 3 ? std::atoi(argv[3]) : 8;

  SynthSpec synth;
  synth.kind = SynthKind::randomwalk;
  synth.n = n;
  synth.seed = 42;
  const auto curve = build_curve(generate(synth));
  const auto spec = GridSpec::for_curve(curve, kTwoPi, ppo);
  const double terms = static_cast<double>(spec.size()) * static_cast<double>(curve.segments.size());
  std::printf("N=%zu M=%zu segments*points=%.3g cores=%d\n", n, spec.size(), terms,
              omp_get_num_procs());

  // The reference path is slow; time it on a slice and extrapolate.
  const std::size_t slice = std::min<std::size_t>(spec.size(), 2000);
  volatile double sink = 0.0;
  const double t_ref = time_it([&] {
    for (std::size_t j = 0; j < slice; ++j) sink = sink + std::abs(transform_reference(curve, spec.omega(j)));
  }) * static_cast<double>(spec.size()) / static_cast<double>(slice);
  std::printf("%-12s %10.3f s  %8.2f ns/term (extrapolated)\n", "reference", t_ref,
              1e9 * t_ref / terms);

  const double t_serial = time_it([&] { sink = sink + evaluate_grid_serial(curve, spec).amplitudes[1]; });
  std::printf("%-12s %10.3f s  %8.2f ns/term\n", "serial", t_serial, 1e9 * t_serial / terms);

  double t_one = 0.0;
  for (int w = 1; w <= max_workers; w *= 2) {
    const double t = time_it([&] { sink = sink + evaluate_grid(curve, spec, {w}).amplitudes[1]; });
    if (w == 1) t_one = t;
    std::printf("parallel w=%-2d %8.3f s  %8.2f ns/term  speedup %.2fx\n", w, t, 1e9 * t / terms,
                t_one / t);
  }
  return 0;
}
