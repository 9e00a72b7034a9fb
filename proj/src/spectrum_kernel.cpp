// Batched evaluation of the per-segment closed form.
//
// For z_k = c_k - i*omega the segment integral is
//   e^{-i omega k} * (a_k (e^{z_k} - 1)/z_k - p0 (e^{-i omega} - 1)/(-i omega)).
// Everything that depends only on the segment (c_k, c_k^2, expm1(c_k),
// e^{c_k}) is precomputed, and everything that depends only on omega
// (cos, sin, the constant-part ratio) is hoisted out of the segment loop.
// The phase e^{-i omega k} is the product of a directly evaluated block phase
// e^{-i omega k0} and a per-frequency table e^{-i omega j}, j < kBlock, so
// there is no recurrence drift. The constant part goes through the same
// instructions as a segment with rate 0, so a flat segment with a_k = p0
// cancels to exactly zero.
//
// Lanes are independent frequencies. Each lane runs the identical
// instruction sequence and sums segments in ascending order, so a frequency
// evaluated alone (one lane) rounds exactly as it does inside a batch.

#include <algorithm>
#include <cmath>

#include "specrisk/errors.hpp"
#include "specrisk/spectrum.hpp"
#include "spectrum_detail.hpp"

namespace specrisk {

namespace {

constexpr std::size_t kBlock = 64;
constexpr std::size_t kLanes = 8;

struct PlanView {
  const double* amplitude;
  const double* rate;
  const double* rate_sq;
  const double* growth_m1;
  const double* growth;
  std::size_t n;
  double p0;
  std::int64_t origin;
};

template <std::size_t L>
void evaluate_lanes(const PlanView& plan, const double* omegas, Complex* out) {
  alignas(64) double w[L], w2[L], cw[L], sw[L], hs[L], e0r[L], e0i[L];
  alignas(64) double ph_re[L], ph_im[L], acc_re[L], acc_im[L];
  alignas(64) double q_re[kBlock][L], q_im[kBlock][L];

  for (std::size_t l = 0; l < L; ++l) {
    w[l] = omegas[l];
    w2[l] = w[l] * w[l];
    cw[l] = std::cos(w[l]);
    sw[l] = std::sin(w[l]);
    const double half = std::sin(0.5 * w[l]);
    hs[l] = 2.0 * half * half;  // 1 - cos(omega)
    acc_re[l] = 0.0;
    acc_im[l] = 0.0;
  }
  // rate 0: growth_m1 = 0, growth = 1
#pragma omp simd
  for (std::size_t l = 0; l < L; ++l) {
    const double nr = 0.0 * cw[l] - hs[l];
    const double ni = -(1.0 * sw[l]);
    const double inv = 1.0 / (0.0 + w2[l]);
    e0r[l] = (nr * 0.0 - ni * w[l]) * inv;
    e0i[l] = (nr * w[l] + ni * 0.0) * inv;
  }
  for (std::size_t j = 0; j < kBlock; ++j)
    for (std::size_t l = 0; l < L; ++l) {
      const Complex q = detail::unit_phase(w[l], static_cast<double>(j));
      q_re[j][l] = q.real();
      q_im[j][l] = q.imag();
    }

  const double p0 = plan.p0;
  for (std::size_t b0 = 0; b0 < plan.n; b0 += kBlock) {
    const std::size_t len = std::min(kBlock, plan.n - b0);
    const double k0 = static_cast<double>(plan.origin + static_cast<std::int64_t>(b0));
    for (std::size_t l = 0; l < L; ++l) {
      const Complex ph = detail::unit_phase(w[l], k0);
      ph_re[l] = ph.real();
      ph_im[l] = ph.imag();
    }
    for (std::size_t j = 0; j < len; ++j) {
      const std::size_t k = b0 + j;
      const double a = plan.amplitude[k];
      const double c = plan.rate[k];
      const double c2 = plan.rate_sq[k];
      const double m = plan.growth_m1[k];
      const double g = plan.growth[k];
#pragma omp simd
      for (std::size_t l = 0; l < L; ++l) {
        // (e^{z} - 1) with z = c - i*omega, written without cancellation.
        const double nr = m * cw[l] - hs[l];
        const double ni = -(g * sw[l]);
        // divide by z: multiply by conj(z) / |z|^2
        const double inv = 1.0 / (c2 + w2[l]);
        const double er = (nr * c - ni * w[l]) * inv;
        const double ei = (nr * w[l] + ni * c) * inv;
        const double tr = a * er - p0 * e0r[l];
        const double ti = a * ei - p0 * e0i[l];
        const double pr = ph_re[l] * q_re[j][l] - ph_im[l] * q_im[j][l];
        const double pi = ph_re[l] * q_im[j][l] + ph_im[l] * q_re[j][l];
        acc_re[l] += pr * tr - pi * ti;
        acc_im[l] += pr * ti + pi * tr;
      }
    }
  }
  for (std::size_t l = 0; l < L; ++l) out[l] = Complex(acc_re[l], acc_im[l]);
}

}  // namespace

TransformPlan::TransformPlan(const DetrendedCurve& curve) : p0_(curve.p0), origin_(curve.origin) {
  const std::size_t n = curve.segments.size();
  amplitude_.reserve(n);
  rate_.reserve(n);
  rate_sq_.reserve(n);
  growth_m1_.reserve(n);
  growth_.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Segment& s = curve.segments[k];
    if (s.start != curve.origin + static_cast<std::int64_t>(k))
      throw InvariantError("segments must be consecutive days from the curve origin");
    amplitude_.push_back(s.amplitude);
    rate_.push_back(s.rate);
    rate_sq_.push_back(s.rate * s.rate);
    const double m = std::expm1(s.rate);
    growth_m1_.push_back(m);
    growth_.push_back(1.0 + m);
  }
}

Complex TransformPlan::evaluate_generic(double omega) const {
  Complex sum{};
  for (std::size_t k = 0; k < amplitude_.size(); ++k)
    sum += detail::segment_term(amplitude_[k], rate_[k],
                                static_cast<double>(origin_ + static_cast<std::int64_t>(k)), p0_,
                                omega);
  return sum;
}

Complex TransformPlan::operator()(double omega) const {
  if (omega < detail::kSmallArgument) return evaluate_generic(omega);
  const PlanView view{amplitude_.data(), rate_.data(),   rate_sq_.data(), growth_m1_.data(),
                      growth_.data(),    amplitude_.size(), p0_,          origin_};
  Complex out;
  evaluate_lanes<1>(view, &omega, &out);
  return out;
}

void TransformPlan::evaluate(std::span<const double> omegas, std::span<Complex> out) const {
  if (out.size() < omegas.size()) throw ArgumentError("output span too small");
  const PlanView view{amplitude_.data(), rate_.data(),   rate_sq_.data(), growth_m1_.data(),
                      growth_.data(),    amplitude_.size(), p0_,          origin_};
  for (std::size_t i = 0; i < omegas.size(); i += kLanes) {
    const std::size_t n = std::min(kLanes, omegas.size() - i);
    alignas(64) double lane_w[kLanes];
    Complex lane_out[kLanes];
    for (std::size_t l = 0; l < kLanes; ++l) {
      const double w = omegas[i + std::min(l, n - 1)];
      // Small frequencies take the generic branch below; keep the lane finite.
      lane_w[l] = w < detail::kSmallArgument ? 1.0 : w;
    }
    evaluate_lanes<kLanes>(view, lane_w, lane_out);
    for (std::size_t l = 0; l < n; ++l) {
      const double w = omegas[i + l];
      out[i + l] = w < detail::kSmallArgument ? evaluate_generic(w) : lane_out[l];
    }
  }
}

}  // namespace specrisk
