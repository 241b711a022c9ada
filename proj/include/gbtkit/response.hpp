/*
 * Copyright 2026 The gbtkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GBTKIT_RESPONSE_HPP_
#define GBTKIT_RESPONSE_HPP_

// Frequency responses of an analog plant and of its GBT discretization.
//
// The discrete response is the plant evaluated at the GBT operator on the
// unit circle, optionally multiplied by the zero-order-hold reconstruction
// factors sin(wT/2)/(wT/2) * exp(-j wT/2) and by a pure processing delay.
// Frequencies are in Hz throughout; the upper limit f_samp / 2 is excluded.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "gbtkit/error.hpp"
#include "gbtkit/gbt.hpp"
#include "gbtkit/ratfun.hpp"

namespace gbtkit {

struct ResponseOptions {
  bool include_zoh = true;
  double extra_delay = 0.0;  // seconds: ADC sample-and-hold + compute + DAC
  bool phase_unwrap = false;
};

struct FrequencyPoint {
  double freq;       // Hz
  double mag_db;
  double phase_deg;  // negative = lag
};

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double ToDecibels(Complex h) { return 20.0 * std::log10(std::abs(h)); }
inline double ToDegrees(double radians) { return radians * 180.0 / std::numbers::pi; }
inline double PhaseDegrees(Complex h) { return ToDegrees(std::arg(h)); }

// Principal value in (-180, 180].
inline double WrapDegrees(double deg) {
  double w = std::remainder(deg, 360.0);
  if (w <= -180.0) w += 360.0;
  return w;
}

inline FrequencyPoint ToFrequencyPoint(double freq, Complex h) {
  return FrequencyPoint{freq, ToDecibels(h), PhaseDegrees(h)};
}

namespace detail {

inline void CheckResponseFrequency(double freq, double period) {
  if (!(freq > 0.0)) {
    throw Error(ErrorCode::kParameterOutOfRange, "response frequency must be > 0");
  }
  if (!(freq < 0.5 / period)) {
    throw Error(ErrorCode::kNyquistExceeded,
                "frequency " + std::to_string(freq) + " Hz at or above Nyquist " +
                    std::to_string(0.5 / period) + " Hz");
  }
}

}  // namespace detail

inline Complex AnalogResponse(const PoleZeroGain& plant, double freq) {
  return plant(Complex(0.0, kTwoPi * freq));
}

inline Complex AnalogResponse(const RationalFunction& plant, double freq) {
  return plant(Complex(0.0, kTwoPi * freq));
}

// GBT operator at z = exp(j 2 pi f T), expanded into real and imaginary parts:
//   (1/T) [(1 - 2a)(cos wT - 1) + j sin wT] / [(2a - 2a^2) cos wT + 2a^2 - 2a + 1]
inline Complex GbtAxisOperator(double freq, const DiscretizationSpec& spec) {
  const double t = spec.period();
  const double a = spec.alpha();
  const double wt = kTwoPi * freq * t;
  const double c = std::cos(wt);
  const double den = (2.0 * a - 2.0 * a * a) * c + (2.0 * a * a - 2.0 * a + 1.0);
  if (den == 0.0) throw Error(ErrorCode::kPoleOfMap, "GBT operator unbounded on the unit circle");
  return Complex((1.0 - 2.0 * a) * (c - 1.0), std::sin(wt)) / (t * den);
}

// Same operator by direct complex arithmetic on the map.
inline Complex GbtAxisOperatorDirect(double freq, const DiscretizationSpec& spec) {
  const Complex z = std::polar(1.0, kTwoPi * freq * spec.period());
  return ZToSPoint(z, spec);
}

// ZOH magnitude decay times half-sample delay.
inline Complex ZohFactor(double freq, double period) {
  const double half = std::numbers::pi * freq * period;
  if (half == 0.0) return 1.0;
  return std::polar(std::sin(half) / half, -half);
}

inline Complex DelayFactor(double freq, double delay) {
  return std::polar(1.0, -kTwoPi * freq * delay);
}

namespace detail {

inline Complex ReconstructionFactors(double freq, double period, const ResponseOptions& opts) {
  if (opts.extra_delay < 0.0) {
    throw Error(ErrorCode::kParameterOutOfRange, "extra delay must be >= 0");
  }
  Complex f = 1.0;
  if (opts.include_zoh) f *= ZohFactor(freq, period);
  if (opts.extra_delay > 0.0) f *= DelayFactor(freq, opts.extra_delay);
  return f;
}

}  // namespace detail

inline Complex DiscreteResponse(const PoleZeroGain& plant, const DiscretizationSpec& spec,
                                double freq, const ResponseOptions& opts = {}) {
  detail::CheckResponseFrequency(freq, spec.period());
  Complex h;
  try {
    h = plant(GbtAxisOperator(freq, spec));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kPoleOfMap) throw Error(ErrorCode::kEvaluationAtPole, e.what());
    throw;
  }
  return h * detail::ReconstructionFactors(freq, spec.period(), opts);
}

inline Complex DiscreteResponse(const RationalFunction& plant, const DiscretizationSpec& spec,
                                double freq, const ResponseOptions& opts = {}) {
  detail::CheckResponseFrequency(freq, spec.period());
  return plant(GbtAxisOperator(freq, spec)) *
         detail::ReconstructionFactors(freq, spec.period(), opts);
}

// Evaluates an already-discretized z-domain function on the unit circle.
inline Complex ZDomainResponse(const RationalFunction& ztf, double period, double freq,
                               const ResponseOptions& opts = {}) {
  detail::CheckResponseFrequency(freq, period);
  const Complex z = std::polar(1.0, kTwoPi * freq * period);
  return ztf(z) * detail::ReconstructionFactors(freq, period, opts);
}

// First-order low-pass w_c / (s + w_c).
inline PoleZeroGain LowPassPlant(double w_c) { return PoleZeroGain(w_c, {}, {Complex(w_c, 0.0)}); }

inline Complex LpfAnalogResponse(double w_c, double freq) {
  return w_c / Complex(w_c, kTwoPi * freq);
}

inline Complex LpfDiscreteResponse(double w_c, const DiscretizationSpec& spec, double freq,
                                   const ResponseOptions& opts = {}) {
  detail::CheckResponseFrequency(freq, spec.period());
  const Complex op = GbtAxisOperator(freq, spec);
  return w_c / (op + w_c) * detail::ReconstructionFactors(freq, spec.period(), opts);
}

// Phase lag of a pure delay, degrees.
inline double DelayPhase(double freq, double t_delay) {
  if (!(t_delay >= 0.0)) throw Error(ErrorCode::kParameterOutOfRange, "delay must be >= 0");
  return -360.0 * freq * t_delay;
}

enum class Spacing { kLog, kLinear };

struct BodeRequest {
  double f_lo;
  double f_hi;
  int n;
  Spacing spacing = Spacing::kLog;
  bool include_analog = true;
};

struct BodeData {
  std::vector<FrequencyPoint> discrete;
  std::vector<FrequencyPoint> analog;  // empty unless requested
};

inline std::vector<double> FrequencyGrid(double f_lo, double f_hi, int n, Spacing spacing) {
  if (n < 2) throw Error(ErrorCode::kParameterOutOfRange, "grid needs n >= 2");
  if (!(f_lo > 0.0 && f_lo < f_hi)) {
    throw Error(ErrorCode::kParameterOutOfRange, "grid needs 0 < f_lo < f_hi");
  }
  std::vector<double> f(static_cast<std::size_t>(n));
  const double last = n - 1;
  for (int i = 0; i < n; ++i) {
    const double t = i / last;
    f[static_cast<std::size_t>(i)] =
        spacing == Spacing::kLog ? f_lo * std::pow(f_hi / f_lo, t) : f_lo + (f_hi - f_lo) * t;
  }
  f.front() = f_lo;
  f.back() = f_hi;
  return f;
}

// Removes 360-degree jumps so successive phases differ by at most 180.
inline void UnwrapPhase(std::vector<FrequencyPoint>& points) {
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double step = points[i].phase_deg - points[i - 1].phase_deg;
    points[i].phase_deg -= 360.0 * std::round(step / 360.0);
  }
}

inline BodeData BodeGrid(const PoleZeroGain& plant, const DiscretizationSpec& spec,
                         const BodeRequest& req, const ResponseOptions& opts = {}) {
  if (!(req.f_hi < spec.nyquist())) {
    throw Error(ErrorCode::kNyquistExceeded, "grid upper edge at or above Nyquist");
  }
  const auto freqs = FrequencyGrid(req.f_lo, req.f_hi, req.n, req.spacing);
  BodeData out;
  out.discrete.reserve(freqs.size());
  for (double f : freqs) out.discrete.push_back(ToFrequencyPoint(f, DiscreteResponse(plant, spec, f, opts)));
  if (req.include_analog) {
    out.analog.reserve(freqs.size());
    for (double f : freqs) out.analog.push_back(ToFrequencyPoint(f, AnalogResponse(plant, f)));
  }
  if (opts.phase_unwrap) {
    UnwrapPhase(out.discrete);
    UnwrapPhase(out.analog);
  }
  return out;
}

}  // namespace gbtkit

#endif  // GBTKIT_RESPONSE_HPP_
