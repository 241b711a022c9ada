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

#ifndef GBTKIT_SIMKIT_HPP_
#define GBTKIT_SIMKIT_HPP_

// Time-domain execution of z-domain transfer functions and steady-state
// sinusoid probing.
//
// A probe drives the recurrence with a sampled sine and fits the output, so
// it measures H(exp(j w T)) only. Zero-order-hold and processing-delay
// factors are reconstruction models and have to be applied analytically
// when a probe is compared with a reconstructed (analog-side) response.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "gbtkit/error.hpp"
#include "gbtkit/gbt.hpp"
#include "gbtkit/ratfun.hpp"
#include "gbtkit/response.hpp"

namespace gbtkit {

// y(n) = sum_{k=0..M} b[k] x(n-k) - sum_{k=1..N} a[k] y(n-k), zero initial
// state. Single-owner: not safe to drive one instance from two threads.
class DifferenceEquation {
 public:
  DifferenceEquation(std::vector<double> in_coeffs, std::vector<double> out_coeffs)
      : b_(std::move(in_coeffs)),
        a_(std::move(out_coeffs)),
        x_hist_(b_.empty() ? 0 : b_.size() - 1, 0.0),
        y_hist_(a_.size(), 0.0) {
    if (b_.empty()) {
      throw Error(ErrorCode::kParameterOutOfRange, "difference equation needs b[0]");
    }
  }

  // b_0..b_M multiplying v_in(n - k).
  const std::vector<double>& in_coeffs() const { return b_; }
  // a_1..a_N multiplying v_out(n - k).
  const std::vector<double>& out_coeffs() const { return a_; }

  double Step(double v_in) {
    double y = b_[0] * v_in;
    const std::size_t m = x_hist_.size();
    for (std::size_t k = 1; k <= m; ++k) y += b_[k] * x_hist_[(x_head_ + k - 1) % m];
    const std::size_t n = y_hist_.size();
    for (std::size_t k = 1; k <= n; ++k) y -= a_[k - 1] * y_hist_[(y_head_ + k - 1) % n];
    if (m > 0) {
      x_head_ = (x_head_ + m - 1) % m;
      x_hist_[x_head_] = v_in;
    }
    if (n > 0) {
      y_head_ = (y_head_ + n - 1) % n;
      y_hist_[y_head_] = y;
    }
    return y;
  }

  void Reset() {
    std::fill(x_hist_.begin(), x_hist_.end(), 0.0);
    std::fill(y_hist_.begin(), y_hist_.end(), 0.0);
    x_head_ = y_head_ = 0;
  }

  // Sum(b) / (1 + Sum(a)), i.e. H(z = 1).
  double dc_gain() const {
    double num = 0.0;
    double den = 1.0;
    for (double v : b_) num += v;
    for (double v : a_) den += v;
    return num / den;
  }

  // Monic z-polynomial whose roots are the recurrence poles.
  Polynomial characteristic_polynomial() const {
    const std::size_t n = a_.size();
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    for (std::size_t k = 1; k <= n; ++k) c[n - k] = a_[k - 1];
    return Polynomial(std::move(c));
  }

 private:
  std::vector<double> b_;
  std::vector<double> a_;
  std::vector<double> x_hist_;  // x_hist_[(x_head_ + k - 1) % M] = x(n - k)
  std::vector<double> y_hist_;
  std::size_t x_head_ = 0;
  std::size_t y_head_ = 0;
};

// Direct-form recurrence of a z-domain function with monic denominator.
inline DifferenceEquation Realize(const RationalFunction& ztf) {
  if (!ztf.is_proper()) {
    throw Error(ErrorCode::kImproperTransferFunction,
                "z-domain numerator degree exceeds denominator (non-causal)");
  }
  const int n = ztf.den().degree();
  std::vector<double> b(static_cast<std::size_t>(n + 1));
  std::vector<double> a(static_cast<std::size_t>(n));
  for (int k = 0; k <= n; ++k) b[static_cast<std::size_t>(k)] = ztf.num()[static_cast<std::size_t>(n - k)];
  for (int k = 1; k <= n; ++k) a[static_cast<std::size_t>(k - 1)] = ztf.den()[static_cast<std::size_t>(n - k)];
  return DifferenceEquation(std::move(b), std::move(a));
}

// The low-pass recurrence in grouped form:
//   v(n) = v(n-1) + g_in [x(n) - x(n-1)] + g_err [x(n-1) - v(n-1)]
// with g_in = a w_c T / (1 + a w_c T) and g_err = w_c T / (1 + a w_c T).
class LpfGroupedRecurrence {
 public:
  LpfGroupedRecurrence(double w_c, const DiscretizationSpec& spec) {
    const double wt = w_c * spec.period();
    const double den = 1.0 + spec.alpha() * wt;
    g_in_ = spec.alpha() * wt / den;
    g_err_ = wt / den;
  }

  double g_in() const { return g_in_; }
  double g_err() const { return g_err_; }

  double Step(double v_in) {
    const double v_out = v_out_prev_ + g_in_ * (v_in - v_in_prev_) + g_err_ * (v_in_prev_ - v_out_prev_);
    v_in_prev_ = v_in;
    v_out_prev_ = v_out;
    return v_out;
  }

 private:
  double g_in_ = 0.0;
  double g_err_ = 0.0;
  double v_in_prev_ = 0.0;
  double v_out_prev_ = 0.0;
};

struct ProbeResult {
  double freq;       // Hz
  double mag_db;
  double phase_deg;
  int cycles_used;   // cycles inside the fit window
  double residual;   // fit RMS / signal RMS
};

struct ProbeOptions {
  int settle_cycles = 50;
  int fit_cycles = 20;
  double amplitude = 1.0;
};

struct TraceSample {
  long n;
  double t_s;
  double v_in;
  double v_out;
};

struct ProbeRun {
  ProbeResult result;
  std::vector<TraceSample> trace;  // filled only when requested
};

inline StabilityReport IsDiscreteStable(const DifferenceEquation& deq) {
  return IsDiscreteStable(RationalFunction(Polynomial::Constant(1.0), deq.characteristic_polynomial()));
}

// Drives a fresh copy of `deq` with amplitude * sin(2 pi f n / f_samp),
// discards the settling window and least-squares fits P sin + Q cos over
// the fit window; H = (P + jQ) / amplitude.
inline ProbeRun RunSineProbe(DifferenceEquation deq, double freq, double f_samp,
                             const ProbeOptions& opts = {}, bool record_trace = false) {
  if (!(f_samp > 0.0)) throw Error(ErrorCode::kParameterOutOfRange, "f_samp must be > 0");
  if (!(freq > 0.0)) throw Error(ErrorCode::kParameterOutOfRange, "probe frequency must be > 0");
  if (!(freq < 0.5 * f_samp)) {
    throw Error(ErrorCode::kNyquistExceeded, "probe frequency at or above Nyquist");
  }
  if (opts.settle_cycles < 0 || opts.fit_cycles < 1 || !(opts.amplitude > 0.0)) {
    throw Error(ErrorCode::kParameterOutOfRange, "probe needs settle >= 0, fit >= 1, amplitude > 0");
  }
  const StabilityReport stability = IsDiscreteStable(deq);
  if (!stability.stable) {
    throw Error(ErrorCode::kUnstablePlant,
                "recurrence has a pole of radius " + std::to_string(stability.max_pole_radius));
  }
  deq.Reset();

  const double samples_per_cycle = f_samp / freq;
  const long settle = static_cast<long>(std::ceil(opts.settle_cycles * samples_per_cycle));
  const long fit = static_cast<long>(std::ceil(opts.fit_cycles * samples_per_cycle));
  const double w = kTwoPi * freq / f_samp;

  ProbeRun run;
  if (record_trace) run.trace.reserve(static_cast<std::size_t>(settle + fit));
  double ss = 0.0, sc = 0.0, cc = 0.0, ys = 0.0, yc = 0.0, yy = 0.0;
  std::vector<double> window;
  window.reserve(static_cast<std::size_t>(fit));
  for (long n = 0; n < settle + fit; ++n) {
    const double phase = w * static_cast<double>(n);
    const double s = opts.amplitude * std::sin(phase);
    const double y = deq.Step(s);
    if (record_trace) run.trace.push_back({n, static_cast<double>(n) / f_samp, s, y});
    if (n < settle) continue;
    const double c = opts.amplitude * std::cos(phase);
    ss += s * s;
    sc += s * c;
    cc += c * c;
    ys += y * s;
    yc += y * c;
    yy += y * y;
    window.push_back(y);
  }
  const double det = ss * cc - sc * sc;
  const double p = (ys * cc - yc * sc) / det;
  const double q = (yc * ss - ys * sc) / det;

  double err2 = 0.0;
  for (long i = 0; i < fit; ++i) {
    const double phase = w * static_cast<double>(settle + i);
    const double model = opts.amplitude * (p * std::sin(phase) + q * std::cos(phase));
    const double e = window[static_cast<std::size_t>(i)] - model;
    err2 += e * e;
  }
  const Complex h(p, q);
  run.result = ProbeResult{freq, ToDecibels(h), PhaseDegrees(h), opts.fit_cycles,
                           yy > 0.0 ? std::sqrt(err2 / yy) : 0.0};
  return run;
}

inline ProbeResult SineProbe(const DifferenceEquation& deq, double freq, double f_samp,
                             const ProbeOptions& opts = {}) {
  return RunSineProbe(deq, freq, f_samp, opts).result;
}

// Removes the lag of a known processing delay from a measured phase.
inline ProbeResult CompensateDelay(ProbeResult probe, double t_delay) {
  probe.phase_deg -= DelayPhase(probe.freq, t_delay);
  return probe;
}

// Inverse of CompensateDelay.
inline ProbeResult AddDelay(ProbeResult probe, double t_delay) {
  probe.phase_deg += DelayPhase(probe.freq, t_delay);
  return probe;
}

}  // namespace gbtkit

#endif  // GBTKIT_SIMKIT_HPP_
