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

#ifndef GBTKIT_DESIGN_HPP_
#define GBTKIT_DESIGN_HPP_

// Optimal shape-factor design.
//
// The magnitude error (dB) and phase error (degrees) of the discretized plant
// relative to the analog plant are reduced to one scalar per scenario type,
// divided by a MaxAbs normalization reference, and minimized over the stable
// range 0.5 <= alpha <= 1:
//
//   Type A  |err(f_exp)| / ref
//   Type B  sqrt(sum_i K[i] err(f_i)^2) / ref
//   Type C  mean over [f_start, f_end] of |err(f)| / ref
//
// Two normalization conventions are supported. kScenarioMaximum takes the
// maximum over the stable range of the scenario's own numerator (and, for
// Type C, of |err| over the frequency grid), so every objective peaks at 1.
// kReferenceFrequency takes max over alpha of |err(f_ref, alpha)| at one
// fixed frequency, which is the Type A reference reused for all types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "gbtkit/error.hpp"
#include "gbtkit/gbt.hpp"
#include "gbtkit/ratfun.hpp"
#include "gbtkit/response.hpp"
#include "gbtkit/scalar_search.hpp"

namespace gbtkit {

inline constexpr double kAlphaMin = 0.5;
inline constexpr double kAlphaMax = 1.0;
inline constexpr double kAlphaGridStep = 1e-3;
inline constexpr int kIntervalGridPoints = 481;
inline constexpr int kMultiStarts = 8;
inline constexpr double kAlphaTolerance = 1e-6;

enum class ErrorChannel { kMagnitude, kPhase };
enum class Channel { kMagnitudeFirst, kPhaseFirst, kTradeOff };

constexpr const char* ChannelName(Channel c) {
  switch (c) {
    case Channel::kMagnitudeFirst: return "magnitude_first";
    case Channel::kPhaseFirst: return "phase_first";
    case Channel::kTradeOff: return "trade_off";
  }
  return "unknown";
}

struct TypeA {
  double f_exp;
};

struct WeightedPoint {
  double freq;
  double k_mag;
  double k_phase;
};

struct TypeB {
  std::vector<WeightedPoint> points;
};

struct TypeC {
  double f_start;
  double f_end;
};

using ScenarioKind = std::variant<TypeA, TypeB, TypeC>;

enum class NormalizationMode { kScenarioMaximum, kReferenceFrequency };

struct Normalization {
  NormalizationMode mode = NormalizationMode::kScenarioMaximum;
  double reference_freq = 0.0;  // Hz, used by kReferenceFrequency only
};

class DesignScenario {
 public:
  DesignScenario(ScenarioKind kind, PoleZeroGain plant, double period,
                 ResponseOptions response = {}, Normalization normalization = {})
      : kind_(std::move(kind)),
        plant_(std::move(plant)),
        period_(period),
        response_(response),
        normalization_(normalization) {
    Validate();
  }

  const ScenarioKind& kind() const { return kind_; }
  const PoleZeroGain& plant() const { return plant_; }
  double period() const { return period_; }
  double nyquist() const { return 0.5 / period_; }
  const ResponseOptions& response() const { return response_; }
  const Normalization& normalization() const { return normalization_; }

  DesignScenario with_normalization(Normalization n) const {
    return DesignScenario(kind_, plant_, period_, response_, n);
  }

 private:
  void CheckFrequency(double f, const char* what) const {
    if (!(f > 0.0 && f < nyquist())) {
      throw Error(ErrorCode::kInvalidScenario,
                  std::string(what) + " " + std::to_string(f) + " Hz outside (0, Nyquist)");
    }
  }

  void Validate() const {
    if (!(period_ > 0.0) || !std::isfinite(period_)) {
      throw Error(ErrorCode::kInvalidScenario, "sampling period must be > 0");
    }
    if (response_.extra_delay < 0.0) {
      throw Error(ErrorCode::kInvalidScenario, "extra delay must be >= 0");
    }
    if (const auto* a = std::get_if<TypeA>(&kind_)) {
      CheckFrequency(a->f_exp, "f_exp");
    } else if (const auto* b = std::get_if<TypeB>(&kind_)) {
      if (b->points.empty()) throw Error(ErrorCode::kInvalidScenario, "Type B needs points");
      bool any_mag = false;
      bool any_phase = false;
      for (const auto& p : b->points) {
        CheckFrequency(p.freq, "point");
        if (!(p.k_mag >= 0.0) || !(p.k_phase >= 0.0)) {
          throw Error(ErrorCode::kInvalidScenario, "Type B weights must be >= 0");
        }
        any_mag = any_mag || p.k_mag > 0.0;
        any_phase = any_phase || p.k_phase > 0.0;
      }
      if (!any_mag || !any_phase) {
        throw Error(ErrorCode::kInvalidScenario, "Type B needs a positive weight per channel");
      }
    } else {
      const auto& c = std::get<TypeC>(kind_);
      CheckFrequency(c.f_start, "f_start");
      CheckFrequency(c.f_end, "f_end");
      if (!(c.f_start < c.f_end)) {
        throw Error(ErrorCode::kInvalidScenario, "Type C needs f_start < f_end");
      }
    }
    if (normalization_.mode == NormalizationMode::kReferenceFrequency) {
      CheckFrequency(normalization_.reference_freq, "reference frequency");
    }
  }

  ScenarioKind kind_;
  PoleZeroGain plant_;
  double period_;
  ResponseOptions response_;
  Normalization normalization_;
};

struct Distortion {
  double mag_db;
  double phase_deg;
};

// Discrete over analog response ratio in dB and degrees (principal value).
inline Distortion MeasureDistortion(const PoleZeroGain& plant, double period, double freq,
                                    double alpha, const ResponseOptions& opts = {}) {
  const DiscretizationSpec spec(ShapeFactor::Extended(alpha), period);
  const Complex ratio = DiscreteResponse(plant, spec, freq, opts) / AnalogResponse(plant, freq);
  return Distortion{ToDecibels(ratio), PhaseDegrees(ratio)};
}

inline double MagError(const PoleZeroGain& plant, double period, double freq, double alpha,
                       const ResponseOptions& opts = {}) {
  return MeasureDistortion(plant, period, freq, alpha, opts).mag_db;
}

inline double PhaseError(const PoleZeroGain& plant, double period, double freq, double alpha,
                         const ResponseOptions& opts = {}) {
  return MeasureDistortion(plant, period, freq, alpha, opts).phase_deg;
}

// 0.5, 0.5 + step, ..., 1.0 with both endpoints exact.
inline std::vector<double> AlphaGrid(double step = kAlphaGridStep) {
  const int n = static_cast<int>(std::llround((kAlphaMax - kAlphaMin) / step));
  std::vector<double> grid(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) grid[static_cast<std::size_t>(i)] = kAlphaMin + i * step;
  grid.back() = kAlphaMax;
  return grid;
}

struct NormalizationRefs {
  double mag_db = 0.0;
  double phase_deg = 0.0;

  double get(ErrorChannel c) const { return c == ErrorChannel::kMagnitude ? mag_db : phase_deg; }
};

// Unnormalized objective values for both channels.
struct RawObjective {
  double mag = 0.0;
  double phase = 0.0;

  double get(ErrorChannel c) const { return c == ErrorChannel::kMagnitude ? mag : phase; }
};

namespace detail {

inline std::vector<double> IntervalGrid(const TypeC& c) {
  std::vector<double> f(kIntervalGridPoints);
  const double step = (c.f_end - c.f_start) / (kIntervalGridPoints - 1);
  for (int i = 0; i < kIntervalGridPoints; ++i) f[static_cast<std::size_t>(i)] = c.f_start + i * step;
  f.back() = c.f_end;
  return f;
}

}  // namespace detail

inline RawObjective EvaluateRawObjective(const DesignScenario& sc, double alpha) {
  auto distortion = [&](double f) {
    return MeasureDistortion(sc.plant(), sc.period(), f, alpha, sc.response());
  };
  RawObjective raw;
  if (const auto* a = std::get_if<TypeA>(&sc.kind())) {
    const Distortion d = distortion(a->f_exp);
    raw.mag = std::abs(d.mag_db);
    raw.phase = std::abs(d.phase_deg);
  } else if (const auto* b = std::get_if<TypeB>(&sc.kind())) {
    for (const auto& p : b->points) {
      const Distortion d = distortion(p.freq);
      raw.mag += p.k_mag * d.mag_db * d.mag_db;
      raw.phase += p.k_phase * d.phase_deg * d.phase_deg;
    }
    raw.mag = std::sqrt(raw.mag);
    raw.phase = std::sqrt(raw.phase);
  } else {
    const auto& c = std::get<TypeC>(sc.kind());
    const auto grid = detail::IntervalGrid(c);
    double prev_mag = 0.0;
    double prev_phase = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Distortion d = distortion(grid[i]);
      const double m = std::abs(d.mag_db);
      const double p = std::abs(d.phase_deg);
      if (i > 0) {
        const double h = grid[i] - grid[i - 1];
        raw.mag += 0.5 * h * (m + prev_mag);
        raw.phase += 0.5 * h * (p + prev_phase);
      }
      prev_mag = m;
      prev_phase = p;
    }
    raw.mag /= c.f_end - c.f_start;
    raw.phase /= c.f_end - c.f_start;
  }
  return raw;
}

namespace detail {

// Maximum of g over [0.5, 1]: the grid maximum, with every interior local
// maximum of the grid refined by golden section on its two cells.
template <typename G>
double RefinedMaximum(G&& g, const std::vector<double>& alphas, const std::vector<double>& values) {
  double best = *std::max_element(values.begin(), values.end());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (values[i] < values[i - 1] || values[i] < values[i + 1]) continue;
    const ScalarMinimum m =
        GoldenSectionMinimize([&](double a) { return -g(a); }, alphas[i - 1], alphas[i + 1], kAlphaTolerance);
    best = std::max(best, -m.value);
  }
  return best;
}

}  // namespace detail

inline NormalizationRefs NormalizationReferences(const DesignScenario& sc) {
  const auto alphas = AlphaGrid();
  // Channel profile whose maximum over alpha is the reference.
  auto profile = [&](double a) -> RawObjective {
    if (sc.normalization().mode == NormalizationMode::kReferenceFrequency) {
      const Distortion d =
          MeasureDistortion(sc.plant(), sc.period(), sc.normalization().reference_freq, a, sc.response());
      return {std::abs(d.mag_db), std::abs(d.phase_deg)};
    }
    if (const auto* c = std::get_if<TypeC>(&sc.kind())) {
      RawObjective peak;
      for (double f : detail::IntervalGrid(*c)) {
        const Distortion d = MeasureDistortion(sc.plant(), sc.period(), f, a, sc.response());
        peak.mag = std::max(peak.mag, std::abs(d.mag_db));
        peak.phase = std::max(peak.phase, std::abs(d.phase_deg));
      }
      return peak;
    }
    return EvaluateRawObjective(sc, a);
  };
  std::vector<double> mag(alphas.size());
  std::vector<double> phase(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const RawObjective v = profile(alphas[i]);
    mag[i] = v.mag;
    phase[i] = v.phase;
  }
  NormalizationRefs refs;
  refs.mag_db = detail::RefinedMaximum([&](double a) { return profile(a).mag; }, alphas, mag);
  refs.phase_deg = detail::RefinedMaximum([&](double a) { return profile(a).phase; }, alphas, phase);
  if (!(refs.mag_db > 1e-12) || !(refs.phase_deg > 1e-12)) {
    throw Error(ErrorCode::kDegenerateScenario,
                "distortion vanishes over the stable range; normalization undefined");
  }
  return refs;
}

inline double NormalizationRef(const DesignScenario& sc, ErrorChannel channel) {
  return NormalizationReferences(sc).get(channel);
}

// Normalized objectives with the references computed once.
class ObjectiveFunction {
 public:
  explicit ObjectiveFunction(DesignScenario scenario)
      : scenario_(std::move(scenario)), refs_(NormalizationReferences(scenario_)) {}

  const DesignScenario& scenario() const { return scenario_; }
  const NormalizationRefs& refs() const { return refs_; }

  RawObjective both(double alpha) const {
    CheckConstraint(alpha);
    const RawObjective raw = EvaluateRawObjective(scenario_, alpha);
    return RawObjective{raw.mag / refs_.mag_db, raw.phase / refs_.phase_deg};
  }

  double operator()(ErrorChannel channel, double alpha) const { return both(alpha).get(channel); }

 private:
  static void CheckConstraint(double alpha) {
    if (!(alpha >= kAlphaMin && alpha <= kAlphaMax)) {
      throw Error(ErrorCode::kConstraintViolation,
                  "alpha " + std::to_string(alpha) + " outside the stable range [0.5, 1]");
    }
  }

  DesignScenario scenario_;
  NormalizationRefs refs_;
};

inline double Objective(const DesignScenario& sc, ErrorChannel channel, double alpha) {
  return ObjectiveFunction(sc)(channel, alpha);
}

struct DesignResult {
  double alpha_opt;
  double q_value;
  Channel channel;
  NormalizationRefs normalization_refs;
  double q_magnitude;  // both normalized objectives at alpha_opt
  double q_phase;
};

namespace detail {

inline std::uint64_t EntropySeed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

inline DesignResult MakeResult(const ObjectiveFunction& obj, Channel channel, double alpha,
                               double q) {
  const RawObjective both = obj.both(alpha);
  return DesignResult{alpha, q, channel, obj.refs(), both.mag, both.phase};
}

}  // namespace detail

// Equal normalized errors; bisection on Q_mag - Q_phase over [0.5, 1].
inline DesignResult TradeoffAlpha(const ObjectiveFunction& obj) {
  auto gap = [&](double a) {
    const RawObjective q = obj.both(a);
    return q.mag - q.phase;
  };
  const double g_lo = gap(kAlphaMin);
  const double g_hi = gap(kAlphaMax);
  if ((g_lo > 0.0 && g_hi > 0.0) || (g_lo < 0.0 && g_hi < 0.0)) {
    throw Error(ErrorCode::kNoCrossing,
                "normalized magnitude and phase errors do not cross on [0.5, 1]");
  }
  const double alpha = BisectRoot(gap, kAlphaMin, kAlphaMax, 1e-10);
  const RawObjective q = obj.both(alpha);
  return DesignResult{alpha, 0.5 * (q.mag + q.phase), Channel::kTradeOff, obj.refs(), q.mag,
                      q.phase};
}

inline DesignResult TradeoffAlpha(const DesignScenario& sc) {
  return TradeoffAlpha(ObjectiveFunction(sc));
}

// Coarse boundary-inclusive scan, then golden-section refinement around the
// scan minimum and around the local minima reached from kMultiStarts uniform
// random starts. Ties go to the smaller alpha.
inline DesignResult OptimizeAlpha(const ObjectiveFunction& obj, Channel channel,
                                  std::optional<std::uint64_t> seed = std::nullopt) {
  if (channel == Channel::kTradeOff) return TradeoffAlpha(obj);
  const ErrorChannel ch =
      channel == Channel::kMagnitudeFirst ? ErrorChannel::kMagnitude : ErrorChannel::kPhase;
  auto q = [&](double a) { return obj(ch, a); };

  const auto grid = AlphaGrid();
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = q(grid[i]);

  double best_alpha = grid[0];
  double best_q = values[0];
  auto offer = [&](double a, double v) {
    if (v < best_q || (v == best_q && a < best_alpha)) {
      best_alpha = a;
      best_q = v;
    }
  };
  for (std::size_t i = 0; i < grid.size(); ++i) offer(grid[i], values[i]);

  std::vector<std::size_t> seeds;
  seeds.push_back(static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin()));
  std::mt19937_64 rng(seed.value_or(detail::EntropySeed()));
  std::uniform_real_distribution<double> uniform(kAlphaMin, kAlphaMax);
  for (int s = 0; s < kMultiStarts; ++s) {
    const double start = uniform(rng);
    auto i = static_cast<std::size_t>(std::llround((start - kAlphaMin) / kAlphaGridStep));
    i = std::min(i, grid.size() - 1);
    // Walk downhill on the scan to the nearest local minimum.
    for (;;) {
      if (i > 0 && values[i - 1] < values[i]) {
        --i;
      } else if (i + 1 < grid.size() && values[i + 1] < values[i]) {
        ++i;
      } else {
        break;
      }
    }
    seeds.push_back(i);
  }
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

  for (std::size_t i : seeds) {
    const double lo = grid[i == 0 ? 0 : i - 1];
    const double hi = grid[std::min(i + 1, grid.size() - 1)];
    const ScalarMinimum m = GoldenSectionMinimize(q, lo, hi, kAlphaTolerance);
    offer(m.x, m.value);
  }
  return detail::MakeResult(obj, channel, best_alpha, best_q);
}

inline DesignResult OptimizeAlpha(const DesignScenario& sc, Channel channel,
                                  std::optional<std::uint64_t> seed = std::nullopt) {
  return OptimizeAlpha(ObjectiveFunction(sc), channel, seed);
}

}  // namespace gbtkit

#endif  // GBTKIT_DESIGN_HPP_
