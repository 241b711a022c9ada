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

#ifndef GBTKIT_GBT_HPP_
#define GBTKIT_GBT_HPP_

// The generalized bilinear transformation
//
//     s = (1/T) (z - 1) / (alpha z + 1 - alpha)
//
// together with its named special cases, the pointwise s <-> z maps, the
// z-plane image of the left half s-plane and the hexagonal integration rule
// the map is equivalent to.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gbtkit/error.hpp"
#include "gbtkit/ratfun.hpp"

namespace gbtkit {

// Fraction of each integration step treated as a backward rectangle.
class ShapeFactor {
 public:
  explicit ShapeFactor(double alpha) : alpha_(alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
      throw Error(ErrorCode::kParameterOutOfRange,
                  "shape factor " + std::to_string(alpha) + " outside [0, 1]");
    }
  }

  // Unbounded range used by the extended-GBT alias; only finiteness is checked.
  static ShapeFactor Extended(double alpha) {
    if (!std::isfinite(alpha)) {
      throw Error(ErrorCode::kParameterOutOfRange, "shape factor must be finite");
    }
    ShapeFactor s(0.5);
    s.alpha_ = alpha;
    return s;
  }

  double value() const { return alpha_; }

  // Left half s-plane lands inside the unit circle.
  bool is_stable() const { return alpha_ >= 0.5 && alpha_ <= 1.0; }

  friend bool operator==(const ShapeFactor&, const ShapeFactor&) = default;

 private:
  double alpha_;
};

class DiscretizationSpec {
 public:
  DiscretizationSpec(ShapeFactor shape, double period) : shape_(shape), period_(period) {
    if (!(period > 0.0) || !std::isfinite(period)) {
      throw Error(ErrorCode::kParameterOutOfRange, "sampling period must be > 0");
    }
  }

  static DiscretizationSpec FromSampleRate(double alpha, double f_samp) {
    if (!(f_samp > 0.0) || !std::isfinite(f_samp)) {
      throw Error(ErrorCode::kParameterOutOfRange, "sampling frequency must be > 0");
    }
    return DiscretizationSpec(ShapeFactor(alpha), 1.0 / f_samp);
  }

  const ShapeFactor& shape() const { return shape_; }
  double alpha() const { return shape_.value(); }
  double period() const { return period_; }
  double sample_rate() const { return 1.0 / period_; }
  double nyquist() const { return 0.5 / period_; }

 private:
  ShapeFactor shape_;
  double period_;
};

// s-plane substitution; the plant must be proper.
inline RationalFunction GbtSubstitute(const RationalFunction& plant, const DiscretizationSpec& spec) {
  if (!plant.is_proper()) {
    throw Error(ErrorCode::kImproperTransferFunction, "plant numerator degree exceeds denominator");
  }
  const double inv_t = 1.0 / spec.period();
  const double alpha = spec.alpha();
  return MoebiusSubstitute(plant, inv_t, -inv_t, alpha, 1.0 - alpha);
}

inline RationalFunction GbtSubstitute(const PoleZeroGain& plant, const DiscretizationSpec& spec) {
  return GbtSubstitute(PzkToRational(plant), spec);
}

// Named discretization methods and their shape-factor equivalents.
struct Euler {};
struct Tustin {};
struct AlAlaoui {
  double a;
};
struct GbtExtended {
  double alpha_g;
};
struct PolePlacement {
  double alpha_p;
};
using Method = std::variant<Euler, Tustin, AlAlaoui, GbtExtended, PolePlacement>;

inline ShapeFactor AliasToAlpha(const Method& method) {
  struct Visitor {
    ShapeFactor operator()(Euler) const { return ShapeFactor(1.0); }
    ShapeFactor operator()(Tustin) const { return ShapeFactor(0.5); }
    ShapeFactor operator()(AlAlaoui m) const {
      if (!(m.a >= 0.0 && m.a <= 1.0)) {
        throw Error(ErrorCode::kParameterOutOfRange, "Al-Alaoui parameter a outside [0, 1]");
      }
      return ShapeFactor((1.0 + m.a) / 2.0);
    }
    ShapeFactor operator()(GbtExtended m) const { return ShapeFactor::Extended(m.alpha_g); }
    ShapeFactor operator()(PolePlacement m) const {
      if (!(m.alpha_p >= 0.0 && m.alpha_p <= 1.0)) {
        throw Error(ErrorCode::kParameterOutOfRange, "pole-placement parameter outside [0, 1]");
      }
      return ShapeFactor(1.0 / (1.0 + m.alpha_p));
    }
  };
  return std::visit(Visitor{}, method);
}

// Tustin frequency pre-warping, rad/s in and out.
inline double Prewarp(double omega_ori, double period) {
  if (!(omega_ori > 0.0) || !(period > 0.0)) {
    throw Error(ErrorCode::kParameterOutOfRange, "prewarp needs omega > 0 and T > 0");
  }
  const double x = omega_ori * period;
  if (!(x < std::numbers::pi)) {
    throw Error(ErrorCode::kNyquistExceeded, "prewarp frequency at or above Nyquist");
  }
  return (2.0 / period) * std::tan(x / 2.0);
}

namespace detail {

inline bool Vanishes(Complex value, double scale) {
  return std::abs(value) <= 1e-15 * scale;
}

}  // namespace detail

// First-order image z = (1 + s(1-alpha)T) / (1 - s alpha T).
inline Complex SToZPoint(Complex s, const DiscretizationSpec& spec) {
  const double t = spec.period();
  const double alpha = spec.alpha();
  const Complex den = 1.0 - s * alpha * t;
  if (detail::Vanishes(den, 1.0 + std::abs(s * alpha * t))) {
    throw Error(ErrorCode::kPoleOfMap, "s maps to z = infinity");
  }
  return (1.0 + s * (1.0 - alpha) * t) / den;
}

inline Complex ZToSPoint(Complex z, const DiscretizationSpec& spec) {
  const double alpha = spec.alpha();
  const Complex den = alpha * z + (1.0 - alpha);
  if (detail::Vanishes(den, std::abs(alpha * z) + std::abs(1.0 - alpha))) {
    throw Error(ErrorCode::kPoleOfMap, "z maps to s = infinity");
  }
  return (z - 1.0) / (spec.period() * den);
}

// sigma_s and omega_s written out in gamma_z = Re z, zeta_z = Im z.
inline Complex ZToSPointExpanded(Complex z, const DiscretizationSpec& spec) {
  const double alpha = spec.alpha();
  const double t = spec.period();
  const double g = z.real();
  const double zeta = z.imag();
  const double den = (alpha * g + 1.0 - alpha) * (alpha * g + 1.0 - alpha) + (alpha * zeta) * (alpha * zeta);
  if (den == 0.0) throw Error(ErrorCode::kPoleOfMap, "z maps to s = infinity");
  const double sigma = (alpha * (g - 1.0) * (g - 1.0) + g - 1.0 + alpha * zeta * zeta) / (t * den);
  const double omega = zeta / (t * den);
  return {sigma, omega};
}

// z-plane disk |z - center| <= radius that the left half s-plane maps onto.
struct StabilityDisk {
  double center;
  double radius;

  double gamma_z1() const { return center + radius; }
  double gamma_z2() const { return center - radius; }
  bool inside_unit_circle() const { return gamma_z2() >= -1.0; }
  bool contains(Complex z, double tol = 0.0) const {
    return std::abs(z - center) <= radius * (1.0 + tol);
  }
};

inline StabilityDisk StabilityDiskFor(const ShapeFactor& shape) {
  const double alpha = shape.value();
  if (!(alpha > 0.0)) {
    throw Error(ErrorCode::kParameterOutOfRange, "stability disk needs alpha > 0");
  }
  const double radius = 1.0 / (2.0 * alpha);
  return StabilityDisk{1.0 - radius, radius};
}

inline constexpr double kUnitCircleTolerance = 1e-10;

struct StabilityReport {
  bool stable = true;
  std::vector<Complex> poles;
  double max_pole_radius = 0.0;
};

// True iff every root of the denominator has |z| < 1 + 1e-10.
inline StabilityReport IsDiscreteStable(const RationalFunction& ztf) {
  StabilityReport report;
  if (ztf.den().degree() < 1) return report;
  report.poles = PolyRoots(ztf.den());
  for (const Complex& p : report.poles) {
    report.max_pole_radius = std::max(report.max_pole_radius, std::abs(p));
  }
  report.stable = report.max_pole_radius < 1.0 + kUnitCircleTolerance;
  return report;
}

// One step of the hexagonal rule: the forward rectangle carries the previous
// sample for (1 - alpha) T, the backward rectangle the current one for alpha T.
struct HexagonalStep {
  double e_prev;
  double e_curr;
  double period;
  double alpha;
  double area_fw;
  double area_bw;

  double area() const { return area_fw + area_bw; }
  double backward_fraction() const { return area_bw / (area_bw + area_fw); }
};

struct HexagonalIntegration {
  std::vector<double> output;         // u(0) = 0, then one value per sample
  std::vector<HexagonalStep> steps;   // steps[n - 1] produced output[n]
};

inline HexagonalIntegration HexagonalIntegrate(std::span<const double> samples,
                                               const DiscretizationSpec& spec) {
  if (samples.empty()) {
    throw Error(ErrorCode::kParameterOutOfRange, "hexagonal integration needs one sample");
  }
  const double t = spec.period();
  const double alpha = spec.alpha();
  HexagonalIntegration out;
  out.output.reserve(samples.size());
  out.steps.reserve(samples.size() - 1);
  out.output.push_back(0.0);
  for (std::size_t n = 1; n < samples.size(); ++n) {
    HexagonalStep step{samples[n - 1], samples[n], t, alpha,
                       (1.0 - alpha) * t * samples[n - 1], alpha * t * samples[n]};
    out.output.push_back(out.output.back() + step.area_fw + step.area_bw);
    out.steps.push_back(step);
  }
  return out;
}

}  // namespace gbtkit

#endif  // GBTKIT_GBT_HPP_
