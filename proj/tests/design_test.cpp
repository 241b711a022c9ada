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

#include "gbtkit/design.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "gbtkit/error.hpp"
#include "gbtkit/response.hpp"

namespace gbtkit {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFc = 4823.0;
constexpr double kT = 1.0 / 12000.0;
const double kWc = 2.0 * kPi * kFc;

template <typename F>
ErrorCode CodeOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(-1);
}

TypeB CecWeights() {
  const double fr[] = {0.1, 0.2, 0.3, 0.5, 0.75, 1.0};
  const double k[] = {0.04, 0.05, 0.12, 0.21, 0.53, 0.05};
  TypeB b;
  for (int i = 0; i < 6; ++i) b.points.push_back({fr[i] * kFc, k[i], k[i]});
  return b;
}

DesignScenario Scenario(ScenarioKind kind, Normalization n = {}) {
  return DesignScenario(std::move(kind), LowPassPlant(kWc), kT, {}, n);
}

Normalization ReferenceAt75() { return {NormalizationMode::kReferenceFrequency, 0.75 * kFc}; }

// Errors by direct complex arithmetic on the map and the ZOH.
std::pair<double, double> OracleErrors(double f, double alpha) {
  const Complex z = std::exp(Complex(0.0, 2.0 * kPi * f * kT));
  const Complex s = (z - 1.0) / (kT * (alpha * z + 1.0 - alpha));
  const double x = kPi * f * kT;
  const Complex gd = kWc / (s + kWc) * (std::sin(x) / x) * std::exp(Complex(0.0, -x));
  const Complex ga = kWc / (Complex(0.0, 2.0 * kPi * f) + kWc);
  return {20.0 * std::log10(std::abs(gd / ga)), std::arg(gd / ga) * 180.0 / kPi};
}

TEST(MeasureDistortion, ReferenceLowPass) {
  const PoleZeroGain lpf = LowPassPlant(kWc);
  EXPECT_NEAR(MagError(lpf, kT, 0.75 * kFc, 0.5), -2.85, 5e-3);
  EXPECT_NEAR(std::abs(MagError(lpf, kT, 0.75 * kFc, 1.0)), 3.30, 5e-3);
  EXPECT_NEAR(std::abs(PhaseError(lpf, kT, 0.75 * kFc, 1.0)), 31.25, 5e-3);
  EXPECT_NEAR(std::abs(PhaseError(lpf, kT, 0.75 * kFc, 0.5)), 65.13, 5e-3);
  for (double alpha : {0.5, 0.7, 1.0}) {
    EXPECT_NEAR(MagError(lpf, kT, 1e-4, alpha), 0.0, 1e-9);
    EXPECT_NEAR(PhaseError(lpf, kT, 1e-4, alpha), 0.0, 1e-5);
  }
}

TEST(MeasureDistortion, PropertyMatchesOracle) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double alpha = 0.5 + 0.5 * u(rng);
    const double f = (0.01 + 0.98 * u(rng)) * 6000.0;
    const Distortion d = MeasureDistortion(LowPassPlant(kWc), kT, f, alpha);
    const auto [m, p] = OracleErrors(f, alpha);
    EXPECT_NEAR(d.mag_db, m, 1e-10);
    EXPECT_NEAR(d.phase_deg, p, 1e-9);
  }
}

TEST(DesignScenario, Validation) {
  EXPECT_EQ(CodeOf([] { Scenario(TypeA{6000.0}); }), ErrorCode::kInvalidScenario);
  EXPECT_EQ(CodeOf([] { Scenario(TypeA{0.0}); }), ErrorCode::kInvalidScenario);
  EXPECT_EQ(CodeOf([] { Scenario(TypeB{}); }), ErrorCode::kInvalidScenario);
  EXPECT_EQ(CodeOf([] { Scenario(TypeB{{{100.0, -1.0, 1.0}}}); }), ErrorCode::kInvalidScenario);
  EXPECT_EQ(CodeOf([] { Scenario(TypeB{{{100.0, 0.0, 0.0}}}); }), ErrorCode::kInvalidScenario);
  EXPECT_EQ(CodeOf([] { Scenario(TypeC{2000.0, 1000.0}); }), ErrorCode::kInvalidScenario);
  EXPECT_EQ(CodeOf([] { Scenario(TypeA{1000.0}, {NormalizationMode::kReferenceFrequency, 7000.0}); }),
            ErrorCode::kInvalidScenario);
  EXPECT_EQ(CodeOf([] { DesignScenario(TypeA{1.0}, LowPassPlant(kWc), 0.0); }), ErrorCode::kInvalidScenario);
}

TEST(NormalizationRef, TypeAReferences) {
  const DesignScenario sc = Scenario(TypeA{0.75 * kFc});
  // Brute-force maximum over alpha.
  double mag = 0.0, ph = 0.0;
  for (int i = 0; i <= 5000; ++i) {
    const auto [m, p] = OracleErrors(0.75 * kFc, 0.5 + 1e-4 * i);
    mag = std::max(mag, std::abs(m));
    ph = std::max(ph, std::abs(p));
  }
  EXPECT_NEAR(NormalizationRef(sc, ErrorChannel::kMagnitude), 3.97, 5e-3);
  EXPECT_NEAR(NormalizationRef(sc, ErrorChannel::kMagnitude), mag, 1e-4);
  EXPECT_NEAR(NormalizationRef(sc, ErrorChannel::kPhase), 65.13, 5e-3);
  EXPECT_NEAR(NormalizationRef(sc, ErrorChannel::kPhase), ph, 1e-9);
}

TEST(NormalizationRef, DegenerateWhenDiscretizationIsExact) {
  // A static gain is reproduced exactly once the hold is left out.
  const DesignScenario sc(TypeA{1000.0}, PoleZeroGain(2.0, {}, {}), kT, ResponseOptions{false, 0.0, false});
  EXPECT_EQ(CodeOf([&] { NormalizationRef(sc, ErrorChannel::kMagnitude); }), ErrorCode::kDegenerateScenario);
}

TEST(Objective, TypeATabulatedValues) {
  const DesignScenario sc = Scenario(TypeA{0.75 * kFc});
  EXPECT_NEAR(Objective(sc, ErrorChannel::kMagnitude, 0.5), 0.718, 5e-4);
  EXPECT_NEAR(Objective(sc, ErrorChannel::kPhase, 1.0), 0.480, 5e-4);
  EXPECT_DOUBLE_EQ(Objective(sc, ErrorChannel::kPhase, 0.5), 1.0);
  EXPECT_EQ(CodeOf([&] { Objective(sc, ErrorChannel::kPhase, 0.4); }), ErrorCode::kConstraintViolation);
  EXPECT_EQ(CodeOf([&] { Objective(sc, ErrorChannel::kPhase, 1.01); }), ErrorCode::kConstraintViolation);
}

TEST(Objective, PropertyPeaksAtOne) {
  for (const ScenarioKind& kind : {ScenarioKind{TypeA{0.75 * kFc}}, ScenarioKind{CecWeights()},
                                   ScenarioKind{TypeA{0.3 * kFc}}, ScenarioKind{TypeB{{{500.0, 1.0, 2.0}, {3000.0, 0.5, 0.1}}}}}) {
    const ObjectiveFunction obj(Scenario(kind));
    for (ErrorChannel ch : {ErrorChannel::kMagnitude, ErrorChannel::kPhase}) {
      double mx = 0.0;
      for (double a : AlphaGrid()) {
        const double q = obj(ch, a);
        EXPECT_GE(q, 0.0);
        EXPECT_LE(q, 1.0 + 1e-9);
        mx = std::max(mx, q);
      }
      EXPECT_NEAR(mx, 1.0, 1e-5);
    }
  }
}

TEST(Objective, PropertyBoundedForRandomScenarios) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    ScenarioKind kind;
    if (trial % 3 == 0) {
      kind = TypeA{(0.05 + 0.9 * u(rng)) * 6000.0};
    } else if (trial % 3 == 1) {
      TypeB b;
      for (int i = 0; i < 4; ++i) b.points.push_back({(0.05 + 0.9 * u(rng)) * 6000.0, u(rng), u(rng)});
      kind = b;
    } else {
      const double lo = (0.05 + 0.4 * u(rng)) * 6000.0;
      kind = TypeC{lo, lo + 0.4 * 6000.0 * u(rng) + 10.0};
    }
    const ObjectiveFunction obj(Scenario(kind));
    for (int i = 0; i < 50; ++i) {
      const double a = 0.5 + 0.5 * u(rng);
      const RawObjective q = obj.both(a);
      EXPECT_GE(q.mag, 0.0);
      EXPECT_LE(q.mag, 1.0 + 1e-9);
      EXPECT_GE(q.phase, 0.0);
      EXPECT_LE(q.phase, 1.0 + 1e-9);
    }
  }
}

TEST(OptimizeAlpha, TypeAChannels) {
  const DesignScenario sc = Scenario(TypeA{0.75 * kFc});
  const DesignResult mag = OptimizeAlpha(sc, Channel::kMagnitudeFirst, 1);
  EXPECT_DOUBLE_EQ(mag.alpha_opt, 0.5);
  EXPECT_NEAR(mag.q_value, 0.718, 5e-4);
  EXPECT_DOUBLE_EQ(mag.q_magnitude, mag.q_value);
  const DesignResult ph = OptimizeAlpha(sc, Channel::kPhaseFirst, 1);
  EXPECT_DOUBLE_EQ(ph.alpha_opt, 1.0);
  EXPECT_NEAR(ph.q_value, 0.480, 5e-4);
  EXPECT_NEAR(ph.normalization_refs.phase_deg, 65.13, 5e-3);
}

TEST(OptimizeAlpha, TypeBMagnitudeFirst) {
  const DesignResult ref = OptimizeAlpha(Scenario(CecWeights(), ReferenceAt75()), Channel::kMagnitudeFirst, 1);
  EXPECT_DOUBLE_EQ(ref.alpha_opt, 0.5);
  EXPECT_NEAR(ref.q_value, 0.698, 5e-4);
  // The scenario-maximum convention keeps the boundary minimizer but rescales Q.
  const DesignResult own = OptimizeAlpha(Scenario(CecWeights()), Channel::kMagnitudeFirst, 1);
  EXPECT_DOUBLE_EQ(own.alpha_opt, 0.5);
  EXPECT_NEAR(own.q_value, 0.813, 5e-4);
}

TEST(TradeoffAlpha, TabulatedDesigns) {
  const DesignResult a = TradeoffAlpha(Scenario(TypeA{0.75 * kFc}));
  EXPECT_NEAR(a.alpha_opt, 0.575, 0.001);
  EXPECT_NEAR(a.q_value, 0.895, 0.001);
  const DesignResult b = TradeoffAlpha(Scenario(CecWeights(), ReferenceAt75()));
  EXPECT_NEAR(b.alpha_opt, 0.549, 0.001);
  EXPECT_NEAR(b.q_value, 0.791, 0.001);
  const DesignResult c = TradeoffAlpha(Scenario(TypeC{0.1 * kFc, kFc}, ReferenceAt75()));
  EXPECT_NEAR(c.alpha_opt, 0.593, 0.001);
  EXPECT_NEAR(c.q_value, 0.625, 0.001);
  EXPECT_EQ(c.channel, Channel::kTradeOff);
}

TEST(TradeoffAlpha, PropertyEqualizesChannels) {
  for (const ScenarioKind& kind : {ScenarioKind{TypeA{0.75 * kFc}}, ScenarioKind{TypeA{0.4 * kFc}},
                                   ScenarioKind{CecWeights()}, ScenarioKind{TypeC{0.1 * kFc, kFc}}}) {
    for (Normalization n : {Normalization{}, ReferenceAt75()}) {
      const DesignResult r = OptimizeAlpha(Scenario(kind, n), Channel::kTradeOff, 5);
      EXPECT_LT(std::abs(r.q_magnitude - r.q_phase), 1e-6);
      EXPECT_GE(r.alpha_opt, 0.5);
      EXPECT_LE(r.alpha_opt, 1.0);
    }
  }
}

TEST(TradeoffAlpha, NoCrossing) {
  // Normalized at 0.75 f_c, the magnitude error at f_c stays above the phase error.
  const DesignScenario sc = Scenario(TypeA{kFc}, ReferenceAt75());
  EXPECT_EQ(CodeOf([&] { TradeoffAlpha(sc); }), ErrorCode::kNoCrossing);
}

TEST(OptimizeAlpha, PropertyDominatesFineGrid) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<DesignScenario> scenarios{Scenario(TypeA{0.75 * kFc}), Scenario(CecWeights()),
                                        Scenario(CecWeights(), ReferenceAt75())};
  for (int i = 0; i < 4; ++i) scenarios.push_back(Scenario(TypeA{(0.05 + 0.9 * u(rng)) * 6000.0}));
  scenarios.push_back(Scenario(TypeB{{{300.0, 1.0, 1.0}, {2500.0, 1.0, 0.2}, {5000.0, 0.3, 1.0}}}));
  for (const DesignScenario& sc : scenarios) {
    const ObjectiveFunction obj(sc);
    for (Channel ch : {Channel::kMagnitudeFirst, Channel::kPhaseFirst}) {
      const ErrorChannel ec = ch == Channel::kMagnitudeFirst ? ErrorChannel::kMagnitude : ErrorChannel::kPhase;
      double grid_best = 1e300;
      for (int k = 0; k <= 5000; ++k) grid_best = std::min(grid_best, obj(ec, 0.5 + 1e-4 * k));
      const DesignResult r = OptimizeAlpha(obj, ch, 7);
      EXPECT_LE(r.q_value, grid_best + 1e-6);
      EXPECT_DOUBLE_EQ(r.q_value, obj(ec, r.alpha_opt));
    }
  }
}

TEST(OptimizeAlpha, InteriorMinimumRefined) {
  // A single point where the magnitude error is non-monotone in alpha.
  const ObjectiveFunction obj(Scenario(TypeB{{{0.75 * kFc, 1.0, 0.0}, {0.3 * kFc, 0.0, 1.0}}}));
  const DesignResult r = OptimizeAlpha(obj, Channel::kMagnitudeFirst, 3);
  for (int k = 0; k <= 5000; ++k) {
    EXPECT_LE(r.q_value, obj(ErrorChannel::kMagnitude, 0.5 + 1e-4 * k) + 1e-9);
  }
}

TEST(OptimizeAlpha, PropertyDeterministicForSeed) {
  const DesignScenario sc = Scenario(TypeC{0.1 * kFc, kFc});
  for (Channel ch : {Channel::kMagnitudeFirst, Channel::kPhaseFirst, Channel::kTradeOff}) {
    const DesignResult a = OptimizeAlpha(sc, ch, 99);
    const DesignResult b = OptimizeAlpha(sc, ch, 99);
    EXPECT_EQ(a.alpha_opt, b.alpha_opt);
    EXPECT_EQ(a.q_value, b.q_value);
    EXPECT_EQ(a.q_magnitude, b.q_magnitude);
    EXPECT_EQ(a.q_phase, b.q_phase);
    // The coarse scan fixes the basin, so other seeds agree as well.
    const DesignResult c = OptimizeAlpha(sc, ch, 12345);
    EXPECT_EQ(a.alpha_opt, c.alpha_opt);
  }
}

TEST(AlphaGrid, BoundaryInclusive) {
  const auto g = AlphaGrid();
  ASSERT_EQ(g.size(), 501u);
  EXPECT_EQ(g.front(), 0.5);
  EXPECT_EQ(g.back(), 1.0);
}

}  // namespace
}  // namespace gbtkit
