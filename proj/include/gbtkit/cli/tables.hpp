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

#ifndef GBTKIT_CLI_TABLES_HPP_
#define GBTKIT_CLI_TABLES_HPP_

// Tabulated design and error tables for the RC low-pass reference case
// (R = 7.5 kOhm, C = 4.4 nF, f_c = 4823 Hz, f_samp = 12 kHz) and the
// comparison harness behind `gbtkit verify-tables`.
//
// The tabulated magnitude and phase error tables label their rows with
// alpha' = 1.5 - alpha relative to s = (1/T)(z - 1)/(alpha z + 1 - alpha):
// every entry matches the computed value at alpha = 1.5 - alpha'. Both
// pairings are reported; only the relabeled one gates the result.

#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gbtkit/design.hpp"
#include "gbtkit/response.hpp"

namespace gbtkit::cli {

inline constexpr double kRefCutoffHz = 4823.0;
inline constexpr double kRefSampleRate = 12000.0;
inline constexpr double kTypeAFraction = 0.75;

inline PoleZeroGain ReferenceLpf() { return LowPassPlant(kTwoPi * kRefCutoffHz); }

struct WeightRow {
  double f_fraction;  // of f_c
  double weight;
};

inline constexpr std::array<WeightRow, 6> kCecWeights{{
    {0.10, 0.04}, {0.20, 0.05}, {0.30, 0.12}, {0.50, 0.21}, {0.75, 0.53}, {1.00, 0.05}}};

inline constexpr std::array<double, 6> kTableAlphaLabels{0.5, 0.6, 0.7, 0.8, 0.9, 1.0};

// Theoretical magnitude error, dB, by printed alpha label.
inline constexpr std::array<double, 6> kMagErr75{3.30, 3.61, 3.88, 3.96, 3.71, 2.85};
inline constexpr std::array<double, 6> kMagErr100{4.22, 4.95, 5.89, 7.08, 8.30, 8.02};
// Theoretical phase error, degrees, by printed alpha label.
inline constexpr std::array<double, 6> kPhaseErr75{31.25, 35.04, 40.23, 47.20, 55.90, 65.13};
inline constexpr std::array<double, 6> kPhaseErr100{34.90, 37.70, 42.40, 50.90, 67.41, 95.45};

inline constexpr double kMagTolerance = 0.02;
inline constexpr double kPhaseTolerance = 0.05;

struct DesignRow {
  char type;
  Channel channel;
  double alpha;
  double q;
};

inline constexpr std::array<DesignRow, 9> kDesignTable{{
    {'A', Channel::kMagnitudeFirst, 0.5, 0.718},
    {'A', Channel::kTradeOff, 0.575, 0.895},
    {'A', Channel::kPhaseFirst, 1.0, 0.480},
    {'B', Channel::kMagnitudeFirst, 0.5, 0.698},
    {'B', Channel::kTradeOff, 0.549, 0.791},
    {'B', Channel::kPhaseFirst, 1.0, 0.427},
    {'C', Channel::kMagnitudeFirst, 0.5, 0.504},
    {'C', Channel::kTradeOff, 0.593, 0.625},
    {'C', Channel::kPhaseFirst, 1.0, 0.388},
}};

inline ScenarioKind ReferenceKind(char type) {
  const double fc = kRefCutoffHz;
  if (type == 'A') return TypeA{kTypeAFraction * fc};
  if (type == 'B') {
    TypeB b;
    for (const auto& w : kCecWeights) b.points.push_back({w.f_fraction * fc, w.weight, w.weight});
    return b;
  }
  return TypeC{0.1 * fc, fc};
}

inline DesignScenario ReferenceScenario(char type, NormalizationMode mode) {
  Normalization n{mode, mode == NormalizationMode::kReferenceFrequency ? kTypeAFraction * kRefCutoffHz : 0.0};
  return DesignScenario(ReferenceKind(type), ReferenceLpf(), 1.0 / kRefSampleRate, {}, n);
}

// Tolerances on alpha and Q for one design-table row.
inline std::pair<double, double> DesignTolerance(const DesignRow& row) {
  if (row.type == 'A') {
    if (row.channel == Channel::kTradeOff) return {0.010, 0.010};
    return {1e-6, 0.005};
  }
  return {0.02, 0.03};
}

struct TableCheck {
  std::string group;
  std::string label;
  double computed;
  std::optional<double> tabulated;
  double lower;  // accepted interval for `computed`
  double upper;
  bool pass;
  bool gating;  // false for informational pairings expected to disagree
};

struct TableReport {
  std::vector<TableCheck> checks;

  bool pass() const {
    for (const auto& c : checks) {
      if (c.gating && !c.pass) return false;
    }
    return true;
  }

  void Add(std::string group, std::string label, double computed, double tabulated,
           double tolerance, bool gating) {
    checks.push_back({std::move(group), std::move(label), computed, tabulated,
                      tabulated - tolerance, tabulated + tolerance,
                      std::abs(computed - tabulated) <= tolerance, gating});
  }

  void AddRange(std::string group, std::string label, double computed, double lower,
                double upper, bool gating) {
    checks.push_back({std::move(group), std::move(label), computed, std::nullopt, lower, upper,
                      computed >= lower && computed <= upper, gating});
  }
};

namespace detail {

inline std::string Label(const char* fmt, double a, double b) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), fmt, a, b);
  return buf;
}

inline void AddErrorTable(TableReport& report, const char* name, bool magnitude,
                          const std::array<double, 6>& row75, const std::array<double, 6>& row100) {
  const PoleZeroGain plant = ReferenceLpf();
  const double period = 1.0 / kRefSampleRate;
  const double tol = magnitude ? kMagTolerance : kPhaseTolerance;
  for (int block = 0; block < 2; ++block) {
    const double frac = block == 0 ? kTypeAFraction : 1.0;
    const auto& tabulated = block == 0 ? row75 : row100;
    for (std::size_t i = 0; i < kTableAlphaLabels.size(); ++i) {
      const double label = kTableAlphaLabels[i];
      for (bool relabel : {true, false}) {
        const double alpha = relabel ? 1.5 - label : label;
        const Distortion d = MeasureDistortion(plant, period, frac * kRefCutoffHz, alpha);
        const double value = std::abs(magnitude ? d.mag_db : d.phase_deg);
        report.Add(std::string(name) + (relabel ? ".relabeled" : ".faithful_labels"),
                   Label("label alpha=%.1f, f=%.0f%%f_c", label, frac * 100.0), value,
                   tabulated[i], tol, relabel);
      }
    }
  }
}

}  // namespace detail

inline void AddDesignTable(TableReport& report, NormalizationMode mode, bool gating_bc) {
  const bool ref_mode = mode == NormalizationMode::kReferenceFrequency;
  const std::string group = ref_mode ? "design_table.reference_frequency" : "design_table.scenario_max";
  for (char type : {'A', 'B', 'C'}) {
    const ObjectiveFunction obj(ReferenceScenario(type, mode));
    for (const auto& row : kDesignTable) {
      if (row.type != type) continue;
      const DesignResult r = OptimizeAlpha(obj, row.channel, 0x5eedULL);
      const auto [tol_a, tol_q] = DesignTolerance(row);
      const bool gating = type == 'A' || gating_bc;
      const std::string label = std::string("type ") + type + " " + ChannelName(row.channel);
      report.Add(group, label + " alpha", r.alpha_opt, row.alpha, tol_a, gating);
      report.Add(group, label + " Q", r.q_value, row.q, tol_q, gating);
    }
  }
}

// Mag/phase error of faithful Tustin at f_c versus sample rate.
inline void AddSampleRateStudy(TableReport& report) {
  const PoleZeroGain plant = ReferenceLpf();
  const Distortion d12 = MeasureDistortion(plant, 1.0 / 12000.0, kRefCutoffHz, 0.5);
  const Distortion d48 = MeasureDistortion(plant, 1.0 / 48000.0, kRefCutoffHz, 0.5);
  report.AddRange("sample_rate_study", "|L_err| at f_c, 12 kHz, dB", std::abs(d12.mag_db), 7.9,
                  8.1, true);
  report.AddRange("sample_rate_study", "|L_err| at f_c, 48 kHz, dB", std::abs(d48.mag_db), 0.0,
                  0.25, true);
  report.AddRange("sample_rate_study", "|phi_err| at f_c, 48 kHz, deg", std::abs(d48.phase_deg),
                  0.0, 20.0, true);
}

inline TableReport VerifyTables() {
  TableReport report;
  detail::AddErrorTable(report, "magnitude_error_table", true, kMagErr75, kMagErr100);
  detail::AddErrorTable(report, "phase_error_table", false, kPhaseErr75, kPhaseErr100);
  AddDesignTable(report, NormalizationMode::kReferenceFrequency, true);
  AddDesignTable(report, NormalizationMode::kScenarioMaximum, false);
  AddSampleRateStudy(report);
  return report;
}

inline nlohmann::ordered_json ToJson(const TableReport& report) {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"group", c.group},
                      {"case", c.label},
                      {"computed", c.computed},
                      {"tabulated", c.tabulated ? nlohmann::ordered_json(*c.tabulated)
                                                : nlohmann::ordered_json(nullptr)},
                      {"lower", c.lower},
                      {"upper", c.upper},
                      {"pass", c.pass},
                      {"gating", c.gating}});
  }
  return {
      {"reference", {{"f_c_hz", kRefCutoffHz}, {"f_samp_hz", kRefSampleRate}, {"R_ohm", 7.5e3}, {"C_farad", 4.4e-9}}},
      {"notes",
       {"error tables: tabulated alpha labels correspond to alpha = 1.5 - label; "
        "'.relabeled' rows gate, '.faithful_labels' rows are expected to fail",
        "design_table.scenario_max: B/C rows normalize by the scenario's own maximum and "
        "do not reproduce the tabulated B/C values (convention mismatch, informational)",
        "design_table.reference_frequency: all types normalized by max over alpha of |err| "
        "at 0.75 f_c",
        "experimental error columns are hardware measurements and are not reproduced"}},
      {"checks", checks},
      {"pass", report.pass()}};
}

}  // namespace gbtkit::cli

#endif  // GBTKIT_CLI_TABLES_HPP_
