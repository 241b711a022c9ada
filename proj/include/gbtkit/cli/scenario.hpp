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

#ifndef GBTKIT_CLI_SCENARIO_HPP_
#define GBTKIT_CLI_SCENARIO_HPP_

// Scenario documents (JSON), schema in docs/formats.md. Minimal Type A:
//
//   {"kind": "A", "f_exp": 3617.25, "plant": "lpf:fc=4823", "f_samp": 12000}

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gbtkit/cli/parse.hpp"
#include "gbtkit/design.hpp"
#include "gbtkit/error.hpp"

namespace gbtkit::cli {

struct ScenarioFile {
  DesignScenario scenario;
  std::optional<Channel> channel;
  std::optional<std::uint64_t> seed;
};

inline Channel ParseChannel(std::string_view text) {
  if (text == "mag" || text == "magnitude" || text == "magnitude_first") return Channel::kMagnitudeFirst;
  if (text == "phase" || text == "phase_first") return Channel::kPhaseFirst;
  if (text == "tradeoff" || text == "trade_off" || text == "trade-off") return Channel::kTradeOff;
  throw Error(ErrorCode::kParseError, "unknown channel '" + std::string(text) + "'");
}

namespace detail {

using JsonDoc = nlohmann::json;

inline double Number(const JsonDoc& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::kParseError, std::string("missing field '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number()) throw Error(ErrorCode::kParseError, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

inline Complex ComplexValue(const JsonDoc& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_string()) return ParseComplex(v.get<std::string>());
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw Error(ErrorCode::kParseError, "complex values are numbers, \"a+bi\" strings or [re, im]");
}

inline std::vector<Complex> ComplexList(const JsonDoc& j, const char* key) {
  std::vector<Complex> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array()) throw Error(ErrorCode::kParseError, std::string("'") + key + "' must be a list");
  for (const auto& v : j.at(key)) out.push_back(ComplexValue(v));
  return out;
}

inline PoleZeroGain PlantValue(const JsonDoc& v) {
  if (v.is_string()) return ParsePlant(v.get<std::string>());
  if (v.is_object()) {
    return PoleZeroGain(Number(v, "gain"), ComplexList(v, "zeros"), ComplexList(v, "poles"));
  }
  throw Error(ErrorCode::kParseError, "plant must be a string or {gain, zeros, poles}");
}

}  // namespace detail

inline ScenarioFile ParseScenario(const nlohmann::json& j) {
  using detail::Number;
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "scenario must be a JSON object");
  if (!j.contains("plant")) throw Error(ErrorCode::kParseError, "missing field 'plant'");
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    throw Error(ErrorCode::kParseError, "missing string field 'kind' (A, B or C)");
  }
  const double f_samp = Number(j, "f_samp");
  if (!(f_samp > 0.0)) throw Error(ErrorCode::kInvalidScenario, "f_samp must be > 0");

  const std::string kind = j.at("kind").get<std::string>();
  ScenarioKind sk = TypeA{0.0};
  if (kind == "A" || kind == "a") {
    sk = TypeA{Number(j, "f_exp")};
  } else if (kind == "B" || kind == "b") {
    if (!j.contains("points") || !j.at("points").is_array()) {
      throw Error(ErrorCode::kParseError, "Type B needs a 'points' list");
    }
    TypeB b;
    for (const auto& p : j.at("points")) {
      const double k = p.contains("k") ? Number(p, "k") : 0.0;
      b.points.push_back({Number(p, "f"), p.contains("k_mag") ? Number(p, "k_mag") : k,
                          p.contains("k_phase") ? Number(p, "k_phase") : k});
    }
    sk = std::move(b);
  } else if (kind == "C" || kind == "c") {
    sk = TypeC{Number(j, "f_start"), Number(j, "f_end")};
  } else {
    throw Error(ErrorCode::kParseError, "kind must be A, B or C");
  }

  ResponseOptions response;
  if (j.contains("zoh")) response.include_zoh = j.at("zoh").get<bool>();
  if (j.contains("delay_ns")) response.extra_delay = Number(j, "delay_ns") * 1e-9;

  Normalization norm;
  if (j.contains("normalization")) {
    const auto& n = j.at("normalization");
    const std::string mode = n.value("mode", std::string("scenario_max"));
    if (mode == "scenario_max") {
      norm.mode = NormalizationMode::kScenarioMaximum;
    } else if (mode == "reference_frequency") {
      norm.mode = NormalizationMode::kReferenceFrequency;
      norm.reference_freq = Number(n, "f_ref");
    } else {
      throw Error(ErrorCode::kParseError, "normalization mode must be scenario_max or reference_frequency");
    }
  }

  ScenarioFile out{DesignScenario(std::move(sk), detail::PlantValue(j.at("plant")), 1.0 / f_samp,
                                  response, norm),
                   std::nullopt, std::nullopt};
  if (j.contains("channel")) out.channel = ParseChannel(j.at("channel").get<std::string>());
  if (j.contains("seed")) out.seed = j.at("seed").get<std::uint64_t>();
  return out;
}

inline ScenarioFile LoadScenarioFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open scenario file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
    return ParseScenario(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
}

}  // namespace gbtkit::cli

#endif  // GBTKIT_CLI_SCENARIO_HPP_
