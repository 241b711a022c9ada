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

#ifndef GBTKIT_CLI_EMIT_HPP_
#define GBTKIT_CLI_EMIT_HPP_

// JSON and CSV emission. CSV is '.'-decimal, comma-separated, '\n'-terminated
// with a header row; numbers use the shortest round-trip representation.
// Column layouts are documented in docs/formats.md.

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gbtkit/design.hpp"
#include "gbtkit/error.hpp"
#include "gbtkit/gbt.hpp"
#include "gbtkit/ratfun.hpp"
#include "gbtkit/response.hpp"
#include "gbtkit/simkit.hpp"

namespace gbtkit::cli {

using Json = nlohmann::ordered_json;

inline std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

inline Json ToJson(Complex c) { return Json::array({c.real(), c.imag()}); }

inline Json ToJson(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (const Complex& c : v) out.push_back(ToJson(c));
  return out;
}

inline Json ToJson(const Polynomial& p) {
  return Json(std::vector<double>(p.coeffs().begin(), p.coeffs().end()));
}

inline Json ToJson(const NormalizationRefs& r) {
  return Json{{"L_err_max_db", r.mag_db}, {"phi_err_max_deg", r.phase_deg}};
}

inline Json ToJson(const DesignResult& r) {
  return Json{{"alpha_opt", r.alpha_opt},
              {"q_value", r.q_value},
              {"channel", ChannelName(r.channel)},
              {"q_magnitude", r.q_magnitude},
              {"q_phase", r.q_phase},
              {"normalization_refs", ToJson(r.normalization_refs)}};
}

inline Json ToJson(const ProbeResult& p) {
  return Json{{"freq_hz", p.freq},
              {"mag_db", p.mag_db},
              {"phase_deg", p.phase_deg},
              {"cycles_used", p.cycles_used},
              {"residual", p.residual}};
}

inline std::string DesignTable(const DesignResult& r) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%-16s %12s %12s %12s %12s\n"
                "%-16s %12.6f %12.6f %12.6f %12.6f\n"
                "normalization: L_err_max = %.6f dB, phi_err_max = %.6f deg\n",
                "channel", "alpha_opt", "Q", "Q_mag", "Q_phase", ChannelName(r.channel),
                r.alpha_opt, r.q_value, r.q_magnitude, r.q_phase, r.normalization_refs.mag_db,
                r.normalization_refs.phase_deg);
  return buf;
}

inline const char* kBodeCsvHeader =
    "freq_hz,mag_db_analog,mag_db_discrete,phase_deg_analog,phase_deg_discrete,mag_err_db,"
    "phase_err_deg";

struct BodeCsvRow {
  double freq_hz;
  double mag_db_analog;
  double mag_db_discrete;
  double phase_deg_analog;
  double phase_deg_discrete;
  double mag_err_db;
  double phase_err_deg;
};

inline std::vector<BodeCsvRow> BodeRows(const BodeData& data) {
  if (data.analog.size() != data.discrete.size()) {
    throw Error(ErrorCode::kParameterOutOfRange, "Bode CSV needs analog and discrete series");
  }
  std::vector<BodeCsvRow> rows;
  rows.reserve(data.discrete.size());
  for (std::size_t i = 0; i < data.discrete.size(); ++i) {
    const auto& a = data.analog[i];
    const auto& d = data.discrete[i];
    rows.push_back({d.freq, a.mag_db, d.mag_db, a.phase_deg, d.phase_deg, d.mag_db - a.mag_db,
                    WrapDegrees(d.phase_deg - a.phase_deg)});
  }
  return rows;
}

inline void WriteBodeCsv(std::ostream& os, const std::vector<BodeCsvRow>& rows) {
  os << kBodeCsvHeader << '\n';
  for (const auto& r : rows) {
    os << FormatDouble(r.freq_hz) << ',' << FormatDouble(r.mag_db_analog) << ','
       << FormatDouble(r.mag_db_discrete) << ',' << FormatDouble(r.phase_deg_analog) << ','
       << FormatDouble(r.phase_deg_discrete) << ',' << FormatDouble(r.mag_err_db) << ','
       << FormatDouble(r.phase_err_deg) << '\n';
  }
}

namespace detail {

inline std::vector<double> SplitNumbers(const std::string& line, std::size_t expected) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= line.size()) {
    const std::size_t comma = line.find(',', start);
    const std::size_t end = comma == std::string::npos ? line.size() : comma;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(line.data() + start, line.data() + end, v);
    if (ec != std::errc() || ptr != line.data() + end) {
      throw Error(ErrorCode::kParseError, "bad CSV field in '" + line + "'");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() != expected) throw Error(ErrorCode::kParseError, "wrong CSV column count");
  return out;
}

}  // namespace detail

inline std::vector<BodeCsvRow> ReadBodeCsv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kBodeCsvHeader) {
    throw Error(ErrorCode::kParseError, "missing Bode CSV header");
  }
  std::vector<BodeCsvRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto v = detail::SplitNumbers(line, 7);
    rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
  }
  return rows;
}

inline const char* kTraceCsvHeader = "n,t_s,v_in,v_out";

inline void WriteTraceCsv(std::ostream& os, const std::vector<TraceSample>& trace) {
  os << kTraceCsvHeader << '\n';
  for (const auto& s : trace) {
    os << s.n << ',' << FormatDouble(s.t_s) << ',' << FormatDouble(s.v_in) << ','
       << FormatDouble(s.v_out) << '\n';
  }
}

inline std::vector<TraceSample> ReadTraceCsv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kTraceCsvHeader) {
    throw Error(ErrorCode::kParseError, "missing trace CSV header");
  }
  std::vector<TraceSample> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto v = detail::SplitNumbers(line, 4);
    out.push_back({static_cast<long>(v[0]), v[1], v[2], v[3]});
  }
  return out;
}

}  // namespace gbtkit::cli

#endif  // GBTKIT_CLI_EMIT_HPP_
