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

#ifndef GBTKIT_CLI_PARSE_HPP_
#define GBTKIT_CLI_PARSE_HPP_

// Text forms accepted on the command line and in scenario files.
//
//   plant   lpf:fc=<Hz> | lpf:wc=<rad/s>
//           pzk:k=<gain>[,z=<c>]...[,p=<c>]...   (repeat z= / p= per factor)
//   complex 3 | -2.5 | 1+2i | 1-2j | 4i
//   method  euler | tustin | al-alaoui:a=<a> | pole:ap=<ap> | gbt:alpha=<a>

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "gbtkit/error.hpp"
#include "gbtkit/gbt.hpp"
#include "gbtkit/ratfun.hpp"
#include "gbtkit/response.hpp"

namespace gbtkit::cli {

inline double ParseDouble(std::string_view text, std::string_view what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw Error(ErrorCode::kParseError,
                "cannot read " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return value;
}

inline Complex ParseComplex(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::kParseError, "empty complex number");
  const char last = text.back();
  if (last != 'i' && last != 'j') return {ParseDouble(text, "real number"), 0.0};
  std::string_view body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [](std::string_view s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return ParseDouble(s, "imaginary part");
  };
  if (split == std::string_view::npos) return {0.0, imag_of(body)};
  return {ParseDouble(body.substr(0, split), "real part"), imag_of(body.substr(split))};
}

namespace detail {

inline std::vector<std::pair<std::string, std::string>> KeyValues(std::string_view body,
                                                                  std::string_view what) {
  std::vector<std::pair<std::string, std::string>> out;
  while (!body.empty()) {
    const std::size_t comma = body.find(',');
    const std::string_view item = body.substr(0, comma);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error(ErrorCode::kParseError,
                  "expected key=value in " + std::string(what) + ", got '" + std::string(item) + "'");
    }
    out.emplace_back(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return out;
}

inline std::pair<std::string_view, std::string_view> SplitHead(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) return {text, {}};
  return {text.substr(0, colon), text.substr(colon + 1)};
}

}  // namespace detail

inline PoleZeroGain ParsePlant(std::string_view text) {
  const auto [head, body] = detail::SplitHead(text);
  const auto kv = detail::KeyValues(body, "plant");
  if (head == "lpf") {
    if (kv.size() != 1) throw Error(ErrorCode::kParseError, "lpf takes exactly one of fc= or wc=");
    const double v = ParseDouble(kv[0].second, kv[0].first);
    if (!(v > 0.0)) throw Error(ErrorCode::kParseError, "lpf corner must be > 0");
    if (kv[0].first == "fc") return LowPassPlant(kTwoPi * v);
    if (kv[0].first == "wc") return LowPassPlant(v);
    throw Error(ErrorCode::kParseError, "unknown lpf key '" + kv[0].first + "'");
  }
  if (head == "pzk") {
    double k = 1.0;
    std::vector<Complex> zeros;
    std::vector<Complex> poles;
    for (const auto& [key, value] : kv) {
      if (key == "k") {
        k = ParseDouble(value, "gain");
      } else if (key == "z") {
        zeros.push_back(ParseComplex(value));
      } else if (key == "p") {
        poles.push_back(ParseComplex(value));
      } else {
        throw Error(ErrorCode::kParseError, "unknown pzk key '" + key + "'");
      }
    }
    return PoleZeroGain(k, std::move(zeros), std::move(poles));
  }
  throw Error(ErrorCode::kParseError, "unknown plant kind '" + std::string(head) + "'");
}

inline Method ParseMethod(std::string_view text) {
  const auto [head, body] = detail::SplitHead(text);
  const auto kv = detail::KeyValues(body, "method");
  auto only = [&](const char* key) {
    if (kv.size() != 1 || kv[0].first != key) {
      throw Error(ErrorCode::kParseError,
                  std::string(head) + " needs exactly " + key + "=<value>");
    }
    return ParseDouble(kv[0].second, key);
  };
  if (head == "euler" && kv.empty()) return Euler{};
  if (head == "tustin" && kv.empty()) return Tustin{};
  if (head == "al-alaoui") return AlAlaoui{only("a")};
  if (head == "pole") return PolePlacement{only("ap")};
  if (head == "gbt") return GbtExtended{only("alpha")};
  throw Error(ErrorCode::kParseError, "unknown method '" + std::string(text) + "'");
}

}  // namespace gbtkit::cli

#endif  // GBTKIT_CLI_PARSE_HPP_
