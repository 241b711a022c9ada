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

#ifndef GBTKIT_SCALAR_SEARCH_HPP_
#define GBTKIT_SCALAR_SEARCH_HPP_

#include <cmath>
#include <utility>

namespace gbtkit {

struct ScalarMinimum {
  double x;
  double value;
};

// Golden-section search for a minimum of f on [lo, hi]; stops once the
// bracket is narrower than tol. The returned point is the best one evaluated.
template <typename F>
ScalarMinimum GoldenSectionMinimize(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return fc <= fd ? ScalarMinimum{c, fc} : ScalarMinimum{d, fd};
}

// Bisection for a sign change of g on [lo, hi]; g(lo) and g(hi) must have
// opposite signs (or one of them be zero).
template <typename G>
double BisectRoot(G&& g, double lo, double hi, double tol, int max_iter = 200) {
  double g_lo = g(lo);
  if (g_lo == 0.0) return lo;
  if (g(hi) == 0.0) return hi;
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = g(mid);
    if (g_mid == 0.0) return mid;
    if ((g_mid < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace gbtkit

#endif  // GBTKIT_SCALAR_SEARCH_HPP_
