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

#ifndef GBTKIT_RATFUN_HPP_
#define GBTKIT_RATFUN_HPP_

// Real-coefficient polynomials and rational functions in one variable.
//
// Coefficients are stored in ascending degree: coeffs[k] multiplies x^k.
// A RationalFunction is kept with a monic denominator so that two
// transfer functions compare equal coefficient-wise exactly when they
// are the same ratio (up to a common polynomial factor, which is never
// cancelled here).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gbtkit/error.hpp"

namespace gbtkit {

using Complex = std::complex<double>;

class Polynomial {
 public:
  // The zero polynomial, represented by the single coefficient 0.
  Polynomial() : coeffs_{0.0} {}

  explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    Trim();
  }

  Polynomial(std::initializer_list<double> coeffs)
      : Polynomial(std::vector<double>(coeffs)) {}

  static Polynomial Constant(double value) { return Polynomial({value}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
  double leading() const { return coeffs_.back(); }

  std::span<const double> coeffs() const { return coeffs_; }

  // Coefficient of x^k; zero past the degree.
  double operator[](std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : 0.0;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  Complex operator()(Complex x) const {
    Complex acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * x + *it;
    }
    return acc;
  }

  double operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * x + *it;
    }
    return acc;
  }

  Polynomial scaled(double factor) const {
    std::vector<double> out(coeffs_);
    for (double& c : out) c *= factor;
    return Polynomial(std::move(out));
  }

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    std::vector<double> out(std::max(p.coeffs_.size(), q.coeffs_.size()), 0.0);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = p[k] + q[k];
    return Polynomial(std::move(out));
  }

  friend Polynomial operator-(const Polynomial& p, const Polynomial& q) {
    return p + q.scaled(-1.0);
  }

  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    std::vector<double> out(p.coeffs_.size() + q.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < q.coeffs_.size(); ++j) {
        out[i + j] += p.coeffs_[i] * q.coeffs_[j];
      }
    }
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void Trim() {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
  }

  std::vector<double> coeffs_;
};

inline Complex PolyEval(const Polynomial& p, Complex x) { return p(x); }

class RationalFunction {
 public:
  RationalFunction() : num_(Polynomial::Constant(0.0)), den_(Polynomial::Constant(1.0)) {}

  RationalFunction(Polynomial num, Polynomial den)
      : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) {
      throw Error(ErrorCode::kZeroPolynomial, "rational function with zero denominator");
    }
    const double lead = den_.leading();
    if (lead != 1.0) {
      num_ = num_.scaled(1.0 / lead);
      den_ = den_.scaled(1.0 / lead);
    }
  }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_proper() const { return num_.degree() <= den_.degree(); }

  Complex operator()(Complex x) const {
    const Complex d = den_(x);
    if (d == 0.0) {
      throw Error(ErrorCode::kEvaluationAtPole, "rational function evaluated at a pole");
    }
    return num_(x) / d;
  }

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

 private:
  Polynomial num_;
  Polynomial den_;
};

// Analog plant K * prod(s + zeros[i]) / prod(s + poles[k]).
//
// Note the sign convention: the stored values are the offsets Z_i and P_k,
// so the physical pole of (s + P_k) sits at s = -P_k.
class PoleZeroGain {
 public:
  PoleZeroGain(double gain, std::vector<Complex> zeros, std::vector<Complex> poles)
      : gain_(gain), zeros_(std::move(zeros)), poles_(std::move(poles)) {
    if (zeros_.size() > poles_.size()) {
      throw Error(ErrorCode::kImproperTransferFunction,
                  "more zeros (" + std::to_string(zeros_.size()) + ") than poles (" +
                      std::to_string(poles_.size()) + ")");
    }
  }

  double gain() const { return gain_; }
  const std::vector<Complex>& zeros() const { return zeros_; }
  const std::vector<Complex>& poles() const { return poles_; }

  // Direct factored evaluation; `x` is whatever stands in for s.
  Complex operator()(Complex x) const {
    Complex den = 1.0;
    for (const Complex& p : poles_) den *= x + p;
    if (den == 0.0) {
      throw Error(ErrorCode::kEvaluationAtPole, "plant evaluated at a pole");
    }
    Complex num = gain_;
    for (const Complex& z : zeros_) num *= x + z;
    return num / den;
  }

 private:
  double gain_;
  std::vector<Complex> zeros_;
  std::vector<Complex> poles_;
};

namespace detail {

inline std::vector<Complex> ExpandFactors(const std::vector<Complex>& offsets) {
  std::vector<Complex> c{1.0};
  for (const Complex& z : offsets) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += c[k] * z;
      next[k + 1] += c[k];
    }
    c = std::move(next);
  }
  return c;
}

inline Polynomial RealPart(const std::vector<Complex>& c, const char* what) {
  double scale = 0.0;
  for (const Complex& v : c) scale = std::max(scale, std::abs(v));
  std::vector<double> out;
  out.reserve(c.size());
  for (const Complex& v : c) {
    if (std::abs(v.imag()) > 1e-12 * scale) {
      throw Error(ErrorCode::kConjugateViolation,
                  std::string(what) + " are not closed under conjugation");
    }
    out.push_back(v.real());
  }
  return Polynomial(std::move(out));
}

inline std::vector<Polynomial> Powers(const Polynomial& base, int n) {
  std::vector<Polynomial> out{Polynomial::Constant(1.0)};
  for (int k = 1; k <= n; ++k) out.push_back(out.back() * base);
  return out;
}

// Evaluates p and p' at x in one Horner pass.
inline std::pair<Complex, Complex> EvalWithDerivative(std::span<const double> c, Complex x) {
  Complex p = 0.0;
  Complex dp = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * x + p;
    p = p * x + *it;
  }
  return {p, dp};
}

// Conjugate symmetry post-pass: pair each upper-half-plane root with a
// mirrored lower-half-plane root when the mismatch is small against its
// imaginary part, and snap everything left over to the real axis.
inline void EnforceConjugatePairs(std::vector<Complex>& roots) {
  std::vector<Complex> upper;
  std::vector<Complex> lower;
  std::vector<Complex> out;
  for (const Complex& r : roots) {
    const double tol = 1e-12 * std::max(1.0, std::abs(r));
    if (r.imag() > tol) {
      upper.push_back(r);
    } else if (r.imag() < -tol) {
      lower.push_back(r);
    } else {
      out.emplace_back(r.real(), 0.0);
    }
  }
  std::sort(upper.begin(), upper.end(),
            [](const Complex& a, const Complex& b) { return a.imag() > b.imag(); });
  for (const Complex& u : upper) {
    auto it = std::min_element(lower.begin(), lower.end(), [&](const Complex& a, const Complex& b) {
      return std::abs(std::conj(a) - u) < std::abs(std::conj(b) - u);
    });
    if (it != lower.end() && std::abs(std::conj(*it) - u) <= 0.5 * u.imag()) {
      const Complex mid = 0.5 * (u + std::conj(*it));
      lower.erase(it);
      out.push_back(mid);
      out.push_back(std::conj(mid));
    } else {
      out.emplace_back(u.real(), 0.0);
    }
  }
  for (const Complex& l : lower) out.emplace_back(l.real(), 0.0);
  std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  roots = std::move(out);
}

}  // namespace detail

inline constexpr int kRootMaxIterations = 500;
inline constexpr double kRootResidualTolerance = 1e-12;

// All degree() roots of p via Aberth–Ehrlich simultaneous iteration.
// Roots are returned sorted by real part, complex roots in conjugate pairs.
inline std::vector<Complex> PolyRoots(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::kZeroPolynomial, "roots of the zero polynomial");
  if (p.degree() < 1) {
    throw Error(ErrorCode::kParameterOutOfRange, "roots need degree >= 1");
  }
  const auto all = p.coeffs();
  std::size_t zero_roots = 0;
  while (all[zero_roots] == 0.0) ++zero_roots;

  std::vector<Complex> roots(zero_roots, Complex(0.0, 0.0));
  std::vector<double> c(all.begin() + static_cast<std::ptrdiff_t>(zero_roots), all.end());
  const int m = static_cast<int>(c.size()) - 1;
  if (m == 0) return roots;
  const double lead = c.back();
  for (double& v : c) v /= lead;
  if (m == 1) {
    roots.emplace_back(-c[0], 0.0);
    detail::EnforceConjugatePairs(roots);
    return roots;
  }

  double coeff_scale = 0.0;
  for (double v : c) coeff_scale = std::max(coeff_scale, std::abs(v));
  auto residual = [&](Complex z, Complex value) {
    const double scale = coeff_scale * std::pow(std::max(1.0, std::abs(z)), m);
    return std::abs(value) / scale;
  };

  const double radius = std::pow(std::abs(c[0]), 1.0 / m);
  std::vector<Complex> z(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / m + 0.7;
    z[static_cast<std::size_t>(k)] = std::polar(radius, theta);
  }

  std::vector<bool> done(z.size(), false);
  bool all_done = false;
  for (int iter = 0; iter < kRootMaxIterations && !all_done; ++iter) {
    all_done = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      auto [value, deriv] = detail::EvalWithDerivative(c, z[i]);
      if (residual(z[i], value) < kRootResidualTolerance) {
        done[i] = true;
        continue;
      }
      all_done = false;
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      }
      if (deriv == 0.0) {
        z[i] += Complex(1e-8, 1e-8) * std::max(1.0, std::abs(z[i]));
        continue;
      }
      const Complex ratio = value / deriv;
      z[i] -= ratio / (1.0 - ratio * repulsion);
    }
  }
  // Polishing sweeps past the stopping test; an update is kept only when
  // it does not raise the residual.
  for (int sweep = 0; sweep < 3; ++sweep) {
    for (std::size_t i = 0; i < z.size(); ++i) {
      auto [value, deriv] = detail::EvalWithDerivative(c, z[i]);
      if (value == 0.0 || deriv == 0.0) continue;
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      }
      const Complex ratio = value / deriv;
      const Complex next = z[i] - ratio / (1.0 - ratio * repulsion);
      const Complex next_value = detail::EvalWithDerivative(c, next).first;
      if (residual(next, next_value) <= residual(z[i], value)) z[i] = next;
    }
  }
  for (const Complex& r : z) {
    const Complex value = detail::EvalWithDerivative(c, r).first;
    if (!(residual(r, value) < kRootResidualTolerance)) {
      throw Error(ErrorCode::kNonConvergence,
                  "root iteration did not converge in " + std::to_string(kRootMaxIterations) +
                      " iterations");
    }
  }
  roots.insert(roots.end(), z.begin(), z.end());
  detail::EnforceConjugatePairs(roots);
  return roots;
}

// Expands prod(x - roots[i]) into real coefficients; imaginary residue must
// be negligible.
inline Polynomial PolyFromRoots(const std::vector<Complex>& roots, double lead = 1.0) {
  std::vector<Complex> negated;
  negated.reserve(roots.size());
  for (const Complex& r : roots) negated.push_back(-r);
  return detail::RealPart(detail::ExpandFactors(negated), "roots").scaled(lead);
}

// r((a*y + b) / (c*y + d)) with denominators cleared over the common
// factor (c*y + d)^N, N = max(deg num, deg den).
inline RationalFunction MoebiusSubstitute(const RationalFunction& r, double a, double b,
                                          double c, double d) {
  const double det = a * d - b * c;
  if (!(std::abs(det) > 4.0 * std::numeric_limits<double>::epsilon() *
                            (std::abs(a * d) + std::abs(b * c))) ||
      !std::isfinite(det)) {
    throw Error(ErrorCode::kDegenerateMap, "Moebius map with ad - bc = 0");
  }
  const int n = std::max(r.num().degree(), r.den().degree());
  const auto up = detail::Powers(Polynomial({b, a}), n);
  const auto down = detail::Powers(Polynomial({d, c}), n);
  auto substitute = [&](const Polynomial& p) {
    Polynomial acc;
    for (int k = 0; k <= p.degree(); ++k) {
      const double ck = p[static_cast<std::size_t>(k)];
      if (ck == 0.0) continue;
      acc = acc + (up[static_cast<std::size_t>(k)] * down[static_cast<std::size_t>(n - k)]).scaled(ck);
    }
    return acc;
  };
  return RationalFunction(substitute(r.num()), substitute(r.den()));
}

inline RationalFunction PzkToRational(const PoleZeroGain& pzk) {
  const Polynomial num = detail::RealPart(detail::ExpandFactors(pzk.zeros()), "zeros");
  const Polynomial den = detail::RealPart(detail::ExpandFactors(pzk.poles()), "poles");
  return RationalFunction(num.scaled(pzk.gain()), den);
}

}  // namespace gbtkit

#endif  // GBTKIT_RATFUN_HPP_
