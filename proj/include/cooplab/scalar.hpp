// Copyright 2026 The cooplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COOPLAB_SCALAR_HPP_
#define COOPLAB_SCALAR_HPP_

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

namespace cooplab {

// Exact arbitrary-precision rational. GMP canonicalizes after every
// operation, so equality is structural.
using Rational = mpq_class;

// Per-backend arithmetic policy. The exact backend compares with ==, the float
// backend with an absolute tolerance on values whose magnitude is O(payoffs).
template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool kExact = false;
  static constexpr double kTieTolerance = 1e-9;
  static constexpr double kRatioTolerance = 1e-9;

  static bool IsZero(double x, double scale = 1.0) {
    return std::abs(x) <= kTieTolerance * (scale > 1.0 ? scale : 1.0);
  }
  static double Abs(double x) { return std::abs(x); }
  static double ToDouble(double x) { return x; }
  static double FromInt(long v) { return static_cast<double>(v); }
  static double FromRatio(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool kExact = true;

  static bool IsZero(const Rational& x, const Rational& /*scale*/ = 1) {
    return sgn(x) == 0;
  }
  static Rational Abs(const Rational& x) { return abs(x); }
  static double ToDouble(const Rational& x);
  static Rational FromInt(long v) { return Rational(v); }
  static Rational FromRatio(long num, long den) {
    Rational r{mpz_class(num), mpz_class(den)};
    r.canonicalize();
    return r;
  }
};

template <typename T>
inline double ToDouble(const T& x) {
  return ScalarTraits<T>::ToDouble(x);
}

// "p/q" (or "p" when q == 1) for rationals; shortest round-trip decimal for
// doubles.
std::string ToString(const Rational& x);
std::string ToString(double x);

// Accepts "p/q", integers, and finite decimals with optional exponent
// ("0.25", "-1.5e-3"). Decimals are converted exactly.
Rational ParseRational(std::string_view text);

// Exact value of a finite double's shortest decimal representation, so that
// 0.1 maps to 1/10 rather than its binary expansion.
Rational RationalFromDouble(double x);

template <typename T>
T ParseScalar(std::string_view text);

template <>
inline Rational ParseScalar<Rational>(std::string_view text) {
  return ParseRational(text);
}

// Decimals parse with correct rounding; "p/q" divides the rounded parts.
double ParseDouble(std::string_view text);

template <>
inline double ParseScalar<double>(std::string_view text) {
  return ParseDouble(text);
}

}  // namespace cooplab

#endif  // COOPLAB_SCALAR_HPP_
