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

#include "cooplab/scalar.hpp"

#include <array>
#include <cmath>
#include <charconv>
#include <cstdlib>
#include <string>

#include "cooplab/error.hpp"

namespace cooplab {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::kNegativeEpsilon: return "NegativeEpsilon";
    case ErrorCode::kUnsupportedClass: return "UnsupportedClass";
    case ErrorCode::kDimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::kNotHarmonic: return "NotHarmonic";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNumericalStall: return "NumericalStall";
    case ErrorCode::kInsufficientPathData: return "InsufficientPathData";
    case ErrorCode::kMembershipViolation: return "MembershipViolation";
    case ErrorCode::kBracketInvalid: return "BracketInvalid";
    case ErrorCode::kUnknownName: return "UnknownName";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string ToString(const Rational& x) { return x.get_str(); }

std::string ToString(double x) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

[[noreturn]] void Reject(std::string_view text) {
  throw Error(ErrorCode::kParseError,
              "not a rational number: '" + std::string(text) + "'");
}

Rational ParseDecimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!AllDigits(exp_text) || exp_text.size() > 6) Reject(text);
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if ((!whole.empty() && !AllDigits(whole)) ||
        (!frac.empty() && !AllDigits(frac)) || (whole.empty() && frac.empty())) {
      Reject(text);
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!AllDigits(s)) Reject(text);
    digits = std::string(s);
  }
  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(
                                           exponent < 0 ? -exponent : exponent));
  Rational out;
  if (exponent >= 0) {
    out = Rational(num * scale);
  } else {
    out = Rational(num, scale);
    out.canonicalize();
  }
  return negative ? Rational(-out) : out;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) Reject(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = ParseDecimal(text.substr(0, slash));
    Rational den = ParseDecimal(text.substr(slash + 1));
    if (sgn(den) == 0) {
      throw Error(ErrorCode::kParseError,
                  "zero denominator in '" + std::string(text) + "'");
    }
    return num / den;
  }
  return ParseDecimal(text);
}

Rational RationalFromDouble(double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::kNonFiniteEntry, "cannot convert non-finite value");
  }
  return ParseDecimal(ToString(x));
}

double ScalarTraits<Rational>::ToDouble(const Rational& x) {
  // Both parts exact in binary64 make the quotient correctly rounded.
  constexpr double kExactLimit = 9007199254740992.0;  // 2^53
  const mpz_class& num = x.get_num();
  const mpz_class& den = x.get_den();
  if (abs(num) <= kExactLimit && den <= kExactLimit) {
    return num.get_d() / den.get_d();
  }
  return x.get_d();
}

double ParseDouble(std::string_view text) {
  if (text.find('/') != std::string_view::npos) {
    return ScalarTraits<Rational>::ToDouble(ParseRational(text));
  }
  std::string_view body = text;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc() || ptr != body.data() + body.size() || body.empty() ||
      !std::isfinite(value)) {
    throw Error(ErrorCode::kParseError,
                "not a finite number: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace cooplab
