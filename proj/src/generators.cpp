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

#include "cooplab/generators.hpp"

#include <random>
#include <string>

#include "cooplab/decomposition.hpp"
#include "cooplab/error.hpp"

namespace cooplab {
namespace {

// Bounded draws via modulo keep the stream identical across standard
// libraries (std::uniform_int_distribution is implementation-defined).
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed ^ 0x9e3779b97f4a7c15ULL) {}

  long Int(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(rng_() % span);
  }

  // Unit payoff scale: entries k/9 in [-1, 1], scalings k/6 in (0, 1].
  Rational Entry() { return Ratio(Int(-9, 9), 9); }

  Rational Positive() { return Ratio(Int(1, 6), 6); }

  static Rational Ratio(long num, long den) {
    Rational r{mpz_class(num), mpz_class(den)};
    r.canonicalize();
    return r;
  }

  Vector<Rational> Vec(std::size_t k) {
    Vector<Rational> v(k);
    for (auto& x : v) x = Entry();
    return v;
  }

  Matrix<Rational> Mat(std::size_t m, std::size_t n) {
    Matrix<Rational> out(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) = Entry();
    return out;
  }

  // Matrix whose double-centered part is nonzero.
  Matrix<Rational> StrategicMat(std::size_t m, std::size_t n) {
    while (true) {
      Matrix<Rational> out = Mat(m, n);
      if (!IsZeroMatrix(DoubleCenter(out))) return out;
    }
  }

  // Zero-mean vector, for normalized dominant components.
  Vector<Rational> Centered(std::size_t k) {
    Vector<Rational> v = Vec(k);
    Rational mean(0);
    for (const auto& x : v) mean += x;
    mean /= Rational(static_cast<long>(k));
    for (auto& x : v) x -= mean;
    return v;
  }

  BimatrixGame<Rational> NonStrategic(std::size_t m, std::size_t n) {
    return {RepeatRow(Vec(n), m), RepeatCol(Vec(m), n)};
  }

  BimatrixGame<Rational> Dominant(std::size_t m, std::size_t n) {
    return {RepeatCol(Vec(m), n) + RepeatRow(Vec(n), m),
            RepeatRow(Vec(n), m) + RepeatCol(Vec(m), n)};
  }

 private:
  std::mt19937_64 rng_;
};

void RequireStrategicSize(GameClass cls, std::size_t m, std::size_t n) {
  if (m < 2 || n < 2) {
    throw Error(ErrorCode::kUnsupportedClass,
                std::string(GameClassName(cls)) + " needs m, n >= 2");
  }
}

}  // namespace

const char* GameClassName(GameClass c) {
  switch (c) {
    case GameClass::kZeroSum: return "zero-sum";
    case GameClass::kIdenticalInterest: return "identical-interest";
    case GameClass::kNonStrategic: return "non-strategic";
    case GameClass::kNormalizedHarmonic: return "normalized-harmonic";
    case GameClass::kNormalizedPotential: return "normalized-potential";
    case GameClass::kBClass: return "B";
    case GameClass::kSZ: return "SZ";
    case GameClass::kSI: return "SI";
    case GameClass::kDClass: return "D";
  }
  return "?";
}

GameClass ParseGameClass(std::string_view name) {
  for (GameClass c :
       {GameClass::kZeroSum, GameClass::kIdenticalInterest,
        GameClass::kNonStrategic, GameClass::kNormalizedHarmonic,
        GameClass::kNormalizedPotential, GameClass::kBClass, GameClass::kSZ,
        GameClass::kSI, GameClass::kDClass}) {
    if (name == GameClassName(c)) return c;
  }
  throw Error(ErrorCode::kUnsupportedClass,
              "unknown game class '" + std::string(name) + "'");
}

BimatrixGame<Rational> RandomGame(GameClass cls, std::size_t m, std::size_t n,
                                  std::uint64_t seed) {
  if (m == 0 || n == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "games need m, n >= 1");
  }
  Draw draw(seed * 0x100000001b3ULL + static_cast<std::uint64_t>(cls));
  const Rational mr(static_cast<long>(m));
  const Rational nr(static_cast<long>(n));
  switch (cls) {
    case GameClass::kZeroSum: {
      Matrix<Rational> a = draw.Mat(m, n);
      return {a, -a};
    }
    case GameClass::kIdenticalInterest: {
      Matrix<Rational> a = draw.Mat(m, n);
      return {a, a};
    }
    case GameClass::kNonStrategic:
      return draw.NonStrategic(m, n);
    case GameClass::kNormalizedHarmonic: {
      const Matrix<Rational> z = DoubleCenter(draw.Mat(m, n));
      return {nr * z, -(mr * z)};
    }
    case GameClass::kNormalizedPotential: {
      const Matrix<Rational> j = DoubleCenter(draw.Mat(m, n));
      return {j + RepeatCol(draw.Centered(m), n),
              j + RepeatRow(draw.Centered(n), m)};
    }
    case GameClass::kBClass:
      return draw.Dominant(m, n);
    case GameClass::kSZ: {
      RequireStrategicSize(cls, m, n);
      const Matrix<Rational> z = draw.StrategicMat(m, n);
      const Rational alpha = draw.Positive();
      const Rational beta = draw.Positive();
      return BimatrixGame<Rational>(alpha * z, -(beta * z)) +
             draw.NonStrategic(m, n);
    }
    case GameClass::kSI: {
      RequireStrategicSize(cls, m, n);
      const Matrix<Rational> i = draw.StrategicMat(m, n);
      const Rational alpha = draw.Positive();
      const Rational beta = draw.Positive();
      return BimatrixGame<Rational>(alpha * i, beta * i) +
             draw.NonStrategic(m, n);
    }
    case GameClass::kDClass: {
      RequireStrategicSize(cls, m, n);
      BimatrixGame<Rational> dom = draw.Dominant(m, n);
      const Matrix<Rational> free = draw.StrategicMat(m, n);
      if (draw.Int(0, 1) == 0) return {dom.A(), free};
      return {free, dom.B()};
    }
  }
  throw Error(ErrorCode::kUnsupportedClass, "unknown game class");
}

}  // namespace cooplab
