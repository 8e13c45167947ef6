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

#ifndef COOPLAB_TESTS_TEST_UTIL_HPP_
#define COOPLAB_TESTS_TEST_UTIL_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cooplab/experiments.hpp"
#include "cooplab/game.hpp"
#include "cooplab/scalar.hpp"

namespace cooplab::testing {

inline Rational Q(long num, long den = 1) {
  Rational r{mpz_class(num), mpz_class(den)};
  r.canonicalize();
  return r;
}

// Matrix from strings such as "-53/6".
inline Matrix<Rational> RM(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Rational>> out;
  for (const auto& row : rows) {
    out.emplace_back();
    for (const auto& s : row) out.back().push_back(ParseRational(s));
  }
  return Matrix<Rational>::FromRows(out);
}

inline BimatrixGame<Rational> Shapley() { return Builtin("shapley"); }
inline BimatrixGame<double> ShapleyD() { return ToDoubleGame(Builtin("shapley")); }

// Entries k/d with |k| <= 9 and d in {1, 2, 3}.
inline Matrix<Rational> RandomRationalMatrix(std::size_t m, std::size_t n,
                                             std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 3);
  Matrix<Rational> out(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = Q(num(rng), den(rng));
  return out;
}

inline BimatrixGame<Rational> RandomRationalGame(std::size_t m, std::size_t n,
                                                 std::mt19937_64& rng) {
  Matrix<Rational> a = RandomRationalMatrix(m, n, rng);
  return BimatrixGame<Rational>(a, RandomRationalMatrix(m, n, rng));
}

inline Rational RandomPositive(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(1, 12), den(1, 4);
  return Q(num(rng), den(rng));
}

// Random (1 u^T, v 1^T).
inline BimatrixGame<Rational> RandomNonStrategic(std::size_t m, std::size_t n,
                                                 std::mt19937_64& rng) {
  Matrix<Rational> u = RandomRationalMatrix(1, n, rng);
  Matrix<Rational> v = RandomRationalMatrix(m, 1, rng);
  Matrix<Rational> a(m, n), b(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = u(0, j);
      b(i, j) = v(i, 0);
    }
  return BimatrixGame<Rational>(a, b);
}

inline Vector<Rational> RandomSimplexPoint(std::size_t k, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> w(0, 7);
  Vector<Rational> out(k);
  Rational total = 0;
  for (auto& x : out) {
    x = w(rng);
    total += x;
  }
  if (total == 0) {
    out[0] = 1;
    total = 1;
  }
  for (auto& x : out) x /= total;
  return out;
}

inline Vector<double> RandomSimplexD(std::size_t k, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  Vector<double> out(k);
  double total = 0;
  for (auto& x : out) total += (x = e(rng));
  for (auto& x : out) x /= total;
  return out;
}

inline double LinfToUniform(const MixedProfile<double>& prof) {
  double worst = 0;
  for (double x : prof.p()) worst = std::max(worst, std::abs(x - 1.0 / prof.p().size()));
  for (double x : prof.q()) worst = std::max(worst, std::abs(x - 1.0 / prof.q().size()));
  return worst;
}

}  // namespace cooplab::testing

#endif  // COOPLAB_TESTS_TEST_UTIL_HPP_
