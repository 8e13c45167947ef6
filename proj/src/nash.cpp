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

#include "cooplab/nash.hpp"

#include <cmath>
#include <cstdint>
#include <optional>

namespace cooplab {
namespace {

template <typename T>
bool Negligible(const T& x) {
  if constexpr (ScalarTraits<T>::kExact) {
    return sgn(x) == 0;
  } else {
    return std::abs(x) <= 1e-12;
  }
}

// Gaussian elimination with partial pivoting on an augmented square system.
template <typename T>
std::optional<Vector<T>> Solve(std::vector<Vector<T>> rows) {
  const std::size_t k = rows.size();
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (ScalarTraits<T>::Abs(rows[r][col]) >
          ScalarTraits<T>::Abs(rows[pivot][col])) {
        pivot = r;
      }
    }
    if (Negligible(rows[pivot][col])) return std::nullopt;
    std::swap(rows[pivot], rows[col]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || Negligible(rows[r][col])) continue;
      const T factor = rows[r][col] / rows[col][col];
      for (std::size_t c = col; c <= k; ++c) rows[r][c] -= factor * rows[col][c];
    }
  }
  Vector<T> x(k);
  for (std::size_t r = 0; r < k; ++r) x[r] = rows[r][k] / rows[r][r];
  return x;
}

template <typename T>
bool NonNegative(const T& x) {
  if constexpr (ScalarTraits<T>::kExact) {
    return sgn(x) >= 0;
  } else {
    return x >= -1e-12;
  }
}

// Mixed strategy of the opponent (over columns of `pay`, restricted to
// `support`) that makes every row in `own` indifferent and optimal.
template <typename T>
std::optional<Vector<T>> Indifference(const Matrix<T>& pay,
                                      const std::vector<std::size_t>& own,
                                      const std::vector<std::size_t>& support) {
  const std::size_t k = support.size();
  // Unknowns: opponent weights on `support`, then the value v.
  std::vector<Vector<T>> rows;
  for (std::size_t r : own) {
    Vector<T> row(k + 2, T(0));
    for (std::size_t c = 0; c < k; ++c) row[c] = pay(r, support[c]);
    row[k] = T(-1);
    rows.push_back(std::move(row));
  }
  Vector<T> total(k + 2, T(0));
  for (std::size_t c = 0; c < k; ++c) total[c] = T(1);
  total[k + 1] = T(1);
  rows.push_back(std::move(total));
  auto sol = Solve(std::move(rows));
  if (!sol) return std::nullopt;
  Vector<T> mix(pay.cols(), T(0));
  for (std::size_t c = 0; c < k; ++c) {
    if (!NonNegative((*sol)[c])) return std::nullopt;
    mix[support[c]] = (*sol)[c] < T(0) ? T(0) : (*sol)[c];
  }
  const T value = (*sol)[k];
  const Vector<T> payoffs = RowActionPayoffs(pay, mix);
  for (std::size_t r = 0; r < pay.rows(); ++r) {
    if (!NonNegative(T(value - payoffs[r]))) return std::nullopt;
  }
  return mix;
}

std::vector<std::size_t> Members(std::uint32_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < 32; ++k) {
    if (mask & (1u << k)) out.push_back(k);
  }
  return out;
}

}  // namespace

template <typename T>
std::vector<MixedProfile<T>> SupportEnumeration(const BimatrixGame<T>& game) {
  const std::size_t m = game.m(), n = game.n();
  const Matrix<T> bt = game.B().Transposed();
  std::vector<MixedProfile<T>> found;
  for (std::uint32_t s1 = 1; s1 < (1u << m); ++s1) {
    const auto rows = Members(s1);
    for (std::uint32_t s2 = 1; s2 < (1u << n); ++s2) {
      const auto cols = Members(s2);
      if (rows.size() != cols.size()) continue;
      auto q = Indifference(game.A(), rows, cols);
      if (!q) continue;
      auto p = Indifference(bt, cols, rows);
      if (!p) continue;
      if constexpr (!ScalarTraits<T>::kExact) {
        // Re-normalize away pivoting noise before validation.
        double sp = 0, sq = 0;
        for (double x : *p) sp += x;
        for (double x : *q) sq += x;
        for (double& x : *p) x /= sp;
        for (double& x : *q) x /= sq;
      }
      MixedProfile<T> prof(std::move(*p), std::move(*q));
      bool duplicate = false;
      for (const auto& f : found) duplicate = duplicate || f == prof;
      if (!duplicate) found.push_back(std::move(prof));
    }
  }
  return found;
}

template std::vector<MixedProfile<double>> SupportEnumeration(
    const BimatrixGame<double>&);
template std::vector<MixedProfile<Rational>> SupportEnumeration(
    const BimatrixGame<Rational>&);

}  // namespace cooplab
