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

#include "cooplab/decomposition.hpp"

#include "cooplab/equivalence.hpp"
#include "cooplab/error.hpp"

namespace cooplab {

template <typename T>
Matrix<T> DoubleCenter(const Matrix<T>& m) {
  const Vector<T> row_means = RowMeans(m);
  const Vector<T> col_means = ColMeans(m);
  T grand(0);
  for (const auto& x : row_means) grand += x;
  grand /= T(static_cast<long>(m.rows()));
  Matrix<T> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(i, j) = m(i, j) - row_means[i] - col_means[j] + grand;
  return out;
}

template <typename T>
BimatrixGame<T> NonStrategicPart(const BimatrixGame<T>& g) {
  return BimatrixGame<T>(RepeatRow(ColMeans(g.A()), g.m()),
                         RepeatCol(RowMeans(g.B()), g.n()));
}

template <typename T>
HodgeParts<T> HodgeDecompose(const BimatrixGame<T>& g) {
  const T m(static_cast<long>(g.m()));
  const T n(static_cast<long>(g.n()));
  BimatrixGame<T> e = NonStrategicPart(g);
  const Matrix<T> a_hat = g.A() - e.A();
  const Matrix<T> b_hat = g.B() - e.B();
  Matrix<T> z = DoubleCenter(Matrix<T>(a_hat - b_hat));
  z *= T(1) / (m + n);
  BimatrixGame<T> h(n * z, -(m * z));
  BimatrixGame<T> p(a_hat - n * z, b_hat + m * z);
  return {std::move(p), std::move(h), std::move(e)};
}

template <typename T>
StrategicParts<T> StrategicDecompose(const BimatrixGame<T>& g) {
  const Matrix<T> ca = DoubleCenter(g.A());
  const Matrix<T> cb = DoubleCenter(g.B());
  const T half = ScalarTraits<T>::FromRatio(1, 2);
  const Matrix<T> j = half * (ca + cb);
  const Matrix<T> k = half * (ca - cb);
  BimatrixGame<T> identical(j, j);
  BimatrixGame<T> zero_sum(k, -k);
  BimatrixGame<T> dominant = g - identical - zero_sum;
  return {std::move(identical), std::move(zero_sum), std::move(dominant)};
}

template <typename T>
std::pair<BimatrixGame<T>, BimatrixGame<T>> HarmonicSplit(
    const BimatrixGame<T>& h) {
  if (!IsInSubspace(h, Subspace::kH)) {
    throw Error(ErrorCode::kNotHarmonic,
                "game is not a normalized harmonic game");
  }
  const T half = ScalarTraits<T>::FromRatio(1, 2);
  const Matrix<T> i = half * (h.A() + h.B());
  const Matrix<T> z = half * (h.A() - h.B());
  return {BimatrixGame<T>(i, i), BimatrixGame<T>(z, -z)};
}

template <typename T>
std::vector<BimatrixGame<T>> HarmonicBasis(std::size_t m, std::size_t n) {
  if (m < 2 || n < 2) {
    throw Error(ErrorCode::kDimensionTooSmall,
                "harmonic basis needs m, n >= 2");
  }
  const T mt(static_cast<long>(m));
  const T nt(static_cast<long>(n));
  std::vector<BimatrixGame<T>> basis;
  basis.reserve((m - 1) * (n - 1));
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t j = 0; j + 1 < n; ++j) {
      Matrix<T> corner(m, n);
      corner(i, j) = T(1);
      corner(i + 1, j + 1) = T(1);
      corner(i + 1, j) = T(-1);
      corner(i, j + 1) = T(-1);
      basis.emplace_back(nt * corner, -(mt * corner));
    }
  }
  return basis;
}

#define COOPLAB_INSTANTIATE(T)                                            \
  template Matrix<T> DoubleCenter(const Matrix<T>&);                      \
  template BimatrixGame<T> NonStrategicPart(const BimatrixGame<T>&);      \
  template HodgeParts<T> HodgeDecompose(const BimatrixGame<T>&);          \
  template StrategicParts<T> StrategicDecompose(const BimatrixGame<T>&);  \
  template std::pair<BimatrixGame<T>, BimatrixGame<T>> HarmonicSplit(     \
      const BimatrixGame<T>&);                                            \
  template std::vector<BimatrixGame<T>> HarmonicBasis<T>(std::size_t,     \
                                                         std::size_t);

COOPLAB_INSTANTIATE(double)
COOPLAB_INSTANTIATE(Rational)

#undef COOPLAB_INSTANTIATE

}  // namespace cooplab
