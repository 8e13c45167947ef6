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

#ifndef COOPLAB_DECOMPOSITION_HPP_
#define COOPLAB_DECOMPOSITION_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "cooplab/game.hpp"

namespace cooplab {

// G = P + H + E with P a normalized potential game, H a normalized harmonic
// game and E non-strategic.
template <typename T>
struct HodgeParts {
  BimatrixGame<T> P;
  BimatrixGame<T> H;
  BimatrixGame<T> E;
};

// G = I_N + Z_N + B with I_N normalized identical-interest, Z_N normalized
// zero-sum, and B a zero-sum equivalent potential game.
template <typename T>
struct StrategicParts {
  BimatrixGame<T> identical;
  BimatrixGame<T> zero_sum;
  BimatrixGame<T> dominant;
};

// M - rowMeans 1^T - 1 colMeans^T + grandMean. The result has zero row and
// column sums; the kernel is exactly {u 1^T + 1 v^T}.
template <typename T>
Matrix<T> DoubleCenter(const Matrix<T>& m);

// E = (1 u^T, v 1^T) with u the column means of A and v the row means of B.
template <typename T>
BimatrixGame<T> NonStrategicPart(const BimatrixGame<T>& g);

template <typename T>
HodgeParts<T> HodgeDecompose(const BimatrixGame<T>& g);

template <typename T>
StrategicParts<T> StrategicDecompose(const BimatrixGame<T>& g);

// Splits a normalized harmonic game into its identical-interest and zero-sum
// components; the identical matrix equals (n - m)/(m + n) times the zero-sum
// matrix. Throws kNotHarmonic when `h` is not in the harmonic subspace.
template <typename T>
std::pair<BimatrixGame<T>, BimatrixGame<T>> HarmonicSplit(
    const BimatrixGame<T>& h);

// The (m-1)(n-1) games (n A^{ij}, -m A^{ij}) where A^{ij} has +1 at (i,j)
// and (i+1,j+1) and -1 at (i+1,j) and (i,j+1). Requires m, n >= 2.
template <typename T>
std::vector<BimatrixGame<T>> HarmonicBasis(std::size_t m, std::size_t n);

}  // namespace cooplab

#endif  // COOPLAB_DECOMPOSITION_HPP_
