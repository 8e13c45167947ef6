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

#include "cooplab/equivalence.hpp"

#include <algorithm>

#include "cooplab/decomposition.hpp"
#include "cooplab/error.hpp"

namespace cooplab {
namespace {

template <typename T>
T GameScale(const BimatrixGame<T>& g) {
  T s = MaxAbs(g.A());
  T sb = MaxAbs(g.B());
  if (sb > s) s = sb;
  return s > T(1) ? s : T(1);
}

template <typename T>
bool Zero(const Matrix<T>& m, const T& scale) {
  return IsZeroMatrix(m, scale);
}

template <typename T>
bool NormalizedSums(const BimatrixGame<T>& g, const T& scale) {
  // Column sums of A and row sums of B vanish.
  Vector<T> col(g.n(), T(0)), row(g.m(), T(0));
  for (std::size_t i = 0; i < g.m(); ++i) {
    for (std::size_t j = 0; j < g.n(); ++j) {
      col[j] += g.A()(i, j);
      row[i] += g.B()(i, j);
    }
  }
  const T sum_scale = scale * T(static_cast<long>(std::max(g.m(), g.n())));
  for (const auto& x : col)
    if (!ScalarTraits<T>::IsZero(x, sum_scale)) return false;
  for (const auto& x : row)
    if (!ScalarTraits<T>::IsZero(x, sum_scale)) return false;
  return true;
}

// Solves ca = ratio * cb for a single scalar. Both inputs are nonzero.
template <typename T>
std::optional<T> ConsistentRatio(const Matrix<T>& ca, const Matrix<T>& cb) {
  std::size_t pivot = 0;
  T best(0);
  const auto values = cb.values();
  for (std::size_t k = 0; k < values.size(); ++k) {
    T a = ScalarTraits<T>::Abs(values[k]);
    if (a > best) {
      best = a;
      pivot = k;
    }
  }
  const T ratio = ca.values()[pivot] / values[pivot];
  if (ScalarTraits<T>::IsZero(ratio)) return std::nullopt;
  const Matrix<T> residual = ca - ratio * cb;
  if constexpr (ScalarTraits<T>::kExact) {
    if (!IsZeroMatrix(residual)) return std::nullopt;
  } else {
    const double tol = ScalarTraits<double>::kRatioTolerance * MaxAbs(ca);
    if (MaxAbs(residual) > tol) return std::nullopt;
  }
  return ratio;
}

// Non-strategic E with M + E.A + sign * E.B = 0, where C(M) = 0.
template <typename T>
BimatrixGame<T> OffsetCancelling(const Matrix<T>& mat, int sign) {
  const Vector<T> r = RowMeans(mat);
  Vector<T> c = ColMeans(mat);
  T grand(0);
  for (const auto& x : r) grand += x;
  grand /= T(static_cast<long>(mat.rows()));
  for (auto& x : c) x = grand - x;
  Vector<T> row_part = r;
  if (sign > 0) {
    for (auto& x : row_part) x = -x;
  }
  return BimatrixGame<T>(RepeatRow(c, mat.rows()),
                         RepeatCol(row_part, mat.cols()));
}

template <typename T>
std::optional<EquivalenceWitness<T>> FindWitness(const BimatrixGame<T>& g,
                                                 bool zero_sum) {
  const T scale = GameScale(g);
  const Matrix<T> ca = DoubleCenter(g.A());
  const Matrix<T> cb = DoubleCenter(g.B());
  const bool a_zero = Zero(ca, scale);
  const bool b_zero = Zero(cb, scale);
  T alpha(1), beta(1);
  if (a_zero != b_zero) return std::nullopt;
  if (!a_zero) {
    auto ratio = ConsistentRatio(ca, cb);
    if (!ratio) return std::nullopt;
    // zero-sum: ca = -beta cb with beta > 0; identical: ca = beta cb.
    if (zero_sum) {
      if (!(*ratio < T(0))) return std::nullopt;
      beta = -*ratio;
    } else {
      if (!(*ratio > T(0))) return std::nullopt;
      beta = *ratio;
    }
  }
  const int sign = zero_sum ? 1 : -1;
  const T signed_beta = zero_sum ? beta : T(-beta);
  const Matrix<T> combined = alpha * g.A() + signed_beta * g.B();
  return EquivalenceWitness<T>{alpha, beta, OffsetCancelling(combined, sign)};
}

}  // namespace

const char* SubspaceName(Subspace s) {
  switch (s) {
    case Subspace::kZ: return "Z";
    case Subspace::kI: return "I";
    case Subspace::kE: return "E";
    case Subspace::kN: return "N";
    case Subspace::kH: return "H";
    case Subspace::kP: return "P";
    case Subspace::kB: return "B";
  }
  return "?";
}

const char* ClassLabelName(ClassLabel label) {
  switch (label) {
    case ClassLabel::kSZ: return "SZ";
    case ClassLabel::kSI: return "SI";
    case ClassLabel::kB: return "B";
    case ClassLabel::kD: return "D";
    case ClassLabel::kNone: return "NONE";
  }
  return "?";
}

template <typename T>
bool IsInSubspace(const BimatrixGame<T>& g, Subspace space) {
  const T scale = GameScale(g);
  switch (space) {
    case Subspace::kZ:
      return Zero(Matrix<T>(g.A() + g.B()), scale);
    case Subspace::kI:
      return Zero(Matrix<T>(g.A() - g.B()), scale);
    case Subspace::kE: {
      const Vector<T> first_row(g.A().row(0).begin(), g.A().row(0).end());
      Vector<T> first_col(g.m());
      for (std::size_t i = 0; i < g.m(); ++i) first_col[i] = g.B()(i, 0);
      return Zero(Matrix<T>(g.A() - RepeatRow(first_row, g.m())), scale) &&
             Zero(Matrix<T>(g.B() - RepeatCol(first_col, g.n())), scale);
    }
    case Subspace::kN:
      return NormalizedSums(g, scale);
    case Subspace::kH: {
      const T m(static_cast<long>(g.m()));
      const T n(static_cast<long>(g.n()));
      return NormalizedSums(g, scale) &&
             Zero(Matrix<T>(m * g.A() + n * g.B()), T(scale * (m + n)));
    }
    case Subspace::kP:
      return NormalizedSums(g, scale) &&
             Zero(DoubleCenter(Matrix<T>(g.A() - g.B())), scale);
    case Subspace::kB:
      return Zero(DoubleCenter(g.A()), scale) &&
             Zero(DoubleCenter(g.B()), scale);
  }
  return false;
}

template <typename T>
T ClassVerdict<T>::WitnessResidual(const BimatrixGame<T>& g) const {
  if (!witness || !alpha || !beta) return T(0);
  const Matrix<T> lhs = *alpha * g.A() + witness->A();
  const Matrix<T> rhs = *beta * g.B() + witness->B();
  if (label == ClassLabel::kSZ) return MaxAbs(Matrix<T>(lhs + rhs));
  return MaxAbs(Matrix<T>(lhs - rhs));
}

template <typename T>
std::optional<EquivalenceWitness<T>> FindZeroSumWitness(
    const BimatrixGame<T>& g) {
  return FindWitness(g, /*zero_sum=*/true);
}

template <typename T>
std::optional<EquivalenceWitness<T>> FindIdenticalWitness(
    const BimatrixGame<T>& g) {
  return FindWitness(g, /*zero_sum=*/false);
}

template <typename T>
ClassVerdict<T> Classify(const BimatrixGame<T>& g) {
  const T scale = GameScale(g);
  const bool a_zero = Zero(DoubleCenter(g.A()), scale);
  const bool b_zero = Zero(DoubleCenter(g.B()), scale);
  ClassVerdict<T> verdict;
  if (a_zero && b_zero) {
    verdict.label = ClassLabel::kB;
    return verdict;
  }
  if (a_zero || b_zero) {
    verdict.label = ClassLabel::kD;
    return verdict;
  }
  std::optional<EquivalenceWitness<T>> w = FindZeroSumWitness(g);
  verdict.label = ClassLabel::kSZ;
  if (!w) {
    w = FindIdenticalWitness(g);
    verdict.label = ClassLabel::kSI;
  }
  if (!w) {
    verdict.label = ClassLabel::kNone;
    return verdict;
  }
  verdict.alpha = w->alpha;
  verdict.beta = w->beta;
  verdict.witness = std::move(w->offset);
  return verdict;
}

template <typename T>
bool CheckClosureUnderB(const BimatrixGame<T>& g,
                        const BimatrixGame<T>& b_game) {
  const ClassLabel label = Classify(g).label;
  if (label != ClassLabel::kSZ && label != ClassLabel::kSI &&
      label != ClassLabel::kB) {
    throw Error(ErrorCode::kPreconditionViolated,
                std::string("game classifies as ") + ClassLabelName(label));
  }
  if (!IsInSubspace(b_game, Subspace::kB)) {
    throw Error(ErrorCode::kPreconditionViolated,
                "added game is not zero-sum equivalent potential");
  }
  const ClassLabel after = Classify(g + b_game).label;
  return after == ClassLabel::kSZ || after == ClassLabel::kSI ||
         after == ClassLabel::kB || after == ClassLabel::kD;
}

template <typename T>
bool IntersectionIsB(const BimatrixGame<T>& g) {
  const bool both = FindZeroSumWitness(g).has_value() &&
                    FindIdenticalWitness(g).has_value();
  return both == IsInSubspace(g, Subspace::kB);
}

#define COOPLAB_INSTANTIATE(T)                                              \
  template bool IsInSubspace(const BimatrixGame<T>&, Subspace);             \
  template struct ClassVerdict<T>;                                          \
  template std::optional<EquivalenceWitness<T>> FindZeroSumWitness(         \
      const BimatrixGame<T>&);                                              \
  template std::optional<EquivalenceWitness<T>> FindIdenticalWitness(       \
      const BimatrixGame<T>&);                                              \
  template ClassVerdict<T> Classify(const BimatrixGame<T>&);                \
  template bool CheckClosureUnderB(const BimatrixGame<T>&,                  \
                                   const BimatrixGame<T>&);                 \
  template bool IntersectionIsB(const BimatrixGame<T>&);

COOPLAB_INSTANTIATE(double)
COOPLAB_INSTANTIATE(Rational)

#undef COOPLAB_INSTANTIATE

}  // namespace cooplab
