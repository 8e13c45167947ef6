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

#include "cooplab/game.hpp"

#include <cmath>
#include <string>

#include "cooplab/error.hpp"

namespace cooplab {
namespace {

template <typename T>
void CheckFinite(const Matrix<T>& m) {
  if constexpr (!ScalarTraits<T>::kExact) {
    for (const auto& x : m.values()) {
      if (!std::isfinite(x)) {
        throw Error(ErrorCode::kNonFiniteEntry, "payoff entry is not finite");
      }
    }
  }
}

template <typename T>
void CheckProbabilityVector(const Vector<T>& v, const char* name) {
  if (v.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " must have at least one action");
  }
  T total(0);
  for (const auto& x : v) {
    if constexpr (ScalarTraits<T>::kExact) {
      if (sgn(x) < 0) {
        throw Error(ErrorCode::kInvalidArgument,
                    std::string(name) + " has a negative coordinate");
      }
    } else {
      if (!std::isfinite(x) || x < -1e-12) {
        throw Error(ErrorCode::kInvalidArgument,
                    std::string(name) + " has a negative coordinate");
      }
    }
    total += x;
  }
  bool sums_to_one;
  if constexpr (ScalarTraits<T>::kExact) {
    sums_to_one = total == 1;
  } else {
    sums_to_one = std::abs(total - 1.0) <= 1e-12;
  }
  if (!sums_to_one) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " does not sum to one");
  }
}

template <typename T>
T MaxOf(const Vector<T>& v) {
  T best = v.front();
  for (const auto& x : v) {
    if (x > best) best = x;
  }
  return best;
}

template <typename T>
T Dot(const Vector<T>& x, const Vector<T>& y) {
  T out(0);
  for (std::size_t k = 0; k < x.size(); ++k) out += x[k] * y[k];
  return out;
}

}  // namespace

template <typename T>
BimatrixGame<T>::BimatrixGame(Matrix<T> a, Matrix<T> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (!a_.SameShape(b_)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "A is " + std::to_string(a_.rows()) + "x" +
                    std::to_string(a_.cols()) + " but B is " +
                    std::to_string(b_.rows()) + "x" + std::to_string(b_.cols()));
  }
  if (a_.rows() == 0 || a_.cols() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "games need m, n >= 1");
  }
  CheckFinite(a_);
  CheckFinite(b_);
}

template <typename T>
BimatrixGame<T>& BimatrixGame<T>::operator+=(const BimatrixGame& other) {
  a_ += other.a_;
  b_ += other.b_;
  return *this;
}

template <typename T>
BimatrixGame<T>& BimatrixGame<T>::operator-=(const BimatrixGame& other) {
  a_ -= other.a_;
  b_ -= other.b_;
  return *this;
}

template <typename T>
BimatrixGame<T>& BimatrixGame<T>::operator*=(const T& c) {
  a_ *= c;
  b_ *= c;
  return *this;
}

BimatrixGame<double> ToDoubleGame(const BimatrixGame<Rational>& g) {
  return BimatrixGame<double>(ToDoubleMatrix(g.A()), ToDoubleMatrix(g.B()));
}

template <typename T>
MixedProfile<T>::MixedProfile(Vector<T> p, Vector<T> q)
    : p_(std::move(p)), q_(std::move(q)) {
  CheckProbabilityVector(p_, "p");
  CheckProbabilityVector(q_, "q");
}

template <typename T>
MixedProfile<T> MixedProfile<T>::Pure(std::size_t m, std::size_t n, Action i,
                                      Action j) {
  if (i >= m || j >= n) {
    throw Error(ErrorCode::kIndexOutOfRange, "pure action outside the game");
  }
  Vector<T> p(m, T(0)), q(n, T(0));
  p[i] = T(1);
  q[j] = T(1);
  return MixedProfile(std::move(p), std::move(q));
}

template <typename T>
MixedProfile<T> MixedProfile<T>::Uniform(std::size_t m, std::size_t n) {
  Vector<T> p(m, ScalarTraits<T>::FromRatio(1, static_cast<long>(m)));
  Vector<T> q(n, ScalarTraits<T>::FromRatio(1, static_cast<long>(n)));
  return MixedProfile(std::move(p), std::move(q));
}

MixedProfile<double> ToDoubleProfile(const MixedProfile<Rational>& prof) {
  Vector<double> p, q;
  for (const auto& x : prof.p()) p.push_back(x.get_d());
  for (const auto& x : prof.q()) q.push_back(x.get_d());
  return MixedProfile<double>(std::move(p), std::move(q));
}

template <typename T>
Vector<T> RowActionPayoffs(const Matrix<T>& a, const Vector<T>& q) {
  if (q.size() != a.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "opponent vector has wrong size");
  }
  Vector<T> out(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * q[j];
  return out;
}

template <typename T>
Vector<T> ColumnActionPayoffs(const Matrix<T>& b, const Vector<T>& p) {
  if (p.size() != b.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "opponent vector has wrong size");
  }
  Vector<T> out(b.cols(), T(0));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out[j] += p[i] * b(i, j);
  return out;
}

template <typename T>
std::pair<T, T> Payoffs(const BimatrixGame<T>& game,
                        const MixedProfile<T>& prof) {
  if (prof.p().size() != game.m() || prof.q().size() != game.n()) {
    throw Error(ErrorCode::kDimensionMismatch, "profile does not fit the game");
  }
  return {Dot(prof.p(), RowActionPayoffs(game.A(), prof.q())),
          Dot(prof.p(), RowActionPayoffs(game.B(), prof.q()))};
}

template <typename T>
std::vector<Action> ArgMaxSet(const Vector<T>& values) {
  std::vector<Action> out;
  if (values.empty()) return out;
  const T best = MaxOf(values);
  for (Action k = 0; k < values.size(); ++k) {
    if constexpr (ScalarTraits<T>::kExact) {
      if (values[k] == best) out.push_back(k);
    } else {
      if (best - values[k] <= ScalarTraits<T>::kTieTolerance) out.push_back(k);
    }
  }
  return out;
}

template <typename T>
std::vector<Action> BestResponseSet(const BimatrixGame<T>& game, Player player,
                                    const Vector<T>& opponent) {
  if (player == Player::kRow) {
    return ArgMaxSet(RowActionPayoffs(game.A(), opponent));
  }
  return ArgMaxSet(ColumnActionPayoffs(game.B(), opponent));
}

template <typename T>
EpsilonReport<T> ComputeEpsilonReport(const BimatrixGame<T>& game,
                                      const MixedProfile<T>& prof) {
  if (prof.p().size() != game.m() || prof.q().size() != game.n()) {
    throw Error(ErrorCode::kDimensionMismatch, "profile does not fit the game");
  }
  const Vector<T> aq = RowActionPayoffs(game.A(), prof.q());
  const Vector<T> pb = ColumnActionPayoffs(game.B(), prof.p());
  const T best_row = MaxOf(aq);
  const T best_col = MaxOf(pb);
  const T u1 = Dot(prof.p(), aq);
  const T u2 = Dot(pb, prof.q());
  EpsilonReport<T> r;
  r.U = best_row + best_col;
  r.V = u1 + u2;
  r.SE = r.U - r.V;
  const T regret_row = best_row - u1;
  const T regret_col = best_col - u2;
  r.ME = regret_row > regret_col ? regret_row : regret_col;
  return r;
}

template <typename T>
bool IsNash(const BimatrixGame<T>& game, const MixedProfile<T>& prof,
            const T& eps) {
  if (eps < 0) {
    throw Error(ErrorCode::kNegativeEpsilon, "epsilon must be non-negative");
  }
  return ComputeEpsilonReport(game, prof).ME <= eps;
}

#define COOPLAB_INSTANTIATE(T)                                                 \
  template class BimatrixGame<T>;                                              \
  template class MixedProfile<T>;                                              \
  template Vector<T> RowActionPayoffs(const Matrix<T>&, const Vector<T>&);     \
  template Vector<T> ColumnActionPayoffs(const Matrix<T>&, const Vector<T>&);  \
  template std::pair<T, T> Payoffs(const BimatrixGame<T>&,                     \
                                   const MixedProfile<T>&);                    \
  template std::vector<Action> ArgMaxSet(const Vector<T>&);                    \
  template std::vector<Action> BestResponseSet(const BimatrixGame<T>&, Player, \
                                               const Vector<T>&);              \
  template EpsilonReport<T> ComputeEpsilonReport(const BimatrixGame<T>&,       \
                                                 const MixedProfile<T>&);      \
  template bool IsNash(const BimatrixGame<T>&, const MixedProfile<T>&, const T&);

COOPLAB_INSTANTIATE(double)
COOPLAB_INSTANTIATE(Rational)

#undef COOPLAB_INSTANTIATE

}  // namespace cooplab
