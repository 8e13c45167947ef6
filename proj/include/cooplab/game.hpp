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

#ifndef COOPLAB_GAME_HPP_
#define COOPLAB_GAME_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "cooplab/matrix.hpp"
#include "cooplab/scalar.hpp"

namespace cooplab {

// Action indices are 0-based throughout the library. The CLI and CSV output
// print them 1-based.
using Action = std::size_t;
using ActionPair = std::pair<Action, Action>;

enum class Player { kRow = 1, kColumn = 2 };

// A two-player normal-form game (A, B): A holds the row player's payoffs and
// B the column player's, both m x n. Games form a vector space under
// entrywise addition and scaling.
template <typename T>
class BimatrixGame {
 public:
  BimatrixGame() = default;
  // Throws kDimensionMismatch on shape disagreement or an empty matrix, and
  // kNonFiniteEntry on NaN/inf in the float backend.
  BimatrixGame(Matrix<T> a, Matrix<T> b);

  static BimatrixGame Zero(std::size_t m, std::size_t n) {
    return BimatrixGame(Matrix<T>(m, n), Matrix<T>(m, n));
  }

  const Matrix<T>& A() const { return a_; }
  const Matrix<T>& B() const { return b_; }
  std::size_t m() const { return a_.rows(); }
  std::size_t n() const { return a_.cols(); }
  // G := A + B, the total-welfare matrix.
  Matrix<T> Sum() const { return a_ + b_; }

  BimatrixGame& operator+=(const BimatrixGame& other);
  BimatrixGame& operator-=(const BimatrixGame& other);
  BimatrixGame& operator*=(const T& c);

  friend BimatrixGame operator+(BimatrixGame g, const BimatrixGame& h) {
    return g += h;
  }
  friend BimatrixGame operator-(BimatrixGame g, const BimatrixGame& h) {
    return g -= h;
  }
  friend BimatrixGame operator*(const T& c, BimatrixGame g) { return g *= c; }
  friend bool operator==(const BimatrixGame& g, const BimatrixGame& h) {
    return g.a_ == h.a_ && g.b_ == h.b_;
  }

 private:
  Matrix<T> a_;
  Matrix<T> b_;
};

template <typename T>
BimatrixGame<T> MakeGame(Matrix<T> a, Matrix<T> b) {
  return BimatrixGame<T>(std::move(a), std::move(b));
}

template <typename T>
BimatrixGame<T> Add(const BimatrixGame<T>& g, const BimatrixGame<T>& h) {
  return g + h;
}

template <typename T>
BimatrixGame<T> Scale(const T& c, const BimatrixGame<T>& g) {
  return c * g;
}

BimatrixGame<double> ToDoubleGame(const BimatrixGame<Rational>& g);

// A pair (p, q) of mixed strategies in the simplices of dimension m and n.
template <typename T>
class MixedProfile {
 public:
  MixedProfile() = default;
  // Throws kInvalidArgument unless both vectors are probability vectors
  // (exactly for rationals, within 1e-12 for doubles).
  MixedProfile(Vector<T> p, Vector<T> q);

  static MixedProfile Pure(std::size_t m, std::size_t n, Action i, Action j);
  static MixedProfile Uniform(std::size_t m, std::size_t n);

  const Vector<T>& p() const { return p_; }
  const Vector<T>& q() const { return q_; }

  friend bool operator==(const MixedProfile& a, const MixedProfile& b) {
    return a.p_ == b.p_ && a.q_ == b.q_;
  }

 private:
  Vector<T> p_;
  Vector<T> q_;
};

MixedProfile<double> ToDoubleProfile(const MixedProfile<Rational>& prof);

// Best-response utility and approximation metrics of a profile.
//   U  = max_i (Aq)_i + max_j (p^T B)_j
//   V  = p^T (A + B) q
//   SE = U - V (sum of the two regrets)
//   ME = max of the two regrets
template <typename T>
struct EpsilonReport {
  T U;
  T V;
  T SE;
  T ME;
};

// (Aq)_i for every row action.
template <typename T>
Vector<T> RowActionPayoffs(const Matrix<T>& a, const Vector<T>& q);
// (p^T B)_j for every column action.
template <typename T>
Vector<T> ColumnActionPayoffs(const Matrix<T>& b, const Vector<T>& p);

template <typename T>
std::pair<T, T> Payoffs(const BimatrixGame<T>& game,
                        const MixedProfile<T>& prof);

// All maximizers of the player's action payoffs against `opponent`, in
// increasing index order. Float ties use an absolute tolerance of 1e-9.
template <typename T>
std::vector<Action> BestResponseSet(const BimatrixGame<T>& game, Player player,
                                    const Vector<T>& opponent);

// Maximizers of a payoff vector under the backend's tie policy.
template <typename T>
std::vector<Action> ArgMaxSet(const Vector<T>& values);

template <typename T>
EpsilonReport<T> ComputeEpsilonReport(const BimatrixGame<T>& game,
                                      const MixedProfile<T>& prof);

// True iff ME(prof) <= eps. Throws kNegativeEpsilon for eps < 0.
template <typename T>
bool IsNash(const BimatrixGame<T>& game, const MixedProfile<T>& prof,
            const T& eps);

}  // namespace cooplab

#endif  // COOPLAB_GAME_HPP_
