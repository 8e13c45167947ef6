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

#ifndef COOPLAB_EQUIVALENCE_HPP_
#define COOPLAB_EQUIVALENCE_HPP_

#include <optional>
#include <string>

#include "cooplab/game.hpp"

namespace cooplab {

// Linear subspaces of the game space:
//   kZ zero-sum, kI identical interest, kE non-strategic, kN normalized,
//   kH normalized harmonic, kP normalized potential, kB zero-sum equivalent
//   potential (both payoff matrices of the form u 1^T + 1 v^T).
enum class Subspace { kZ, kI, kE, kN, kH, kP, kB };

const char* SubspaceName(Subspace s);

template <typename T>
bool IsInSubspace(const BimatrixGame<T>& g, Subspace space);

enum class ClassLabel {
  kSZ,    // strategically equivalent to a zero-sum game
  kSI,    // strategically equivalent to an identical-interest game
  kB,     // both; the intersection is exactly the kB subspace
  kD,     // exactly one payoff matrix has the dominant u 1^T + 1 v^T form
  kNone,
};

const char* ClassLabelName(ClassLabel label);

// Positive scalings (alpha, beta) for Definition-style strategic equivalence
// (alpha A, beta B) + E. For kSZ the witness satisfies
// (alpha A + E.A) + (beta B + E.B) = 0, for kSI alpha A + E.A = beta B + E.B.
template <typename T>
struct ClassVerdict {
  ClassLabel label = ClassLabel::kNone;
  std::optional<T> alpha;
  std::optional<T> beta;
  std::optional<BimatrixGame<T>> witness;

  // Max-abs residual of the witness equation; 0 when no witness applies.
  T WitnessResidual(const BimatrixGame<T>& g) const;
};

template <typename T>
struct EquivalenceWitness {
  T alpha;
  T beta;
  BimatrixGame<T> offset;  // the non-strategic game E
};

// Witness that (alpha A, beta B) + E is zero-sum, if one exists.
template <typename T>
std::optional<EquivalenceWitness<T>> FindZeroSumWitness(
    const BimatrixGame<T>& g);
// Witness that (alpha A, beta B) + E is identical-interest, if one exists.
template <typename T>
std::optional<EquivalenceWitness<T>> FindIdenticalWitness(
    const BimatrixGame<T>& g);

template <typename T>
ClassVerdict<T> Classify(const BimatrixGame<T>& g);

// Adding a kB game never leaves the equivalence classes. Throws
// kPreconditionViolated unless `g` classifies kSZ/kSI/kB and `b_game` is in
// the kB subspace.
template <typename T>
bool CheckClosureUnderB(const BimatrixGame<T>& g,
                        const BimatrixGame<T>& b_game);

// (has zero-sum witness && has identical witness) <=> g in kB.
template <typename T>
bool IntersectionIsB(const BimatrixGame<T>& g);

}  // namespace cooplab

#endif  // COOPLAB_EQUIVALENCE_HPP_
