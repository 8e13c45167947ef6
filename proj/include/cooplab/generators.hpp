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

#ifndef COOPLAB_GENERATORS_HPP_
#define COOPLAB_GENERATORS_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "cooplab/game.hpp"

namespace cooplab {

enum class GameClass {
  kZeroSum,
  kIdenticalInterest,
  kNonStrategic,
  kNormalizedHarmonic,
  kNormalizedPotential,
  kBClass,
  kSZ,
  kSI,
  kDClass,
};

const char* GameClassName(GameClass c);
// Throws kUnsupportedClass for unknown names.
GameClass ParseGameClass(std::string_view name);

// Deterministic game of the requested class on a unit payoff scale: base
// entries are multiples of 1/9 in [-1, 1] and scalings multiples of 1/6 in
// (0, 1], so sums of components stay within a few units. kSZ and kSI draw (alpha Z, -beta Z) + E and (alpha I, beta I) + E
// with alpha, beta > 0 and a non-degenerate centered part; together with
// kDClass they need m, n >= 2 and otherwise throw kUnsupportedClass.
BimatrixGame<Rational> RandomGame(GameClass cls, std::size_t m, std::size_t n,
                                  std::uint64_t seed);

}  // namespace cooplab

#endif  // COOPLAB_GENERATORS_HPP_
