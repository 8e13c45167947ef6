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

#ifndef COOPLAB_NASH_HPP_
#define COOPLAB_NASH_HPP_

#include <vector>

#include "cooplab/game.hpp"

namespace cooplab {

// Equilibria found by enumerating equal-size support pairs and solving the
// indifference equations. Complete for nondegenerate games; for degenerate
// games it returns the vertices it can reach (pure equilibria included).
// Exponential in m + n, intended for m, n <= 4.
template <typename T>
std::vector<MixedProfile<T>> SupportEnumeration(const BimatrixGame<T>& game);

}  // namespace cooplab

#endif  // COOPLAB_NASH_HPP_
