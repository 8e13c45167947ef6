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

#ifndef COOPLAB_DFP_HPP_
#define COOPLAB_DFP_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "cooplab/game.hpp"

namespace cooplab {

enum class TieRule { kLowestIndex, kStickyPrevious, kSeededRandom };

const char* TieRuleName(TieRule rule);
// Accepts "lowest", "sticky", "random".
TieRule ParseTieRule(std::string_view name);

// Picks one action out of a best-response set. Sticky keeps the player's
// previous action when it is still a best response; random draws uniformly
// from a per-run seeded stream.
class TieBreaker {
 public:
  explicit TieBreaker(TieRule rule = TieRule::kLowestIndex,
                      std::uint64_t seed = 0)
      : rule_(rule), rng_(seed) {}

  Action Choose(std::span<const Action> candidates,
                std::optional<Action> previous);

  TieRule rule() const { return rule_; }

 private:
  TieRule rule_;
  std::mt19937_64 rng_;
};

struct DfpConfig {
  std::size_t rounds = 100000;
  TieRule tie_rule = TieRule::kLowestIndex;
  std::uint64_t seed = 0;
  // A run counts as converged when ME of the final profile is below this.
  double convergence_eps = 1e-2;
  // Stride (in rounds) between recorded samples.
  std::size_t record_every = 1000;
  bool keep_br_stream = true;
};

template <typename T>
struct DfpSample {
  std::size_t t;
  MixedProfile<T> profile;
  ActionPair br;  // the pair played from this profile
  EpsilonReport<T> report;
};

template <typename T>
struct Trajectory {
  std::vector<DfpSample<T>> samples;
  // Pair played at rounds t = 1, 2, ..., rounds.
  std::vector<ActionPair> br_stream;
  bool converged = false;
  MixedProfile<T> final_profile;
  EpsilonReport<T> final_report;
};

// Periodic tail of a best-response pair sequence.
struct CycleDescriptor {
  // Distinct consecutive pairs, rotated to start at the lexicographically
  // smallest pair.
  std::vector<ActionPair> pairs;
  // Round (1-based) at which the periodic tail starts.
  std::size_t entry_round = 0;
  // Full periods observed in the tail.
  std::size_t repetitions = 0;
};

// Initial condition: a pure action pair or an arbitrary mixed profile.
template <typename T>
using DfpInit = std::variant<ActionPair, MixedProfile<T>>;

// One simultaneous fictitious-play update from beliefs at time t >= 1:
// both players best-respond to the time-t beliefs, then
//   p(t+1) = (t p(t) + e_i) / (t + 1), q(t+1) = (t q(t) + e_j) / (t + 1).
// `previous` feeds the sticky tie rule.
template <typename T>
std::pair<MixedProfile<T>, ActionPair> DfpStep(
    const BimatrixGame<T>& game, const MixedProfile<T>& profile,
    std::size_t t, TieBreaker& ties,
    std::optional<ActionPair> previous = std::nullopt);

template <typename T>
Trajectory<T> RunDfp(const BimatrixGame<T>& game, const DfpInit<T>& init,
                     const DfpConfig& cfg);

// Smallest period K such that the last min_repetitions * K runs of the
// run-length compressed stream repeat with period K, or a final run covering
// at least half of the stream (K = 1). Requires at least 4 entries.
//
// Two repetitions is the default: on cycles whose runs grow geometrically
// (Shapley's six-pair cycle grows about 2.5x per run) a third repetition
// needs orders of magnitude more rounds.
std::optional<CycleDescriptor> DetectCycle(std::span<const ActionPair> stream,
                                          std::size_t min_repetitions = 2);

template <typename T>
struct CycleSums {
  std::vector<T> values;  // (A + B) at each cycle pair
  bool all_equal = false;
  bool equals_min = false;  // common value equals min over all of A + B
};

// Throws kIndexOutOfRange when a cycle pair falls outside the game.
template <typename T>
CycleSums<T> CycleSumCheck(const BimatrixGame<T>& game,
                           const CycleDescriptor& cycle);

}  // namespace cooplab

#endif  // COOPLAB_DFP_HPP_
