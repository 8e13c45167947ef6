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

#ifndef COOPLAB_CFP_HPP_
#define COOPLAB_CFP_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cooplab/dfp.hpp"
#include "cooplab/game.hpp"

namespace cooplab {

// Continuous-time fictitious play, integrated exactly in log-time s = ln t.
// Between switches both players flow straight to their current pure best
// responses, p(s0 + d) = e^{-d} p(s0) + (1 - e^{-d}) e_i, so each switch time
// is the root of an affine function of w = e^{-d}.

struct CfpConfig {
  double horizon_log = std::log(1e6);
  TieRule tie_rule = TieRule::kLowestIndex;
  std::uint64_t seed = 0;
  // Verdict threshold: ME of the final profile at or below this counts as
  // convergence to an equilibrium.
  double convergence_eps = 1e-3;
  // Once ME drops to this level the state is an equilibrium up to rounding
  // and is held there (a stationary solution) until the horizon.
  double rest_tolerance = 1e-9;
  // Uniform grid of U samples over [0, horizon].
  std::size_t bru_samples = 401;
  // Forced split length in log-time; infinity disables splitting.
  double max_segment = INFINITY;
  std::size_t max_segments = 20'000'000;
};

// Mixed flow target used while both players stay indifferent across several
// actions (a sliding mode along the tie set).
struct CfpTarget {
  Vector<double> x;
  Vector<double> y;
};

struct CfpState {
  double s = 0.0;
  MixedProfile<double> profile;
  ActionPair br{0, 0};
  // Set when the state slides; `br` is then a representative pair from the
  // supports of the target.
  std::optional<CfpTarget> slide;
};

// Start of a constant-best-response interval. A resting segment holds an
// equilibrium profile fixed; its best-response "vertex" is the profile itself.
struct CfpSegment {
  double s_start = 0.0;
  double s_end = 0.0;
  ActionPair br{0, 0};
  bool resting = false;
  bool sliding = false;
};

enum class CfpVerdict { kConvergedToNE, kEnteredCycle, kHorizonExhausted };

const char* CfpVerdictName(CfpVerdict v);

class CfpTrajectory {
 public:
  std::vector<CfpSegment> segments;
  // (s, U) on the sampling grid.
  std::vector<std::pair<double, double>> bru_series;
  CfpVerdict verdict = CfpVerdict::kHorizonExhausted;
  std::optional<CycleDescriptor> cycle;
  MixedProfile<double> final_profile;
  double final_me = 0.0;
  std::size_t m = 0;
  std::size_t n = 0;

  MixedProfile<double> SegmentStart(std::size_t k) const;
  // Flow target of segment k: the pure pair, or the sliding mixture.
  CfpTarget SegmentTarget(std::size_t k) const;
  // Exact profile at log-time s within the covered range.
  MixedProfile<double> ProfileAt(double s) const;
  double s_end() const { return segments.empty() ? 0.0 : segments.back().s_end; }

  void PushSegment(const CfpSegment& seg, const MixedProfile<double>& start,
                   const std::optional<CfpTarget>& slide = std::nullopt);

 private:
  std::vector<double> starts_;  // (m + n) coordinates per segment
  std::vector<std::pair<std::size_t, CfpTarget>> slides_;  // by segment index
};

// Best-response pair at `profile`, resolving ties by the growth direction
// toward the opponent's target and then by `ties`.
ActionPair SelectCfpPair(const BimatrixGame<double>& game,
                         const MixedProfile<double>& profile,
                         std::optional<ActionPair> previous, TieBreaker& ties);

// Pair plus optional sliding target. When both players are tied across
// several actions, the admissible motions are the equilibria of the game
// restricted to the tied actions; a fully mixed one is preferred, which keeps
// symmetric starts symmetric.
struct CfpMove {
  ActionPair br{0, 0};
  std::optional<CfpTarget> slide;
};

CfpMove SelectCfpMove(const BimatrixGame<double>& game,
                      const MixedProfile<double>& profile,
                      std::optional<ActionPair> previous, TieBreaker& ties);

struct CfpAdvance {
  CfpState next;
  ActionPair switched_to;
  double duration = 0.0;
  bool reached_limit = false;  // stopped at the horizon / split, not a switch
};

// Flows the state to the earliest best-response switch (or to `s_limit`).
// Throws kNumericalStall when the next switch is closer than 1e-14 in w.
CfpAdvance CfpSegmentAdvance(const BimatrixGame<double>& game,
                             const CfpState& state, double s_limit,
                             TieBreaker& ties);

// Starts at t = 1 (s = 0).
CfpTrajectory RunCfp(const BimatrixGame<double>& game,
                     const MixedProfile<double>& init, const CfpConfig& cfg);

// dU/dt = ((A + B)_{ij} - U) / t for a best-response pair (i, j). A sliding
// target contributes x^T (A + B) y in place of (A + B)_{ij}.
double BruDerivative(const BimatrixGame<double>& game,
                     const MixedProfile<double>& profile, ActionPair br,
                     double t = 1.0);

// Max |U(t) - (t0 U(t0) + integral_{t0}^{t} G_{i(tau) j(tau)} dtau) / t| over
// `points` log-uniform sample times in [t0, e^{s_end}].
double BruIntegralCheck(const CfpTrajectory& traj,
                        const BimatrixGame<double>& game, double t0,
                        std::size_t points = 200);

enum class CertificateKind { kCertifiedNegative, kFoundNonNegative, kInconclusive };

const char* CertificateKindName(CertificateKind k);

struct Theorem4Certificate {
  CertificateKind kind = CertificateKind::kInconclusive;
  std::optional<MixedProfile<double>> witness;
  std::size_t path_points = 0;
  std::size_t evaluated = 0;
  double max_derivative = -INFINITY;
};

struct CertificateOptions {
  double horizon_log = std::log(1e4);
  // Sampled points closer than this (L-infinity) to an equilibrium of the
  // zero-sum game are skipped.
  double ne_exclusion = 1e-3;
  std::size_t min_path_points = 3;
};

// Samples convex combinations of profiles traced by CFP runs on
// zero_sum + lambda * identical that follow `cycle`, and checks dU/dt < 0 at
// each. A numerical certificate, not a proof. Throws kInsufficientPathData
// for an empty cycle; games larger than 4x4 throw kInvalidArgument.
Theorem4Certificate Theorem4CertificateCheck(
    const BimatrixGame<double>& zero_sum, double lambda,
    const BimatrixGame<double>& identical, const CycleDescriptor& cycle,
    std::size_t samples, std::uint64_t seed,
    const CertificateOptions& options = {});

}  // namespace cooplab

#endif  // COOPLAB_CFP_HPP_
