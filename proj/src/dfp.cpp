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

#include "cooplab/dfp.hpp"

#include <algorithm>
#include <string>

#include "cooplab/error.hpp"

namespace cooplab {
namespace {

// Maximizers of scaled payoffs (payoffs times t). The float tie tolerance
// applies to the unscaled payoffs, hence the factor t.
template <typename T>
std::vector<Action> ScaledArgMax(const Vector<T>& scaled, std::size_t t) {
  T best = scaled.front();
  for (const auto& x : scaled) {
    if (x > best) best = x;
  }
  std::vector<Action> out;
  for (Action k = 0; k < scaled.size(); ++k) {
    if constexpr (ScalarTraits<T>::kExact) {
      if (scaled[k] == best) out.push_back(k);
    } else {
      if (best - scaled[k] <=
          ScalarTraits<T>::kTieTolerance * static_cast<double>(t)) {
        out.push_back(k);
      }
    }
  }
  return out;
}

template <typename T>
MixedProfile<T> ProfileFromWeights(const Vector<T>& wp, const Vector<T>& wq,
                                   std::size_t t) {
  const T total(static_cast<long>(t));
  Vector<T> p(wp.size()), q(wq.size());
  for (std::size_t k = 0; k < wp.size(); ++k) p[k] = wp[k] / total;
  for (std::size_t k = 0; k < wq.size(); ++k) q[k] = wq[k] / total;
  return MixedProfile<T>(std::move(p), std::move(q));
}

std::vector<ActionPair> Compress(std::span<const ActionPair> stream,
                                 std::vector<std::size_t>* starts) {
  std::vector<ActionPair> runs;
  for (std::size_t k = 0; k < stream.size(); ++k) {
    if (runs.empty() || runs.back() != stream[k]) {
      runs.push_back(stream[k]);
      if (starts) starts->push_back(k);
    }
  }
  return runs;
}

}  // namespace

const char* TieRuleName(TieRule rule) {
  switch (rule) {
    case TieRule::kLowestIndex: return "lowest";
    case TieRule::kStickyPrevious: return "sticky";
    case TieRule::kSeededRandom: return "random";
  }
  return "?";
}

TieRule ParseTieRule(std::string_view name) {
  if (name == "lowest") return TieRule::kLowestIndex;
  if (name == "sticky") return TieRule::kStickyPrevious;
  if (name == "random") return TieRule::kSeededRandom;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown tie rule '" + std::string(name) + "'");
}

Action TieBreaker::Choose(std::span<const Action> candidates,
                          std::optional<Action> previous) {
  switch (rule_) {
    case TieRule::kLowestIndex:
      return candidates.front();
    case TieRule::kStickyPrevious:
      if (previous && std::find(candidates.begin(), candidates.end(),
                                *previous) != candidates.end()) {
        return *previous;
      }
      return candidates.front();
    case TieRule::kSeededRandom:
      if (candidates.size() == 1) return candidates.front();
      return candidates[rng_() % candidates.size()];
  }
  return candidates.front();
}

template <typename T>
std::pair<MixedProfile<T>, ActionPair> DfpStep(
    const BimatrixGame<T>& game, const MixedProfile<T>& profile,
    std::size_t t, TieBreaker& ties, std::optional<ActionPair> previous) {
  if (t < 1) throw Error(ErrorCode::kInvalidArgument, "t must be >= 1");
  const auto rows = BestResponseSet(game, Player::kRow, profile.q());
  const auto cols = BestResponseSet(game, Player::kColumn, profile.p());
  const Action i = ties.Choose(
      rows, previous ? std::optional<Action>(previous->first) : std::nullopt);
  const Action j = ties.Choose(
      cols, previous ? std::optional<Action>(previous->second) : std::nullopt);
  const T tt(static_cast<long>(t));
  const T next(static_cast<long>(t + 1));
  Vector<T> p = profile.p(), q = profile.q();
  for (auto& x : p) x = x * tt / next;
  for (auto& x : q) x = x * tt / next;
  p[i] += T(1) / next;
  q[j] += T(1) / next;
  return {MixedProfile<T>(std::move(p), std::move(q)), {i, j}};
}

template <typename T>
Trajectory<T> RunDfp(const BimatrixGame<T>& game, const DfpInit<T>& init,
                     const DfpConfig& cfg) {
  if (cfg.rounds < 1) {
    throw Error(ErrorCode::kInvalidArgument, "rounds must be >= 1");
  }
  if (cfg.record_every < 1 || cfg.record_every > cfg.rounds) {
    throw Error(ErrorCode::kInvalidArgument,
                "record_every must lie in [1, rounds]");
  }
  const std::size_t m = game.m(), n = game.n();
  MixedProfile<T> start =
      std::holds_alternative<ActionPair>(init)
          ? MixedProfile<T>::Pure(m, n, std::get<ActionPair>(init).first,
                                  std::get<ActionPair>(init).second)
          : std::get<MixedProfile<T>>(init);
  if (start.p().size() != m || start.q().size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "initial profile does not fit");
  }

  // Weights are t times the beliefs; payoffs against them are t times the
  // payoffs against the beliefs, which keeps integer games exact in floats.
  Vector<T> wp = start.p(), wq = start.q();
  Vector<T> aq = RowActionPayoffs(game.A(), wq);
  Vector<T> pb = ColumnActionPayoffs(game.B(), wp);

  Trajectory<T> traj;
  if (cfg.keep_br_stream) traj.br_stream.reserve(cfg.rounds);
  TieBreaker ties(cfg.tie_rule, cfg.seed);
  std::optional<Action> prev_i, prev_j;
  std::size_t t = 1;
  for (std::size_t round = 0; round < cfg.rounds; ++round, ++t) {
    const Action i = ties.Choose(ScaledArgMax(aq, t), prev_i);
    const Action j = ties.Choose(ScaledArgMax(pb, t), prev_j);
    if ((t - 1) % cfg.record_every == 0) {
      MixedProfile<T> prof = ProfileFromWeights(wp, wq, t);
      EpsilonReport<T> rep = ComputeEpsilonReport(game, prof);
      traj.samples.push_back({t, std::move(prof), {i, j}, std::move(rep)});
    }
    if (cfg.keep_br_stream) traj.br_stream.emplace_back(i, j);
    wp[i] += T(1);
    wq[j] += T(1);
    for (std::size_t k = 0; k < n; ++k) pb[k] += game.B()(i, k);
    for (std::size_t k = 0; k < m; ++k) aq[k] += game.A()(k, j);
    prev_i = i;
    prev_j = j;
  }
  traj.final_profile = ProfileFromWeights(wp, wq, t);
  traj.final_report = ComputeEpsilonReport(game, traj.final_profile);
  {
    // The pair that would be played next, for the final sample row.
    TieBreaker peek = ties;
    const Action i = peek.Choose(ScaledArgMax(aq, t), prev_i);
    const Action j = peek.Choose(ScaledArgMax(pb, t), prev_j);
    traj.samples.push_back({t, traj.final_profile, {i, j}, traj.final_report});
  }
  traj.converged = ToDouble(traj.final_report.ME) <= cfg.convergence_eps;
  return traj;
}

std::optional<CycleDescriptor> DetectCycle(std::span<const ActionPair> stream,
                                          std::size_t min_repetitions) {
  if (stream.size() < 4) return std::nullopt;
  std::vector<std::size_t> starts;
  const std::vector<ActionPair> runs = Compress(stream, &starts);
  const std::size_t total = runs.size();
  // A final run spanning the trailing half is a fixed pair (K = 1).
  const std::size_t last_run = stream.size() - starts.back();
  if (2 * last_run >= stream.size()) {
    return CycleDescriptor{{runs.back()}, starts.back() + 1, last_run};
  }
  const std::size_t reps = std::max<std::size_t>(min_repetitions, 2);
  for (std::size_t k = 1; reps * k <= total; ++k) {
    // The last reps * k runs must be k-periodic.
    bool periodic = true;
    for (std::size_t x = 0; x < (reps - 1) * k && periodic; ++x) {
      periodic = runs[total - 1 - x] == runs[total - 1 - x - k];
    }
    if (!periodic) continue;
    // Extend the periodic tail backwards as far as it goes.
    std::size_t begin = total - reps * k;
    while (begin > 0 && runs[begin - 1] == runs[begin - 1 + k]) --begin;
    std::vector<ActionPair> period(runs.begin() + static_cast<long>(total - k),
                                   runs.end());
    auto smallest = std::min_element(period.begin(), period.end());
    std::rotate(period.begin(), smallest, period.end());
    CycleDescriptor out;
    out.pairs = std::move(period);
    out.entry_round = starts[begin] + 1;
    out.repetitions = (total - begin) / k;
    return out;
  }
  return std::nullopt;
}

template <typename T>
CycleSums<T> CycleSumCheck(const BimatrixGame<T>& game,
                           const CycleDescriptor& cycle) {
  const Matrix<T> sum = game.Sum();
  CycleSums<T> out;
  for (const auto& [i, j] : cycle.pairs) {
    if (i >= game.m() || j >= game.n()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "cycle pair outside the payoff table");
    }
    out.values.push_back(sum(i, j));
  }
  if (out.values.empty()) return out;
  auto same = [](const T& x, const T& y) {
    if constexpr (ScalarTraits<T>::kExact) {
      return x == y;
    } else {
      return std::abs(x - y) <= ScalarTraits<T>::kTieTolerance;
    }
  };
  out.all_equal = std::all_of(out.values.begin(), out.values.end(),
                              [&](const T& v) { return same(v, out.values[0]); });
  T lowest = sum(0, 0);
  for (const auto& v : sum.values()) {
    if (v < lowest) lowest = v;
  }
  out.equals_min = out.all_equal && same(out.values[0], lowest);
  return out;
}

#define COOPLAB_INSTANTIATE(T)                                                \
  template std::pair<MixedProfile<T>, ActionPair> DfpStep(                    \
      const BimatrixGame<T>&, const MixedProfile<T>&, std::size_t,            \
      TieBreaker&, std::optional<ActionPair>);                                \
  template Trajectory<T> RunDfp(const BimatrixGame<T>&, const DfpInit<T>&,    \
                                const DfpConfig&);                            \
  template CycleSums<T> CycleSumCheck(const BimatrixGame<T>&,                 \
                                      const CycleDescriptor&);

COOPLAB_INSTANTIATE(double)
COOPLAB_INSTANTIATE(Rational)

#undef COOPLAB_INSTANTIATE

}  // namespace cooplab
