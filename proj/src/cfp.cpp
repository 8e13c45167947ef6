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

#include "cooplab/cfp.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "cooplab/error.hpp"
#include "cooplab/nash.hpp"

namespace cooplab {
namespace {

constexpr double kCfpTieTolerance = 1e-12;
constexpr double kStallInterval = 1e-14;

double PayoffScale(const BimatrixGame<double>& game) {
  return std::max({1.0, MaxAbs(game.A()), MaxAbs(game.B())});
}

std::vector<Action> NearMax(const Vector<double>& values, double tol) {
  const double best = *std::max_element(values.begin(), values.end());
  std::vector<Action> out;
  for (Action k = 0; k < values.size(); ++k) {
    if (best - values[k] <= tol) out.push_back(k);
  }
  return out;
}

// Members of `candidates` maximizing key(k) within tolerance.
template <typename Key>
std::vector<Action> RefineBy(const std::vector<Action>& candidates, Key key,
                             double tol) {
  double best = -INFINITY;
  for (Action k : candidates) best = std::max(best, key(k));
  std::vector<Action> out;
  for (Action k : candidates) {
    if (best - key(k) <= tol) out.push_back(k);
  }
  return out;
}

MixedProfile<double> Normalized(Vector<double> p, Vector<double> q) {
  double sp = 0.0, sq = 0.0;
  for (double& x : p) {
    x = std::max(x, 0.0);
    sp += x;
  }
  for (double& x : q) {
    x = std::max(x, 0.0);
    sq += x;
  }
  for (double& x : p) x /= sp;
  for (double& x : q) x /= sq;
  return MixedProfile<double>(std::move(p), std::move(q));
}

CfpTarget PureTarget(std::size_t m, std::size_t n, ActionPair br) {
  CfpTarget t{Vector<double>(m, 0.0), Vector<double>(n, 0.0)};
  t.x[br.first] = 1.0;
  t.y[br.second] = 1.0;
  return t;
}

MixedProfile<double> Flow(const MixedProfile<double>& start,
                          const CfpTarget& target, double duration) {
  const double w = std::exp(-duration);
  const double pull = -std::expm1(-duration);
  Vector<double> p = start.p(), q = start.q();
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = w * p[k] + pull * target.x[k];
  for (std::size_t k = 0; k < q.size(); ++k) q[k] = w * q[k] + pull * target.y[k];
  return Normalized(std::move(p), std::move(q));
}

CfpTarget TargetOf(const CfpState& state, std::size_t m, std::size_t n) {
  return state.slide ? *state.slide : PureTarget(m, n, state.br);
}

double TargetValue(const BimatrixGame<double>& game, const CfpTarget& target) {
  const Matrix<double> sum = game.Sum();
  double out = 0.0;
  for (std::size_t i = 0; i < game.m(); ++i) {
    if (target.x[i] == 0.0) continue;
    for (std::size_t j = 0; j < game.n(); ++j) {
      out += target.x[i] * sum(i, j) * target.y[j];
    }
  }
  return out;
}

double Bru(const BimatrixGame<double>& game, const MixedProfile<double>& prof) {
  return ComputeEpsilonReport(game, prof).U;
}

}  // namespace

const char* CfpVerdictName(CfpVerdict v) {
  switch (v) {
    case CfpVerdict::kConvergedToNE: return "ConvergedToNE";
    case CfpVerdict::kEnteredCycle: return "EnteredCycle";
    case CfpVerdict::kHorizonExhausted: return "HorizonExhausted";
  }
  return "?";
}

const char* CertificateKindName(CertificateKind k) {
  switch (k) {
    case CertificateKind::kCertifiedNegative: return "CertifiedNegative";
    case CertificateKind::kFoundNonNegative: return "FoundNonNegative";
    case CertificateKind::kInconclusive: return "Inconclusive";
  }
  return "?";
}

void CfpTrajectory::PushSegment(const CfpSegment& seg,
                                const MixedProfile<double>& start,
                                const std::optional<CfpTarget>& slide) {
  if (slide) slides_.emplace_back(segments.size(), *slide);
  segments.push_back(seg);
  starts_.insert(starts_.end(), start.p().begin(), start.p().end());
  starts_.insert(starts_.end(), start.q().begin(), start.q().end());
}

MixedProfile<double> CfpTrajectory::SegmentStart(std::size_t k) const {
  const auto* base = starts_.data() + k * (m + n);
  return MixedProfile<double>(Vector<double>(base, base + m),
                              Vector<double>(base + m, base + m + n));
}

CfpTarget CfpTrajectory::SegmentTarget(std::size_t k) const {
  if (segments[k].sliding) {
    auto it = std::lower_bound(
        slides_.begin(), slides_.end(), k,
        [](const auto& entry, std::size_t key) { return entry.first < key; });
    if (it != slides_.end() && it->first == k) return it->second;
  }
  return PureTarget(m, n, segments[k].br);
}

MixedProfile<double> CfpTrajectory::ProfileAt(double s) const {
  if (segments.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty trajectory");
  }
  auto it = std::upper_bound(
      segments.begin(), segments.end(), s,
      [](double value, const CfpSegment& seg) { return value < seg.s_start; });
  const std::size_t k =
      it == segments.begin() ? 0 : static_cast<std::size_t>(it - segments.begin()) - 1;
  const CfpSegment& seg = segments[k];
  MixedProfile<double> start = SegmentStart(k);
  if (seg.resting) return start;
  const double local = std::clamp(s, seg.s_start, seg.s_end) - seg.s_start;
  return Flow(start, SegmentTarget(k), local);
}

ActionPair SelectCfpPair(const BimatrixGame<double>& game,
                         const MixedProfile<double>& profile,
                         std::optional<ActionPair> previous, TieBreaker& ties) {
  const double tol = kCfpTieTolerance * PayoffScale(game);
  const auto rows = NearMax(RowActionPayoffs(game.A(), profile.q()), tol);
  const auto cols = NearMax(ColumnActionPayoffs(game.B(), profile.p()), tol);
  const std::optional<Action> prev_i =
      previous ? std::optional<Action>(previous->first) : std::nullopt;
  const std::optional<Action> prev_j =
      previous ? std::optional<Action>(previous->second) : std::nullopt;
  Action i = ties.Choose(rows, prev_i);
  Action j = ties.Choose(cols, prev_j);
  // Among tied actions prefer the one whose payoff grows fastest while the
  // opponent flows toward its own target.
  for (int iter = 0; iter < 4; ++iter) {
    const auto rows2 =
        RefineBy(rows, [&](Action k) { return game.A()(k, j); }, tol);
    const Action ni = ties.Choose(rows2, prev_i);
    const auto cols2 =
        RefineBy(cols, [&](Action k) { return game.B()(ni, k); }, tol);
    const Action nj = ties.Choose(cols2, prev_j);
    const bool stable = ni == i && nj == j;
    i = ni;
    j = nj;
    if (stable) break;
  }
  return {i, j};
}

CfpMove SelectCfpMove(const BimatrixGame<double>& game,
                      const MixedProfile<double>& profile,
                      std::optional<ActionPair> previous, TieBreaker& ties) {
  CfpMove move{SelectCfpPair(game, profile, previous, ties), std::nullopt};
  const double tol = kCfpTieTolerance * PayoffScale(game);
  const auto rows = NearMax(RowActionPayoffs(game.A(), profile.q()), tol);
  const auto cols = NearMax(ColumnActionPayoffs(game.B(), profile.p()), tol);
  if (rows.size() < 2 || cols.size() < 2 || rows.size() > 6 || cols.size() > 6) {
    return move;
  }
  Matrix<double> a(rows.size(), cols.size()), b(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      a(r, c) = game.A()(rows[r], cols[c]);
      b(r, c) = game.B()(rows[r], cols[c]);
    }
  }
  auto support = [](const Vector<double>& v) {
    std::size_t count = 0;
    for (double x : v) count += x > 1e-12;
    return count;
  };
  const MixedProfile<double>* best = nullptr;
  std::size_t best_support = 1;
  const auto local = SupportEnumeration(BimatrixGame<double>(a, b));
  for (const auto& eq : local) {
    const std::size_t size = std::min(support(eq.p()), support(eq.q()));
    if (size > best_support) {
      best = &eq;
      best_support = size;
    }
  }
  if (best == nullptr) return move;
  CfpTarget target{Vector<double>(game.m(), 0.0), Vector<double>(game.n(), 0.0)};
  std::optional<Action> rep_i, rep_j;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (best->p()[r] <= 1e-12) continue;
    target.x[rows[r]] = best->p()[r];
    if (!rep_i) rep_i = rows[r];
  }
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (best->q()[c] <= 1e-12) continue;
    target.y[cols[c]] = best->q()[c];
    if (!rep_j) rep_j = cols[c];
  }
  move.br = {*rep_i, *rep_j};
  move.slide = std::move(target);
  return move;
}

CfpAdvance CfpSegmentAdvance(const BimatrixGame<double>& game,
                             const CfpState& state, double s_limit,
                             TieBreaker& ties) {
  const auto [i, j] = state.br;
  const double tol = kCfpTieTolerance * PayoffScale(game);
  const CfpTarget target = TargetOf(state, game.m(), game.n());
  const Vector<double> aq = RowActionPayoffs(game.A(), state.profile.q());
  const Vector<double> pb = ColumnActionPayoffs(game.B(), state.profile.p());
  // Payoffs at the targets; the supports share one value by construction.
  const Vector<double> ay = RowActionPayoffs(game.A(), target.y);
  const Vector<double> xb = ColumnActionPayoffs(game.B(), target.x);
  double earliest = INFINITY;
  auto consider = [&](double gap, double growth) {
    // gap <= 0 is the current payoff difference, growth its value at the
    // opponent's target. Root of w*gap + (1-w)*growth = 0.
    if (growth <= tol) return;
    earliest = std::min(earliest, std::log1p(-std::min(gap, 0.0) / growth));
  };
  for (Action k = 0; k < game.m(); ++k) {
    if (target.x[k] == 0.0) consider(aq[k] - aq[i], ay[k] - ay[i]);
  }
  for (Action k = 0; k < game.n(); ++k) {
    if (target.y[k] == 0.0) consider(pb[k] - pb[j], xb[k] - xb[j]);
  }
  const double room = s_limit - state.s;
  CfpAdvance out;
  if (earliest >= room) {
    out.duration = std::max(room, 0.0);
    out.reached_limit = true;
  } else {
    if (-std::expm1(-earliest) < kStallInterval) {
      throw Error(ErrorCode::kNumericalStall,
                  "best-response switch interval below 1e-14 at s = " +
                      std::to_string(state.s));
    }
    out.duration = earliest;
  }
  out.next.s = out.reached_limit ? s_limit : state.s + out.duration;
  out.next.profile = Flow(state.profile, target, out.duration);
  if (out.reached_limit) {
    out.next.br = state.br;
    out.next.slide = state.slide;
  } else {
    CfpMove move = SelectCfpMove(game, out.next.profile, state.br, ties);
    out.next.br = move.br;
    out.next.slide = std::move(move.slide);
  }
  out.switched_to = out.next.br;
  return out;
}

CfpTrajectory RunCfp(const BimatrixGame<double>& game,
                     const MixedProfile<double>& init, const CfpConfig& cfg) {
  if (!(cfg.horizon_log > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "horizon must be positive");
  }
  if (init.p().size() != game.m() || init.q().size() != game.n()) {
    throw Error(ErrorCode::kDimensionMismatch, "initial profile does not fit");
  }
  CfpTrajectory traj;
  traj.m = game.m();
  traj.n = game.n();
  TieBreaker ties(cfg.tie_rule, cfg.seed);
  const double rest_tol = cfg.rest_tolerance * PayoffScale(game);
  CfpMove first = SelectCfpMove(game, init, std::nullopt, ties);
  CfpState state{0.0, init, first.br, std::move(first.slide)};
  bool resting = false;
  while (state.s < cfg.horizon_log) {
    const double me = ComputeEpsilonReport(game, state.profile).ME;
    if (me <= rest_tol) {
      resting = true;
      break;
    }
    if (traj.segments.size() >= cfg.max_segments) break;
    const double limit = std::min(cfg.horizon_log, state.s + cfg.max_segment);
    CfpAdvance adv;
    try {
      adv = CfpSegmentAdvance(game, state, limit, ties);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kNumericalStall && me <= cfg.convergence_eps) {
        resting = true;
        break;
      }
      throw;
    }
    traj.PushSegment(
        {state.s, adv.next.s, state.br, false, state.slide.has_value()},
        state.profile, state.slide);
    state = std::move(adv.next);
  }
  if (resting) {
    traj.PushSegment({state.s, cfg.horizon_log, state.br, true}, state.profile);
  }
  if (traj.segments.empty()) {
    // Zero-length horizon coverage cannot happen with horizon > 0 unless the
    // segment budget is zero; keep the start profile as a degenerate segment.
    traj.PushSegment({0.0, 0.0, state.br, false}, state.profile);
  }

  traj.final_profile = traj.ProfileAt(traj.s_end());
  traj.final_me = ComputeEpsilonReport(game, traj.final_profile).ME;

  const std::size_t grid = std::max<std::size_t>(cfg.bru_samples, 2);
  const double covered = traj.s_end();
  for (std::size_t k = 0; k < grid; ++k) {
    const double s = cfg.horizon_log * static_cast<double>(k) /
                     static_cast<double>(grid - 1);
    if (s > covered) break;
    traj.bru_series.emplace_back(s, Bru(game, traj.ProfileAt(s)));
  }

  std::vector<ActionPair> pairs;
  pairs.reserve(traj.segments.size());
  for (const auto& seg : traj.segments) {
    if (!seg.resting) pairs.push_back(seg.br);
  }
  traj.cycle = DetectCycle(pairs);
  if (resting || traj.final_me <= cfg.convergence_eps) {
    traj.verdict = CfpVerdict::kConvergedToNE;
  } else if (traj.cycle && traj.cycle->repetitions >= 3) {
    traj.verdict = CfpVerdict::kEnteredCycle;
  } else {
    traj.verdict = CfpVerdict::kHorizonExhausted;
  }
  return traj;
}

double BruDerivative(const BimatrixGame<double>& game,
                     const MixedProfile<double>& profile, ActionPair br,
                     double t) {
  const double g = game.A()(br.first, br.second) + game.B()(br.first, br.second);
  return (g - Bru(game, profile)) / t;
}

double BruIntegralCheck(const CfpTrajectory& traj,
                        const BimatrixGame<double>& game, double t0,
                        std::size_t points) {
  const double s0 = std::log(t0);
  const double s_end = traj.s_end();
  if (!(t0 > 0.0) || s0 < traj.segments.front().s_start - 1e-12 || s0 > s_end) {
    throw Error(ErrorCode::kInvalidArgument, "t0 outside the trajectory");
  }
  const std::size_t count = traj.segments.size();
  // Integrand per segment and prefix integrals over tau = e^s.
  std::vector<double> integrand(count), prefix(count + 1, 0.0);
  for (std::size_t k = 0; k < count; ++k) {
    const CfpSegment& seg = traj.segments[k];
    if (seg.resting) {
      integrand[k] = ComputeEpsilonReport(game, traj.SegmentStart(k)).V;
    } else {
      integrand[k] = seg.sliding
                         ? TargetValue(game, traj.SegmentTarget(k))
                         : game.A()(seg.br.first, seg.br.second) +
                               game.B()(seg.br.first, seg.br.second);
    }
    prefix[k + 1] = prefix[k] + integrand[k] * (std::exp(seg.s_end) -
                                                std::exp(seg.s_start));
  }
  auto cumulative = [&](double s) {
    auto it = std::upper_bound(
        traj.segments.begin(), traj.segments.end(), s,
        [](double value, const CfpSegment& seg) { return value < seg.s_start; });
    const std::size_t k =
        it == traj.segments.begin()
            ? 0
            : static_cast<std::size_t>(it - traj.segments.begin()) - 1;
    const CfpSegment& seg = traj.segments[k];
    const double clamped = std::clamp(s, seg.s_start, seg.s_end);
    return prefix[k] +
           integrand[k] * (std::exp(clamped) - std::exp(seg.s_start));
  };
  const double u0 = Bru(game, traj.ProfileAt(s0));
  const double base = cumulative(s0);
  double worst = 0.0;
  const std::size_t n = std::max<std::size_t>(points, 2);
  for (std::size_t k = 0; k < n; ++k) {
    const double s =
        s0 + (s_end - s0) * static_cast<double>(k) / static_cast<double>(n - 1);
    const double t = std::exp(s);
    const double predicted = (t0 * u0 + cumulative(s) - base) / t;
    const double direct = Bru(game, traj.ProfileAt(s));
    worst = std::max(worst, std::abs(direct - predicted));
  }
  return worst;
}

Theorem4Certificate Theorem4CertificateCheck(
    const BimatrixGame<double>& zero_sum, double lambda,
    const BimatrixGame<double>& identical, const CycleDescriptor& cycle,
    std::size_t samples, std::uint64_t seed,
    const CertificateOptions& options) {
  if (cycle.pairs.empty()) {
    throw Error(ErrorCode::kInsufficientPathData, "cycle has no pairs");
  }
  if (zero_sum.m() > 4 || zero_sum.n() > 4) {
    throw Error(ErrorCode::kInvalidArgument,
                "certificate supports games up to 4x4");
  }
  const BimatrixGame<double> game = zero_sum + lambda * identical;
  const std::set<ActionPair> on_cycle(cycle.pairs.begin(), cycle.pairs.end());

  // Profiles on traced paths that follow the cycle.
  std::vector<MixedProfile<double>> path;
  CfpConfig cfg;
  cfg.horizon_log = options.horizon_log;
  cfg.bru_samples = 2;
  for (const auto& [i, j] : cycle.pairs) {
    if (i >= game.m() || j >= game.n()) {
      throw Error(ErrorCode::kIndexOutOfRange, "cycle pair outside the game");
    }
    const CfpTrajectory traj = RunCfp(
        game, MixedProfile<double>::Pure(game.m(), game.n(), i, j), cfg);
    std::vector<std::size_t> hits;
    for (std::size_t k = 0; k < traj.segments.size(); ++k) {
      const CfpSegment& seg = traj.segments[k];
      if (!seg.resting && on_cycle.count(seg.br)) hits.push_back(k);
    }
    const std::size_t stride = std::max<std::size_t>(1, hits.size() / 500);
    for (std::size_t h = 0; h < hits.size(); h += stride) {
      const CfpSegment& seg = traj.segments[hits[h]];
      for (int f = 0; f < 4; ++f) {
        path.push_back(traj.ProfileAt(seg.s_start + (seg.s_end - seg.s_start) * f / 4.0));
      }
    }
  }

  Theorem4Certificate cert;
  cert.path_points = path.size();
  if (path.size() < options.min_path_points) return cert;

  const auto equilibria = SupportEnumeration(zero_sum);
  auto near_equilibrium = [&](const MixedProfile<double>& prof) {
    for (const auto& eq : equilibria) {
      double dist = 0.0;
      for (std::size_t k = 0; k < prof.p().size(); ++k)
        dist = std::max(dist, std::abs(prof.p()[k] - eq.p()[k]));
      for (std::size_t k = 0; k < prof.q().size(); ++k)
        dist = std::max(dist, std::abs(prof.q()[k] - eq.q()[k]));
      if (dist < options.ne_exclusion) return true;
    }
    return false;
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(1e-6, 1.0);
  const double tol = kCfpTieTolerance * PayoffScale(game);
  for (std::size_t s = 0; s < samples; ++s) {
    Vector<double> p(game.m(), 0.0), q(game.n(), 0.0);
    double total = 0.0;
    for (int c = 0; c < 3; ++c) {
      const auto& pick = path[rng() % path.size()];
      const double weight = unit(rng);
      total += weight;
      for (std::size_t k = 0; k < p.size(); ++k) p[k] += weight * pick.p()[k];
      for (std::size_t k = 0; k < q.size(); ++k) q[k] += weight * pick.q()[k];
    }
    for (double& x : p) x /= total;
    for (double& x : q) x /= total;
    MixedProfile<double> combo = Normalized(std::move(p), std::move(q));
    if (near_equilibrium(combo)) continue;
    // At a tie the motion along the cycle uses the tied cycle pairs; when none
    // is tied, take the largest derivative over all best-response pairs.
    const auto rows = NearMax(RowActionPayoffs(game.A(), combo.q()), tol);
    const auto cols = NearMax(ColumnActionPayoffs(game.B(), combo.p()), tol);
    double worst = -INFINITY, worst_on_cycle = -INFINITY;
    for (Action i : rows) {
      for (Action j : cols) {
        const double d = BruDerivative(game, combo, {i, j});
        worst = std::max(worst, d);
        if (on_cycle.count({i, j})) worst_on_cycle = std::max(worst_on_cycle, d);
      }
    }
    if (std::isfinite(worst_on_cycle)) worst = worst_on_cycle;
    ++cert.evaluated;
    cert.max_derivative = std::max(cert.max_derivative, worst);
    if (worst >= 0.0 && !cert.witness) cert.witness = combo;
  }
  if (cert.evaluated == 0) return cert;
  cert.kind = cert.witness ? CertificateKind::kFoundNonNegative
                           : CertificateKind::kCertifiedNegative;
  return cert;
}

}  // namespace cooplab
