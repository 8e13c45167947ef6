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

#include <algorithm>
#include <cmath>
#include <string>
#include <random>

#include "cooplab/cfp.hpp"
#include "cooplab/decomposition.hpp"
#include "cooplab/dfp.hpp"
#include "cooplab/error.hpp"
#include "cooplab/generators.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace cooplab {
namespace {

using Pairs = std::vector<ActionPair>;

const Pairs kC1{{0, 1}, {0, 2}, {1, 2}, {1, 0}, {2, 0}, {2, 1}};
const Pairs kC2{{0, 0}, {2, 2}, {1, 1}};

double MaxProfileGap(const MixedProfile<double>& a, const MixedProfile<double>& b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.p().size(); ++i) worst = std::max(worst, std::abs(a.p()[i] - b.p()[i]));
  for (std::size_t j = 0; j < a.q().size(); ++j) worst = std::max(worst, std::abs(a.q()[j] - b.q()[j]));
  return worst;
}

void CheckContiguous(const CfpTrajectory& traj, double horizon) {
  REQUIRE_FALSE(traj.segments.empty());
  CHECK(traj.segments.front().s_start == 0.0);
  for (std::size_t k = 1; k < traj.segments.size(); ++k) {
    CHECK(traj.segments[k].s_start == traj.segments[k - 1].s_end);
  }
  CHECK(traj.s_end() == doctest::Approx(horizon).epsilon(1e-12));
}

TEST_CASE("first switch on the Shapley game") {
  const auto g = testing::ShapleyD();
  TieBreaker ties;
  CfpState state;
  state.profile = MixedProfile<double>::Pure(3, 3, 0, 0);
  state.br = {2, 2};
  const auto adv = CfpSegmentAdvance(g, state, 100.0, ties);
  CHECK_FALSE(adv.reached_limit);
  // Row 3 ties row 2 at w = 2/3.
  CHECK(adv.duration == doctest::Approx(std::log(1.5)).epsilon(1e-14));
  CHECK(adv.next.profile.p()[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(adv.next.profile.p()[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(adv.next.profile.q()[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  // Stopping at the limit.
  const auto early = CfpSegmentAdvance(g, state, 0.1, ties);
  CHECK(early.reached_limit);
  CHECK(early.next.s == 0.1);
  CHECK(early.next.profile.p()[2] == doctest::Approx(1 - std::exp(-0.1)).epsilon(1e-14));
}

TEST_CASE("an inconsistent best-response pair stalls") {
  const auto g = testing::ShapleyD();
  TieBreaker ties;
  CfpState state;
  state.profile = MixedProfile<double>::Pure(3, 3, 0, 0);
  state.br = {0, 0};  // row 3 already pays 2 against q = e1
  try {
    CfpSegmentAdvance(g, state, 10.0, ties);
    FAIL("expected a stall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNumericalStall);
  }
}

TEST_CASE("games without switches give a single segment") {
  CfpConfig cfg;
  std::mt19937_64 rng(3);
  const auto e = ToDoubleGame(testing::RandomNonStrategic(3, 2, rng));
  const MixedProfile<double> init({0.2, 0.3, 0.5}, {0.9, 0.1});
  const auto traj = RunCfp(e, init, cfg);
  CHECK(traj.segments.size() == 1);
  CheckContiguous(traj, cfg.horizon_log);
  CHECK(traj.verdict == CfpVerdict::kConvergedToNE);

  const auto zero = RunCfp(BimatrixGame<double>::Zero(3, 3),
                           MixedProfile<double>::Pure(3, 3, 1, 2), cfg);
  CHECK(zero.segments.size() == 1);
  CHECK(zero.verdict == CfpVerdict::kConvergedToNE);
}

TEST_CASE("symmetric Shapley start converges to the uniform equilibrium") {
  const auto g = testing::ShapleyD();
  CfpConfig cfg;
  const auto traj = RunCfp(g, MixedProfile<double>::Pure(3, 3, 0, 0), cfg);
  CheckContiguous(traj, cfg.horizon_log);
  CHECK(traj.verdict == CfpVerdict::kConvergedToNE);
  CHECK(testing::LinfToUniform(traj.final_profile) <= 1e-9);
  CHECK(traj.segments.front().br == ActionPair{2, 2});
  for (const auto& seg : traj.segments) {
    if (seg.resting || seg.sliding) continue;
    CHECK(std::find(kC2.begin(), kC2.end(), seg.br) != kC2.end());
  }
  // The sliding phase lands on the equilibrium at s = ln 3.
  CHECK(testing::LinfToUniform(traj.ProfileAt(std::log(3.0) + 1e-9)) <= 1e-8);
  CHECK(traj.bru_series.back().second == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("asymmetric Shapley start follows the six-pair cycle") {
  const auto g = testing::ShapleyD();
  CfpConfig cfg;
  cfg.horizon_log = 30.0;
  const auto traj = RunCfp(g, MixedProfile<double>::Pure(3, 3, 0, 1), cfg);
  CheckContiguous(traj, 30.0);
  CHECK(traj.verdict == CfpVerdict::kEnteredCycle);
  REQUIRE(traj.cycle.has_value());
  CHECK(traj.cycle->pairs == kC1);
  CHECK(traj.cycle->repetitions >= 3);
  CHECK(traj.final_me > 0.1);

  const auto sums = CycleSumCheck(g, *traj.cycle);
  CHECK(sums.all_equal);
  // Cauchy tail: U settles at the common cycle value 3.
  const auto& series = traj.bru_series;
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& [s, u] : series) {
    if (s < 0.8 * cfg.horizon_log) continue;
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(hi - lo <= 1e-3);
  CHECK(series.back().second == doctest::Approx(3.0).epsilon(1e-6));

  CHECK(BruIntegralCheck(traj, g, 1.0) <= 1e-8);
  CHECK(BruIntegralCheck(traj, g, 5.0, 500) <= 1e-8);

  // At the default horizon only about two and a half periods fit.
  const auto short_run = RunCfp(g, MixedProfile<double>::Pure(3, 3, 0, 1), CfpConfig{});
  CHECK(short_run.verdict == CfpVerdict::kHorizonExhausted);
  REQUIRE(short_run.cycle.has_value());
  CHECK(short_run.cycle->pairs == kC1);
}

TEST_CASE("B games converge with a constant pair") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = ToDoubleGame(RandomGame(GameClass::kBClass, 3, 3, seed));
    const auto traj = RunCfp(g, MixedProfile<double>::Uniform(3, 3), CfpConfig{});
    CHECK(traj.verdict == CfpVerdict::kConvergedToNE);
    for (const auto& seg : traj.segments) {
      if (!seg.resting) CHECK(seg.br == traj.segments.front().br);
    }
    CHECK(BruIntegralCheck(traj, g, 1.0) <= 1e-9);
  }
}

TEST_CASE("event integration is exact under forced splits") {
  const auto g = testing::ShapleyD();
  CfpConfig cfg;
  cfg.horizon_log = 12.0;
  const auto whole = RunCfp(g, MixedProfile<double>::Pure(3, 3, 0, 1), cfg);
  cfg.max_segment = 0.37;
  const auto split = RunCfp(g, MixedProfile<double>::Pure(3, 3, 0, 1), cfg);
  CHECK(split.segments.size() > whole.segments.size());
  double worst = 0;
  for (int k = 0; k <= 200; ++k) {
    const double s = 12.0 * k / 200.0;
    worst = std::max(worst, MaxProfileGap(whole.ProfileAt(s), split.ProfileAt(s)));
  }
  CHECK(worst < 1e-12);

  const auto z = ToDoubleGame(RandomGame(GameClass::kZeroSum, 3, 4, 8));
  const MixedProfile<double> init({1, 0, 0}, {0, 0, 0, 1});
  cfg.max_segment = INFINITY;
  const auto zw = RunCfp(z, init, cfg);
  cfg.max_segment = 0.5;
  const auto zs = RunCfp(z, init, cfg);
  worst = 0;
  for (int k = 0; k <= 200; ++k) {
    const double s = 12.0 * k / 200.0;
    worst = std::max(worst, MaxProfileGap(zw.ProfileAt(s), zs.ProfileAt(s)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("discrete and continuous play agree on the symmetric Shapley start") {
  const auto g = testing::ShapleyD();
  DfpConfig dcfg;
  dcfg.rounds = 100000 - 1;  // beliefs at t = 1e5
  dcfg.record_every = dcfg.rounds;
  dcfg.keep_br_stream = false;
  const auto dfp = RunDfp(g, DfpInit<double>(ActionPair{0, 0}), dcfg);
  const auto cfp = RunCfp(g, MixedProfile<double>::Pure(3, 3, 0, 0), CfpConfig{});
  CHECK(MaxProfileGap(dfp.final_profile, cfp.ProfileAt(std::log(1e5))) <= 5e-3);
}

TEST_CASE("U is non-increasing on zero-sum games") {
  std::mt19937_64 rng(61);
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t m = 2 + seed % 3, n = 2 + (seed / 3) % 3;
    const auto z = ToDoubleGame(RandomGame(GameClass::kZeroSum, m, n, seed));
    const MixedProfile<double> init(testing::RandomSimplexD(m, rng), testing::RandomSimplexD(n, rng));
    CfpConfig cfg;
    cfg.horizon_log = std::log(1e4);
    const auto traj = RunCfp(z, init, cfg);
    for (std::size_t k = 1; k < traj.bru_series.size(); ++k) {
      CHECK(traj.bru_series[k].second <= traj.bru_series[k - 1].second + 1e-10);
    }
    // With A + B = 0 the integral term vanishes: t U(t) is constant.
    const double u0 = traj.bru_series.front().second;
    for (const auto& [s, u] : traj.bru_series) {
      CHECK(std::exp(s) * u == doctest::Approx(u0).epsilon(1e-9).scale(1.0));
    }
    CHECK(BruIntegralCheck(traj, z, 1.0) <= 1e-9);
  }
}

TEST_CASE("BRU derivative") {
  const auto g = testing::ShapleyD();
  const auto uni = MixedProfile<double>::Uniform(3, 3);
  CHECK(BruDerivative(g, uni, {0, 0}) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(BruDerivative(g, uni, {0, 0}, std::exp(1.0)) ==
        doctest::Approx(-2.0 / std::exp(1.0)).epsilon(1e-14));

  std::mt19937_64 rng(67);
  const auto z = ToDoubleGame(RandomGame(GameClass::kZeroSum, 3, 3, 1));
  for (int k = 0; k < 50; ++k) {
    const MixedProfile<double> prof(testing::RandomSimplexD(3, rng), testing::RandomSimplexD(3, rng));
    const auto rows = BestResponseSet(z, Player::kRow, prof.q());
    const auto cols = BestResponseSet(z, Player::kColumn, prof.p());
    const double u = ComputeEpsilonReport(z, prof).U;
    const double d = BruDerivative(z, prof, {rows.front(), cols.front()}, 2.0);
    CHECK(d == doctest::Approx(-u / 2.0).epsilon(1e-12));
    CHECK(d <= 1e-15);
  }

  // Dominant-strategy games without the non-strategic offset: U is flat.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto b = RandomGame(GameClass::kBClass, 3, 4, seed);
    const auto pure = b - NonStrategicPart(b);
    const auto bd = ToDoubleGame(pure);
    const MixedProfile<double> prof(testing::RandomSimplexD(3, rng), testing::RandomSimplexD(4, rng));
    const Action i = BestResponseSet(bd, Player::kRow, prof.q()).front();
    const Action j = BestResponseSet(bd, Player::kColumn, prof.p()).front();
    CHECK(BruDerivative(bd, prof, {i, j}) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

    // With the offset (1 x^T, y 1^T) the derivative is x_j - x.q + y_i - p.y.
    const auto full = ToDoubleGame(b);
    const auto e = ToDoubleGame(NonStrategicPart(b));
    double expected = e.A()(0, j) + e.B()(i, 0);
    for (std::size_t c = 0; c < 4; ++c) expected -= e.A()(0, c) * prof.q()[c];
    for (std::size_t r = 0; r < 3; ++r) expected -= e.B()(r, 0) * prof.p()[r];
    CHECK(BruDerivative(full, prof, {i, j}) == doctest::Approx(expected).scale(1.0).epsilon(1e-12));
  }
}

TEST_CASE("certificate") {
  const auto parts = HodgeDecompose(testing::Shapley());
  const auto z = ToDoubleGame(parts.H);
  const auto i = ToDoubleGame(parts.P);
  const CycleDescriptor c2{kC2, 1, 3};
  const auto at_one = Theorem4CertificateCheck(z, 1.0, i, c2, 200, 5);
  CHECK(at_one.kind == CertificateKind::kCertifiedNegative);
  CHECK(at_one.path_points >= 3);
  CHECK(at_one.evaluated > 0);
  CHECK(at_one.max_derivative < 0);
  CHECK(RunCfp(z + i, MixedProfile<double>::Pure(3, 3, 0, 0), CfpConfig{}).verdict ==
        CfpVerdict::kConvergedToNE);

  const auto at_zero = Theorem4CertificateCheck(z, 0.0, i, c2, 200, 5);
  CHECK(at_zero.kind == CertificateKind::kCertifiedNegative);

  // Deterministic in the seed.
  const auto again = Theorem4CertificateCheck(z, 1.0, i, c2, 200, 5);
  CHECK(again.max_derivative == at_one.max_derivative);

  try {
    Theorem4CertificateCheck(z, 1.0, i, CycleDescriptor{}, 10, 0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInsufficientPathData);
  }
  CHECK(std::string(CertificateKindName(CertificateKind::kFoundNonNegative)).size() > 0);
}

}  // namespace
}  // namespace cooplab
