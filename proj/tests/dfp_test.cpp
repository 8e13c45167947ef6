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

#include <cmath>
#include <random>
#include <set>

#include "cooplab/decomposition.hpp"
#include "cooplab/dfp.hpp"
#include "cooplab/equivalence.hpp"
#include "cooplab/error.hpp"
#include "cooplab/generators.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace cooplab {
namespace {

using testing::Q;

double FinalMe(const BimatrixGame<Rational>& g, std::size_t rounds,
               ActionPair init = {0, 0}) {
  DfpConfig cfg;
  cfg.rounds = rounds;
  cfg.record_every = rounds;
  cfg.keep_br_stream = false;
  return RunDfp(ToDoubleGame(g), DfpInit<double>(init), cfg).final_report.ME;
}

TEST_CASE("dfp step") {
  const auto g = testing::Shapley();
  TieBreaker ties;
  const auto [next, br] = DfpStep(g, MixedProfile<Rational>::Pure(3, 3, 0, 0), 1, ties);
  CHECK(br == ActionPair{2, 2});
  CHECK(next.p() == Vector<Rational>{Q(1, 2), 0, Q(1, 2)});
  CHECK(next.q() == Vector<Rational>{Q(1, 2), 0, Q(1, 2)});

  std::mt19937_64 rng(3);
  const auto e = testing::RandomNonStrategic(3, 4, rng);
  for (std::size_t t = 1; t < 20; ++t) {
    const MixedProfile<Rational> prof(testing::RandomSimplexPoint(3, rng),
                                      testing::RandomSimplexPoint(4, rng));
    CHECK(DfpStep(e, prof, t, ties).second == ActionPair{0, 0});
  }

  const auto gd = testing::ShapleyD();
  MixedProfile<double> prof = MixedProfile<double>::Pure(3, 3, 0, 1);
  for (std::size_t t = 1; t < 2000; ++t) {
    auto [nxt, pair] = DfpStep(gd, prof, t, ties);
    double l1 = 0;
    for (int k = 0; k < 3; ++k) l1 += std::abs(nxt.p()[k] - prof.p()[k]);
    CHECK(l1 <= 2.0 / (t + 1) + 1e-15);
    prof = nxt;
  }
  CHECK_THROWS_AS(DfpStep(g, MixedProfile<Rational>::Uniform(3, 3), 0, ties), Error);
}

TEST_CASE("tie breakers") {
  const std::vector<Action> cands{1, 3, 4};
  TieBreaker lowest(TieRule::kLowestIndex);
  CHECK(lowest.Choose(cands, Action{4}) == 1);
  TieBreaker sticky(TieRule::kStickyPrevious);
  CHECK(sticky.Choose(cands, Action{4}) == 4);
  CHECK(sticky.Choose(cands, Action{2}) == 1);
  CHECK(sticky.Choose(cands, std::nullopt) == 1);
  TieBreaker r1(TieRule::kSeededRandom, 9), r2(TieRule::kSeededRandom, 9);
  std::set<Action> seen;
  for (int k = 0; k < 100; ++k) {
    const Action a = r1.Choose(cands, std::nullopt);
    CHECK(a == r2.Choose(cands, std::nullopt));
    seen.insert(a);
  }
  CHECK(seen.size() == 3);
  CHECK(ParseTieRule("sticky") == TieRule::kStickyPrevious);
  CHECK(ParseTieRule(TieRuleName(TieRule::kSeededRandom)) == TieRule::kSeededRandom);
  CHECK_THROWS_AS(ParseTieRule("coin"), Error);
}

TEST_CASE("run_dfp on the Shapley game") {
  const auto g = testing::ShapleyD();
  DfpConfig cfg;
  cfg.rounds = 100000;
  const auto sym = RunDfp(g, DfpInit<double>(ActionPair{0, 0}), cfg);
  CHECK(sym.converged);
  CHECK(testing::LinfToUniform(sym.final_profile) <= 1e-2);
  const auto c2 = DetectCycle(sym.br_stream);
  REQUIRE(c2.has_value());
  CHECK(c2->pairs == std::vector<ActionPair>{{0, 0}, {2, 2}, {1, 1}});
  const auto sums2 = CycleSumCheck(g, *c2);
  CHECK(sums2.values == std::vector<double>{0, 0, 0});
  CHECK(sums2.all_equal);
  CHECK(sums2.equals_min);

  const auto asym = RunDfp(g, DfpInit<double>(ActionPair{0, 1}), cfg);
  CHECK_FALSE(asym.converged);
  const auto c1 = DetectCycle(asym.br_stream);
  REQUIRE(c1.has_value());
  CHECK(c1->pairs ==
        std::vector<ActionPair>{{0, 1}, {0, 2}, {1, 2}, {1, 0}, {2, 0}, {2, 1}});
  CHECK(c1->repetitions >= 2);
  const auto sums1 = CycleSumCheck(g, *c1);
  CHECK(sums1.all_equal);
  CHECK_FALSE(sums1.equals_min);
  CHECK(sums1.values.front() == 3);

  // Samples: strictly increasing t, valid profiles.
  for (std::size_t k = 1; k < asym.samples.size(); ++k) {
    CHECK(asym.samples[k].t > asym.samples[k - 1].t);
  }
  CHECK(asym.samples.front().t == 1);
  CHECK(asym.samples.back().t == cfg.rounds + 1);
}

TEST_CASE("beliefs are empirical frequencies") {
  const auto g = RandomGame(GameClass::kZeroSum, 3, 4, 2);
  DfpConfig cfg;
  cfg.rounds = 300;
  cfg.record_every = 1;
  const auto traj = RunDfp(g, DfpInit<Rational>(ActionPair{1, 3}), cfg);
  std::vector<long> row(3, 0), col(4, 0);
  row[1] = col[3] = 1;
  for (std::size_t t = 1; t <= cfg.rounds; ++t) {
    const auto& sample = traj.samples[t - 1];
    REQUIRE(sample.t == t);
    for (int i = 0; i < 3; ++i) CHECK(sample.profile.p()[i] == Q(row[i], t));
    for (int j = 0; j < 4; ++j) CHECK(sample.profile.q()[j] == Q(col[j], t));
    CHECK(sample.br == traj.br_stream[t - 1]);
    ++row[traj.br_stream[t - 1].first];
    ++col[traj.br_stream[t - 1].second];
  }
  for (int i = 0; i < 3; ++i) CHECK(traj.final_profile.p()[i] == Q(row[i], cfg.rounds + 1));
}

TEST_CASE("best-response streams are invariant under strategic equivalence") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 6; ++trial) {
    const auto g = testing::RandomRationalGame(3, 3, rng);
    const Rational alpha = testing::RandomPositive(rng);
    const Rational beta = testing::RandomPositive(rng);
    const auto e = testing::RandomNonStrategic(3, 3, rng);
    const BimatrixGame<Rational> h(alpha * g.A() + e.A(), beta * g.B() + e.B());
    DfpConfig cfg;
    cfg.rounds = 1000;
    cfg.record_every = 1000;
    cfg.tie_rule = trial % 2 ? TieRule::kStickyPrevious : TieRule::kLowestIndex;
    const auto a = RunDfp(g, DfpInit<Rational>(ActionPair{2, 0}), cfg);
    const auto b = RunDfp(h, DfpInit<Rational>(ActionPair{2, 0}), cfg);
    CHECK(a.br_stream == b.br_stream);
  }
}

TEST_CASE("B games play a constant dominant pair") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = RandomGame(GameClass::kBClass, 2 + seed % 3, 2 + seed % 2, seed);
    DfpConfig cfg;
    cfg.rounds = 20000;
    cfg.record_every = 20000;
    const auto traj = RunDfp(ToDoubleGame(g), DfpInit<double>(ActionPair{1, 1}), cfg);
    for (const auto& pair : traj.br_stream) CHECK(pair == traj.br_stream.front());
    CHECK(traj.final_report.ME <= 1e-3);
    const auto cyc = DetectCycle(traj.br_stream);
    REQUIRE(cyc.has_value());
    CHECK(cyc->pairs.size() == 1);

    // Started on the dominant pair the profile is already an equilibrium.
    cfg.rounds = 50;
    cfg.record_every = 50;
    const auto [i, j] = traj.br_stream.front();
    const auto exact = RunDfp(g, DfpInit<Rational>(ActionPair{i, j}), cfg);
    CHECK(exact.final_report.ME == 0);
  }
}

TEST_CASE("zero-sum games converge") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    CHECK(FinalMe(RandomGame(GameClass::kZeroSum, 3, 3, seed), 1000000) <= 5e-2);
  }
}

TEST_CASE("harmonic games converge") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto h = RandomGame(GameClass::kNormalizedHarmonic, 2 + seed % 3, 2 + (seed / 3) % 3, seed);
    CHECK(FinalMe(h, 200000) <= 5e-2);
  }
}

TEST_CASE("mixes of the harmonic split converge") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const std::size_t m = 2 + seed % 2, n = 3 + seed % 2;
    const auto h = RandomGame(GameClass::kNormalizedHarmonic, m, n, seed);
    const auto [i, z] = HarmonicSplit(h);
    for (long lambda = -2; lambda <= 2; ++lambda) {
      const auto g = Rational(lambda) * i + z;
      CHECK(FinalMe(g, 200000) <= 5e-2);
    }
  }
}

TEST_CASE("mixes along the decomposition of equivalence classes stay classified") {
  const std::vector<Rational> lambdas{Q(-1), Q(-1, 4), Q(0), Q(3, 10), Q(11, 15),
                                      Q(14, 15), Q(1), Q(2)};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t m = 2 + seed % 3, n = 2 + (seed / 3) % 3;
    const auto g = RandomGame(seed % 2 ? GameClass::kSI : GameClass::kSZ, m, n, seed);
    const auto d = HodgeDecompose(g);
    for (const auto& lambda : lambdas) {
      const auto mix = lambda * d.P + (1 - lambda) * d.H;
      CHECK(Classify(mix).label != ClassLabel::kNone);
      if (seed < 4) CHECK(FinalMe(mix, 200000) <= 5e-2);
    }
  }
}

TEST_CASE("detect_cycle") {
  using S = std::vector<ActionPair>;
  CHECK_FALSE(DetectCycle(S{{0, 0}, {1, 1}, {0, 0}}).has_value());
  const auto constant = DetectCycle(S(10, ActionPair{2, 1}));
  REQUIRE(constant.has_value());
  CHECK(constant->pairs == S{{2, 1}});
  CHECK(constant->entry_round == 1);

  S stream{{0, 0}, {0, 0}, {1, 0}};
  for (int rep = 0; rep < 4; ++rep) {
    for (ActionPair p : {ActionPair{2, 2}, {1, 1}, {1, 1}, {0, 2}}) stream.push_back(p);
  }
  const auto cyc = DetectCycle(stream, 3);
  REQUIRE(cyc.has_value());
  CHECK(cyc->pairs == S{{0, 2}, {2, 2}, {1, 1}});
  CHECK(cyc->repetitions == 4);
  CHECK(cyc->entry_round == 4);

  // Two periods suffice by default but not when three are required.
  S two{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(DetectCycle(two).has_value());
  CHECK_FALSE(DetectCycle(two, 3).has_value());

  std::mt19937_64 rng(5);
  S noise;
  for (int k = 0; k < 40; ++k) noise.push_back({rng() % 5, rng() % 5});
  noise.push_back({9, 9});
  CHECK_FALSE(DetectCycle(noise, 3).has_value());
}

TEST_CASE("cycle sums") {
  const auto z = RandomGame(GameClass::kZeroSum, 3, 3, 4);
  CycleDescriptor cyc{{{0, 1}, {2, 2}}, 1, 3};
  const auto sums = CycleSumCheck(z, cyc);
  CHECK(sums.values == std::vector<Rational>{0, 0});
  CHECK(sums.all_equal);
  CHECK(sums.equals_min);
  CycleDescriptor outside{{{0, 3}}, 1, 3};
  try {
    CycleSumCheck(z, outside);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIndexOutOfRange);
  }
}

TEST_CASE("config validation") {
  const auto g = testing::ShapleyD();
  DfpConfig cfg;
  cfg.rounds = 0;
  CHECK_THROWS_AS(RunDfp(g, DfpInit<double>(ActionPair{0, 0}), cfg), Error);
  cfg.rounds = 10;
  cfg.record_every = 11;
  CHECK_THROWS_AS(RunDfp(g, DfpInit<double>(ActionPair{0, 0}), cfg), Error);
  cfg.record_every = 1;
  CHECK_THROWS_AS(RunDfp(g, DfpInit<double>(MixedProfile<double>::Uniform(2, 3)), cfg),
                  Error);
  CHECK_THROWS_AS(RunDfp(g, DfpInit<double>(ActionPair{0, 3}), cfg), Error);

  // Seeded random ties are reproducible.
  cfg.rounds = 5000;
  cfg.tie_rule = TieRule::kSeededRandom;
  cfg.seed = 77;
  const auto zero = BimatrixGame<double>::Zero(3, 3);
  const auto a = RunDfp(zero, DfpInit<double>(ActionPair{0, 0}), cfg);
  const auto b = RunDfp(zero, DfpInit<double>(ActionPair{0, 0}), cfg);
  CHECK(a.br_stream == b.br_stream);
  cfg.seed = 78;
  CHECK(RunDfp(zero, DfpInit<double>(ActionPair{0, 0}), cfg).br_stream != a.br_stream);
}

}  // namespace
}  // namespace cooplab
