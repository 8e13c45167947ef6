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

#ifndef COOPLAB_EXPERIMENTS_HPP_
#define COOPLAB_EXPERIMENTS_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cooplab/dfp.hpp"
#include "cooplab/equivalence.hpp"
#include "cooplab/game.hpp"

namespace cooplab {

// Integer games used throughout the examples: "shapley" and "example1".
BimatrixGame<Rational> Builtin(std::string_view name);
std::vector<std::string> BuiltinNames();

// lambda * P + (1 - lambda) * H with P normalized potential and H normalized
// harmonic. Construction throws kMembershipViolation otherwise.
template <typename T>
class MixSpec {
 public:
  MixSpec(BimatrixGame<T> p, BimatrixGame<T> h, T lambda);

  const BimatrixGame<T>& P() const { return p_; }
  const BimatrixGame<T>& H() const { return h_; }
  const T& lambda() const { return lambda_; }

 private:
  BimatrixGame<T> p_;
  BimatrixGame<T> h_;
  T lambda_;
};

template <typename T>
BimatrixGame<T> Mix(const MixSpec<T>& spec);

struct SweepConfig {
  DfpConfig dfp;
  ActionPair start{0, 0};
  // 0 picks COOPLAB_THREADS or the hardware concurrency.
  std::size_t threads = 0;
};

struct SweepRecord {
  Rational lambda;
  ClassLabel label = ClassLabel::kNone;
  bool converged = false;
  double final_me = 0.0;
  double final_u = 0.0;
  MixedProfile<double> final_profile;
  std::optional<CycleDescriptor> cycle;
};

// Classifies each mix exactly and runs DFP on it in floating point. Records
// come back in grid order.
std::vector<SweepRecord> LambdaSweep(const BimatrixGame<Rational>& P,
                                     const BimatrixGame<Rational>& H,
                                     const std::vector<Rational>& grid,
                                     const SweepConfig& cfg);

// Root of a1(lambda) * b1(lambda) inside [lo, hi], where the coefficients are
// those that carry the class of P + H along the mixing line. Labels at lo and
// hi must be SZ and SI (either order), else kBracketInvalid.
Rational FindClassThresholdExact(const BimatrixGame<Rational>& P,
                                 const BimatrixGame<Rational>& H,
                                 const Rational& lo, const Rational& hi);

// Bisection on the exact labels of the mix until the bracket is below tol.
double FindClassThreshold(const BimatrixGame<Rational>& P,
                          const BimatrixGame<Rational>& H, double lo,
                          double hi, double tol);

// Sweep over the Shapley game's own parts, started from the pure pair (1, 2).
std::vector<SweepRecord> ShapleyMetricSweep(const std::vector<Rational>& grid,
                                            const SweepConfig& cfg);

// Grid lo, lo + step, ... up to hi (inclusive when it lands on hi).
std::vector<Rational> LambdaGrid(const Rational& lo, const Rational& hi,
                                 const Rational& step);

// Centered moving average; the window shrinks near the ends.
std::vector<double> MovingAverage(const std::vector<double>& series,
                                  std::size_t window);

// Sign changes of the discrete derivative, skipping zero steps.
std::size_t DerivativeSignChanges(const std::vector<double>& series);

// Rises and then falls once after smoothing.
bool IsOnePeak(const std::vector<double>& series, std::size_t window = 11);

// Largest jump between neighbours is at most `factor` times the median jump.
bool SmoothJumps(const std::vector<double>& series, double factor = 10.0);

std::size_t ThreadCount(std::size_t requested = 0);

// Runs fn(0) ... fn(count - 1) across worker threads.
void ParallelFor(std::size_t count, const std::function<void(std::size_t)>& fn,
                 std::size_t threads = 0);

}  // namespace cooplab

#endif  // COOPLAB_EXPERIMENTS_HPP_
