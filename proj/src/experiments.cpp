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

#include "cooplab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "cooplab/decomposition.hpp"
#include "cooplab/error.hpp"

namespace cooplab {
namespace {

Matrix<Rational> IntMatrix(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<std::vector<Rational>> out;
  for (const auto& row : rows) {
    out.emplace_back();
    for (int v : row) out.back().emplace_back(v);
  }
  return Matrix<Rational>::FromRows(out);
}

ClassLabel LabelAt(const BimatrixGame<Rational>& P,
                   const BimatrixGame<Rational>& H, const Rational& lambda) {
  return Classify(Mix(MixSpec<Rational>(P, H, lambda))).label;
}

bool Opposite(ClassLabel a, ClassLabel b) {
  return (a == ClassLabel::kSZ && b == ClassLabel::kSI) ||
         (a == ClassLabel::kSI && b == ClassLabel::kSZ);
}

}  // namespace

BimatrixGame<Rational> Builtin(std::string_view name) {
  if (name == "shapley") {
    Matrix<Rational> a = IntMatrix({{0, 2, 1}, {1, 0, 2}, {2, 1, 0}});
    Matrix<Rational> b = a.Transposed();
    return BimatrixGame<Rational>(std::move(a), std::move(b));
  }
  if (name == "example1") {
    return BimatrixGame<Rational>(
        IntMatrix({{-14, -20, -14}, {18, 14, 2}, {-18, 0, -16}}),
        IntMatrix({{21, 30, 21}, {-27, -21, -3}, {27, 0, 24}}));
  }
  throw Error(ErrorCode::kUnknownName,
              "unknown builtin game '" + std::string(name) + "'");
}

std::vector<std::string> BuiltinNames() { return {"shapley", "example1"}; }

template <typename T>
MixSpec<T>::MixSpec(BimatrixGame<T> p, BimatrixGame<T> h, T lambda)
    : p_(std::move(p)), h_(std::move(h)), lambda_(std::move(lambda)) {
  if (p_.m() != h_.m() || p_.n() != h_.n()) {
    throw Error(ErrorCode::kDimensionMismatch, "P and H differ in shape");
  }
  if (!IsInSubspace(p_, Subspace::kP)) {
    throw Error(ErrorCode::kMembershipViolation,
                "P is not a normalized potential game");
  }
  if (!IsInSubspace(h_, Subspace::kH)) {
    throw Error(ErrorCode::kMembershipViolation,
                "H is not a normalized harmonic game");
  }
}

template <typename T>
BimatrixGame<T> Mix(const MixSpec<T>& spec) {
  return spec.lambda() * spec.P() + (T(1) - spec.lambda()) * spec.H();
}

template class MixSpec<double>;
template class MixSpec<Rational>;
template BimatrixGame<double> Mix(const MixSpec<double>&);
template BimatrixGame<Rational> Mix(const MixSpec<Rational>&);

std::size_t ThreadCount(std::size_t requested) {
  std::size_t count = requested;
  if (count == 0) {
    if (const char* env = std::getenv("COOPLAB_THREADS")) {
      count = static_cast<std::size_t>(std::strtoul(env, nullptr, 10));
    }
  }
  if (count == 0) count = std::thread::hardware_concurrency();
  return std::max<std::size_t>(count, 1);
}

void ParallelFor(std::size_t count, const std::function<void(std::size_t)>& fn,
                 std::size_t threads) {
  const std::size_t workers = std::min(ThreadCount(threads), count);
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        fn(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<SweepRecord> LambdaSweep(const BimatrixGame<Rational>& P,
                                     const BimatrixGame<Rational>& H,
                                     const std::vector<Rational>& grid,
                                     const SweepConfig& cfg) {
  if (grid.empty()) throw Error(ErrorCode::kInvalidArgument, "empty grid");
  // Validate membership once up front.
  MixSpec<Rational> check(P, H, Rational(0));
  (void)check;
  std::vector<SweepRecord> out(grid.size());
  ParallelFor(
      grid.size(),
      [&](std::size_t k) {
        const BimatrixGame<Rational> game = Mix(MixSpec<Rational>(P, H, grid[k]));
        SweepRecord rec;
        rec.lambda = grid[k];
        rec.label = Classify(game).label;
        DfpConfig dfp = cfg.dfp;
        dfp.keep_br_stream = true;
        const auto traj = RunDfp(ToDoubleGame(game), DfpInit<double>(cfg.start), dfp);
        rec.converged = traj.converged;
        rec.final_me = traj.final_report.ME;
        rec.final_u = traj.final_report.U;
        rec.final_profile = traj.final_profile;
        rec.cycle = DetectCycle(traj.br_stream);
        out[k] = std::move(rec);
      },
      cfg.threads);
  return out;
}

Rational FindClassThresholdExact(const BimatrixGame<Rational>& P,
                                 const BimatrixGame<Rational>& H,
                                 const Rational& lo, const Rational& hi) {
  const ClassLabel at_lo = LabelAt(P, H, lo);
  const ClassLabel at_hi = LabelAt(P, H, hi);
  if (!(lo < hi) || !Opposite(at_lo, at_hi)) {
    throw Error(ErrorCode::kBracketInvalid,
                std::string("bracket labels ") + ClassLabelName(at_lo) + " and " +
                    ClassLabelName(at_hi) + " do not straddle SZ/SI");
  }
  const ClassVerdict<Rational> base = Classify(P + H);
  if (base.label != ClassLabel::kSZ && base.label != ClassLabel::kSI) {
    throw Error(ErrorCode::kBracketInvalid,
                std::string("P + H classifies as ") + ClassLabelName(base.label));
  }
  // Scale ratio of the row player relative to the column player.
  const Rational a = *base.alpha / *base.beta;
  const Rational m(static_cast<long>(P.m()));
  const Rational n(static_cast<long>(P.n()));
  const Rational sign = base.label == ClassLabel::kSZ ? Rational(1) : Rational(-1);
  // a1 = (ka * lambda + ca) / (m + n), b1 = (kb * lambda + cb) / (m + n).
  const Rational ka = m - n - 2 * n * sign * a;
  const Rational ca = n * (1 + sign * a);
  const Rational kb = 2 * m + (m - n) * sign * a;
  const Rational cb = -m * (1 + sign * a);
  std::vector<Rational> roots;
  if (sgn(ka) != 0) roots.push_back(-ca / ka);
  if (sgn(kb) != 0) roots.push_back(-cb / kb);
  for (const Rational& r : roots) {
    if (lo < r && r < hi) return r;
  }
  throw Error(ErrorCode::kBracketInvalid, "no coefficient root inside bracket");
}

double FindClassThreshold(const BimatrixGame<Rational>& P,
                          const BimatrixGame<Rational>& H, double lo, double hi,
                          double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tol must be positive");
  Rational left = RationalFromDouble(lo);
  Rational right = RationalFromDouble(hi);
  const ClassLabel at_lo = LabelAt(P, H, left);
  const ClassLabel at_hi = LabelAt(P, H, right);
  if (!(lo < hi) || !Opposite(at_lo, at_hi)) {
    throw Error(ErrorCode::kBracketInvalid,
                std::string("bracket labels ") + ClassLabelName(at_lo) + " and " +
                    ClassLabelName(at_hi) + " do not straddle SZ/SI");
  }
  while (ToDouble(Rational(right - left)) > tol) {
    const Rational mid = (left + right) / 2;
    const ClassLabel label = LabelAt(P, H, mid);
    if (label == at_lo) {
      left = mid;
    } else if (label == at_hi) {
      right = mid;
    } else {
      return ToDouble(mid);  // landed on the boundary itself
    }
  }
  return ToDouble(Rational((left + right) / 2));
}

std::vector<SweepRecord> ShapleyMetricSweep(const std::vector<Rational>& grid,
                                            const SweepConfig& cfg) {
  const HodgeParts<Rational> parts = HodgeDecompose(Builtin("shapley"));
  SweepConfig local = cfg;
  local.start = {0, 1};
  return LambdaSweep(parts.P, parts.H, grid, local);
}

std::vector<Rational> LambdaGrid(const Rational& lo, const Rational& hi,
                                 const Rational& step) {
  if (sgn(step) <= 0 || hi < lo) {
    throw Error(ErrorCode::kInvalidArgument, "grid needs lo <= hi and step > 0");
  }
  std::vector<Rational> out;
  for (long k = 0;; ++k) {
    Rational v = lo + Rational(k) * step;
    if (v > hi) break;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<double> MovingAverage(const std::vector<double>& series,
                                  std::size_t window) {
  const std::size_t half = window / 2;
  std::vector<double> out(series.size());
  for (std::size_t k = 0; k < series.size(); ++k) {
    const std::size_t reach = std::min({half, k, series.size() - 1 - k});
    double sum = 0.0;
    for (std::size_t x = k - reach; x <= k + reach; ++x) sum += series[x];
    out[k] = sum / static_cast<double>(2 * reach + 1);
  }
  return out;
}

std::size_t DerivativeSignChanges(const std::vector<double>& series) {
  std::size_t changes = 0;
  int last = 0;
  for (std::size_t k = 1; k < series.size(); ++k) {
    const double d = series[k] - series[k - 1];
    const int sign = d > 0 ? 1 : (d < 0 ? -1 : 0);
    if (sign == 0) continue;
    if (last != 0 && sign != last) ++changes;
    last = sign;
  }
  return changes;
}

bool IsOnePeak(const std::vector<double>& series, std::size_t window) {
  const std::vector<double> smooth = MovingAverage(series, window);
  if (DerivativeSignChanges(smooth) != 1) return false;
  // The single change must go from rising to falling.
  for (std::size_t k = 1; k < smooth.size(); ++k) {
    const double d = smooth[k] - smooth[k - 1];
    if (d != 0) return d > 0;
  }
  return false;
}

bool SmoothJumps(const std::vector<double>& series, double factor) {
  if (series.size() < 3) return true;
  std::vector<double> jumps;
  for (std::size_t k = 1; k < series.size(); ++k) {
    jumps.push_back(std::abs(series[k] - series[k - 1]));
  }
  const double largest = *std::max_element(jumps.begin(), jumps.end());
  std::nth_element(jumps.begin(), jumps.begin() + jumps.size() / 2, jumps.end());
  const double median = jumps[jumps.size() / 2];
  return largest <= factor * median;
}

}  // namespace cooplab
