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

// Brute-force references used only by the tests. Subspaces are built as
// null spaces of their defining linear constraints, and projections are
// solved from the normal equations in exact arithmetic.

#ifndef COOPLAB_TESTS_ORACLES_HPP_
#define COOPLAB_TESTS_ORACLES_HPP_

#include <cstddef>
#include <functional>
#include <vector>

#include "cooplab/game.hpp"

namespace cooplab::oracle {

using Q = Rational;
using Vec = std::vector<Q>;

// Games as vectors: A row-major, then B row-major.
inline Vec Flatten(const BimatrixGame<Q>& g) {
  Vec v(g.A().values().begin(), g.A().values().end());
  v.insert(v.end(), g.B().values().begin(), g.B().values().end());
  return v;
}

inline BimatrixGame<Q> Unflatten(const Vec& v, std::size_t m, std::size_t n) {
  Matrix<Q> a(m, n), b(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = v[i * n + j];
      b(i, j) = v[m * n + i * n + j];
    }
  }
  return BimatrixGame<Q>(a, b);
}

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> Rref(std::vector<Vec>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Q lead = rows[r][c];
    for (auto& x : rows[r]) x /= lead;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == r || sgn(rows[k][c]) == 0) continue;
      const Q f = rows[k][c];
      for (std::size_t x = 0; x < rows[k].size(); ++x) rows[k][x] -= f * rows[r][x];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::vector<Vec> NullSpace(std::vector<Vec> constraints, std::size_t dim) {
  const auto pivots = Rref(constraints, dim);
  std::vector<bool> is_pivot(dim, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < dim; ++free) {
    if (is_pivot[free]) continue;
    Vec v(dim, Q(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -constraints[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Constraint builder over the 2mn game coordinates.
struct Constraints {
  std::size_t m, n;
  std::vector<Vec> rows;

  std::size_t a(std::size_t i, std::size_t j) const { return i * n + j; }
  std::size_t b(std::size_t i, std::size_t j) const { return m * n + i * n + j; }
  Vec Blank() const { return Vec(2 * m * n, Q(0)); }

  void ColumnSumsOfAZero() {
    for (std::size_t j = 0; j < n; ++j) {
      Vec r = Blank();
      for (std::size_t i = 0; i < m; ++i) r[a(i, j)] = 1;
      rows.push_back(r);
    }
  }
  void RowSumsOfBZero() {
    for (std::size_t i = 0; i < m; ++i) {
      Vec r = Blank();
      for (std::size_t j = 0; j < n; ++j) r[b(i, j)] = 1;
      rows.push_back(r);
    }
  }
  // Row sums of A and column sums of B zero too (doubly centered).
  void RowSumsOfAZero() {
    for (std::size_t i = 0; i < m; ++i) {
      Vec r = Blank();
      for (std::size_t j = 0; j < n; ++j) r[a(i, j)] = 1;
      rows.push_back(r);
    }
  }
  void ColumnSumsOfBZero() {
    for (std::size_t j = 0; j < n; ++j) {
      Vec r = Blank();
      for (std::size_t i = 0; i < m; ++i) r[b(i, j)] = 1;
      rows.push_back(r);
    }
  }
  // ca * A + cb * B = 0 entrywise.
  void Linear(int ca, int cb) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Vec r = Blank();
        r[a(i, j)] = ca;
        r[b(i, j)] = cb;
        rows.push_back(r);
      }
    }
  }
  // M(i,j) - M(i,0) - M(0,j) + M(0,0) = 0 for M = sa * A + sb * B, which
  // says M = u 1^T + 1 v^T.
  void AdditiveSeparable(int sa, int sb) {
    for (std::size_t i = 1; i < m; ++i) {
      for (std::size_t j = 1; j < n; ++j) {
        Vec r = Blank();
        for (auto [ii, jj, s] : {std::tuple{i, j, 1}, std::tuple{i, std::size_t{0}, -1},
                                 std::tuple{std::size_t{0}, j, -1},
                                 std::tuple{std::size_t{0}, std::size_t{0}, 1}}) {
          r[a(ii, jj)] += sa * s;
          r[b(ii, jj)] += sb * s;
        }
        rows.push_back(r);
      }
    }
  }
  // Every row of A equal to the first, every column of B equal to the first.
  void NonStrategic() {
    for (std::size_t i = 1; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Vec r = Blank();
        r[a(i, j)] = 1;
        r[a(0, j)] = -1;
        rows.push_back(r);
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 1; j < n; ++j) {
        Vec r = Blank();
        r[b(i, j)] = 1;
        r[b(i, 0)] = -1;
        rows.push_back(r);
      }
    }
  }
};

// Normalized potential: normalized and A - B additively separable.
inline std::vector<Vec> PotentialBasis(std::size_t m, std::size_t n) {
  Constraints c{m, n, {}};
  c.ColumnSumsOfAZero();
  c.RowSumsOfBZero();
  c.AdditiveSeparable(1, -1);
  return NullSpace(c.rows, 2 * m * n);
}

// Normalized harmonic: normalized and m A + n B = 0.
inline std::vector<Vec> HarmonicBasisOracle(std::size_t m, std::size_t n) {
  Constraints c{m, n, {}};
  c.ColumnSumsOfAZero();
  c.RowSumsOfBZero();
  c.Linear(static_cast<int>(m), static_cast<int>(n));
  return NullSpace(c.rows, 2 * m * n);
}

inline std::vector<Vec> NonStrategicBasis(std::size_t m, std::size_t n) {
  Constraints c{m, n, {}};
  c.NonStrategic();
  return NullSpace(c.rows, 2 * m * n);
}

inline std::vector<Vec> IdenticalNormalizedBasis(std::size_t m, std::size_t n) {
  Constraints c{m, n, {}};
  c.Linear(1, -1);
  c.ColumnSumsOfAZero();
  c.RowSumsOfAZero();
  return NullSpace(c.rows, 2 * m * n);
}

inline std::vector<Vec> ZeroSumNormalizedBasis(std::size_t m, std::size_t n) {
  Constraints c{m, n, {}};
  c.Linear(1, 1);
  c.ColumnSumsOfAZero();
  c.RowSumsOfAZero();
  return NullSpace(c.rows, 2 * m * n);
}

inline std::vector<Vec> DominantBasis(std::size_t m, std::size_t n) {
  Constraints c{m, n, {}};
  c.AdditiveSeparable(1, 0);
  c.AdditiveSeparable(0, 1);
  return NullSpace(c.rows, 2 * m * n);
}

// Least-squares coefficients of `target` on the columns `basis` (normal
// equations, exact). Returns the fitted combination split per block sizes.
inline std::vector<Vec> ProjectOnBlocks(const std::vector<std::vector<Vec>>& blocks,
                                        const Vec& target) {
  std::vector<Vec> cols;
  for (const auto& block : blocks) cols.insert(cols.end(), block.begin(), block.end());
  const std::size_t k = cols.size();
  std::vector<Vec> system(k, Vec(k + 1, Q(0)));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      Q dot = 0;
      for (std::size_t x = 0; x < target.size(); ++x) dot += cols[r][x] * cols[c][x];
      system[r][c] = dot;
    }
    Q rhs = 0;
    for (std::size_t x = 0; x < target.size(); ++x) rhs += cols[r][x] * target[x];
    system[r][k] = rhs;
  }
  Rref(system, k);
  std::vector<Vec> out;
  std::size_t offset = 0;
  for (const auto& block : blocks) {
    Vec part(target.size(), Q(0));
    for (std::size_t c = 0; c < block.size(); ++c) {
      const Q& coef = system[offset + c][k];
      for (std::size_t x = 0; x < target.size(); ++x) part[x] += coef * block[c][x];
    }
    out.push_back(std::move(part));
    offset += block.size();
  }
  return out;
}

// Direct expected-payoff evaluation, no matrix helpers.
inline double BruteU(const BimatrixGame<double>& g, const std::vector<double>& p,
                     const std::vector<double>& q) {
  double best_row = -1e300, best_col = -1e300;
  for (std::size_t i = 0; i < g.m(); ++i) {
    double v = 0;
    for (std::size_t j = 0; j < g.n(); ++j) v += g.A()(i, j) * q[j];
    best_row = std::max(best_row, v);
  }
  for (std::size_t j = 0; j < g.n(); ++j) {
    double v = 0;
    for (std::size_t i = 0; i < g.m(); ++i) v += p[i] * g.B()(i, j);
    best_col = std::max(best_col, v);
  }
  return best_row + best_col;
}

}  // namespace cooplab::oracle

#endif  // COOPLAB_TESTS_ORACLES_HPP_
