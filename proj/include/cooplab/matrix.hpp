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

#ifndef COOPLAB_MATRIX_HPP_
#define COOPLAB_MATRIX_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "cooplab/error.hpp"
#include "cooplab/scalar.hpp"

namespace cooplab {

template <typename T>
using Vector = std::vector<T>;

// Dense row-major matrix with value semantics. Sizes are small (payoff
// tables), so no expression templates or views beyond row spans.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) {
        throw Error(ErrorCode::kDimensionMismatch, "ragged matrix literal");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix FromRows(const std::vector<std::vector<T>>& rows) {
    Matrix out;
    out.rows_ = rows.size();
    out.cols_ = rows.empty() ? 0 : rows.front().size();
    out.data_.reserve(out.rows_ * out.cols_);
    for (const auto& row : rows) {
      if (row.size() != out.cols_) {
        throw Error(ErrorCode::kDimensionMismatch, "ragged matrix rows");
      }
      out.data_.insert(out.data_.end(), row.begin(), row.end());
    }
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const T> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const T> values() const { return data_; }

  bool SameShape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  template <typename F>
  Matrix Map(F&& f) const {
    Matrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = f(data_[k]);
    return out;
  }

  Matrix Transposed() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  Matrix& operator+=(const Matrix& other) {
    CheckShape(other);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& other) {
    CheckShape(other);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& c) {
    for (auto& x : data_) x *= c;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const T& c, Matrix a) { return a *= c; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  // Row-major vectorization; used by the least-squares oracle in tests.
  const std::vector<T>& data() const { return data_; }

 private:
  void CheckShape(const Matrix& other) const {
    if (!SameShape(other)) {
      throw Error(ErrorCode::kDimensionMismatch, "matrix shapes differ");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <typename T>
Vector<T> RowMeans(const Matrix<T>& m) {
  Vector<T> out(m.rows(), T(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j);
    out[i] /= T(static_cast<long>(m.cols()));
  }
  return out;
}

template <typename T>
Vector<T> ColMeans(const Matrix<T>& m) {
  Vector<T> out(m.cols(), T(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += m(i, j);
  for (auto& x : out) x /= T(static_cast<long>(m.rows()));
  return out;
}

// 1_m u^T: every row equals `u`.
template <typename T>
Matrix<T> RepeatRow(const Vector<T>& u, std::size_t rows) {
  Matrix<T> out(rows, u.size());
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < u.size(); ++j) out(i, j) = u[j];
  return out;
}

// v 1_n^T: every column equals `v`.
template <typename T>
Matrix<T> RepeatCol(const Vector<T>& v, std::size_t cols) {
  Matrix<T> out(v.size(), cols);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = v[i];
  return out;
}

template <typename T>
bool IsZeroMatrix(const Matrix<T>& m, const T& scale = T(1)) {
  for (const auto& x : m.values()) {
    if (!ScalarTraits<T>::IsZero(x, scale)) return false;
  }
  return true;
}

template <typename T>
T MaxAbs(const Matrix<T>& m) {
  T best(0);
  for (const auto& x : m.values()) {
    T a = ScalarTraits<T>::Abs(x);
    if (a > best) best = a;
  }
  return best;
}

template <typename T>
Matrix<double> ToDoubleMatrix(const Matrix<T>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = ToDouble(m(i, j));
  return out;
}

}  // namespace cooplab

#endif  // COOPLAB_MATRIX_HPP_
