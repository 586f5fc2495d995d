#pragma once

/// Small dense matrices over an exact ring, with a division-free
/// determinant and a fraction-free (Bareiss) rank that works over any
/// integral domain exposing exact division.

#include <cstddef>
#include <utility>
#include <vector>

#include "swk/errors.hpp"
#include "swk/ring.hpp"

namespace swk {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_.at(i * cols_ + j); }
  const T& operator()(std::size_t i, std::size_t j) const { return data_.at(i * cols_ + j); }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] = a.data_[k] + b.data_[k];
    return out;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] = a.data_[k] - b.data_[k];
    return out;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
    if (a.data_.empty() || b.data_.empty()) return Matrix(a.rows_, b.cols_, T{});
    const T zero = a.data_.front() - a.data_.front();
    Matrix out(a.rows_, b.cols_, zero);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = out(i, j) + aik * b(k, j);
      }
    return out;
  }
  Matrix scaled(const T& s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x = x * s;
    return out;
  }

  std::vector<T> apply(const std::vector<T>& x) const {
    if (x.size() != cols_) throw DimensionError("matrix-vector shape mismatch");
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      T acc = x.empty() ? T{} : x.front() - x.front();
      for (std::size_t j = 0; j < cols_; ++j)
        if (!is_zero(x[j])) acc = acc + (*this)(i, j) * x[j];
      out.push_back(std::move(acc));
    }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionError("matrix shape mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

/// Determinant by Laplace expansion memoized over column subsets
/// (O(m 2^m) ring operations, no division). Fine for m up to ~16.
template <class T>
T determinant(const Matrix<T>& m, const T& zero, const T& one) {
  const std::size_t size = m.rows();
  if (m.cols() != size) throw DimensionError("determinant of non-square matrix");
  if (size > 20) throw DimensionError("determinant size too large for subset expansion");
  // minors[S] = det of rows (size-|S| .. size-1) restricted to columns S.
  std::vector<T> minors(std::size_t{1} << size, zero);
  minors[0] = one;
  for (std::size_t mask = 1; mask < minors.size(); ++mask) {
    const std::size_t count = static_cast<std::size_t>(__builtin_popcountll(mask));
    const std::size_t row = size - count;
    T acc = zero;
    std::size_t position = 0;
    for (std::size_t col = 0; col < size; ++col) {
      if (!(mask >> col & 1u)) continue;
      const T& entry = m(row, col);
      if (!is_zero(entry)) {
        T term = entry * minors[mask ^ (std::size_t{1} << col)];
        acc = (position % 2 == 0) ? acc + term : acc - term;
      }
      ++position;
    }
    minors[mask] = std::move(acc);
  }
  return minors.back();
}

/// Rank over the fraction field of the ring, by Bareiss elimination.
template <CoeffRing R>
std::size_t rank(const R& ring, std::vector<std::vector<typename R::Elem>> rows) {
  using E = typename R::Elem;
  if (rows.empty()) return 0;
  const std::size_t ncols = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != ncols) throw DimensionError("ragged matrix in rank computation");
  E previous = ring.one();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < ncols && pivot_row < rows.size(); ++col) {
    std::size_t found = pivot_row;
    while (found < rows.size() && ring.is_zero(rows[found][col])) ++found;
    if (found == rows.size()) continue;
    std::swap(rows[found], rows[pivot_row]);
    const E pivot = rows[pivot_row][col];
    for (std::size_t i = pivot_row + 1; i < rows.size(); ++i) {
      const E factor = rows[i][col];
      for (std::size_t j = col + 1; j < ncols; ++j) {
        E numerator = pivot * rows[i][j] - factor * rows[pivot_row][j];
        auto q = ring.exact_div(numerator, previous);
        if (!q) throw InvariantViolation("inexact division during fraction-free elimination");
        rows[i][j] = std::move(*q);
      }
      rows[i][col] = ring.zero();
    }
    previous = pivot;
    ++pivot_row;
  }
  return pivot_row;
}

}  // namespace swk
