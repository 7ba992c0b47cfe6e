#pragma once

#include <cstddef>
#include <vector>

#include "ghostcheck/rational.hpp"

namespace ghostcheck {

/// Dense row-major matrix over Q.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  /// Row-major nested list; all rows must have equal length.
  static QMatrix from_rows(const std::vector<QVector>& rows);
  /// Builds the matrix whose columns are the given vectors (all equal length).
  static QMatrix from_columns(std::size_t rows, const std::vector<QVector>& columns);
  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QVector column(std::size_t c) const;
  QVector row(std::size_t r) const;
  /// Submatrix keeping the listed columns, in the given order.
  QMatrix select_columns(const std::vector<std::size_t>& cols) const;
  QMatrix transpose() const;

  QVector operator*(const QVector& v) const;
  QMatrix operator*(const QMatrix& rhs) const;

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form with the pivot rule "leftmost unresolved column,
/// first row at or below the current pivot row with a nonzero entry".
struct RowEchelon {
  QMatrix reduced;
  std::vector<std::size_t> pivot_columns;
};

RowEchelon row_reduce(QMatrix m);

std::size_t rank(const QMatrix& m);

/// Basis of the right null space. One vector per non-pivot column f, with
/// entry 1 at f and zeros at the other free columns.
std::vector<QVector> kernel_basis(const QMatrix& m);

}  // namespace ghostcheck
