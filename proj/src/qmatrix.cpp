#include "ghostcheck/qmatrix.hpp"

#include <string>
#include <utility>

#include "ghostcheck/error.hpp"

namespace ghostcheck {

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  QMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw Error(ErrorCode::DimensionMismatch,
                  "matrix row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                      " entries, expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

QMatrix QMatrix::from_columns(std::size_t rows, const std::vector<QVector>& columns) {
  QMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) {
      throw Error(ErrorCode::DimensionMismatch,
                  "matrix column " + std::to_string(c) + " has " +
                      std::to_string(columns[c].size()) + " entries, expected " +
                      std::to_string(rows));
    }
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QVector QMatrix::column(std::size_t c) const {
  QVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

QVector QMatrix::row(std::size_t r) const {
  return QVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

QMatrix QMatrix::select_columns(const std::vector<std::size_t>& cols) const {
  QMatrix m(rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols.size(); ++k) m(r, k) = (*this)(r, cols[k]);
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

QVector QMatrix::operator*(const QVector& v) const {
  if (v.size() != cols_) {
    throw Error(ErrorCode::DimensionMismatch, "matrix-vector product: vector length " +
                                                  std::to_string(v.size()) + " != " +
                                                  std::to_string(cols_) + " columns");
  }
  QVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (!v[c].is_zero()) out[r] += (*this)(r, c) * v[c];
  return out;
}

QMatrix QMatrix::operator*(const QMatrix& rhs) const {
  if (rhs.rows_ != cols_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  QMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
    }
  return out;
}

RowEchelon row_reduce(QMatrix m) {
  RowEchelon result;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    std::size_t found = pivot_row;
    while (found < m.rows() && m(found, col).is_zero()) ++found;
    if (found == m.rows()) continue;

    if (found != pivot_row)
      for (std::size_t c = col; c < m.cols(); ++c) std::swap(m(found, c), m(pivot_row, c));

    const Rational inv = m(pivot_row, col).inverse();
    for (std::size_t c = col; c < m.cols(); ++c) m(pivot_row, c) *= inv;

    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == pivot_row || m(r, col).is_zero()) continue;
      const Rational factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (!m(pivot_row, c).is_zero()) m(r, c) -= factor * m(pivot_row, c);
    }
    result.pivot_columns.push_back(col);
    ++pivot_row;
  }
  result.reduced = std::move(m);
  return result;
}

std::size_t rank(const QMatrix& m) { return row_reduce(m).pivot_columns.size(); }

std::vector<QVector> kernel_basis(const QMatrix& m) {
  const RowEchelon ech = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : ech.pivot_columns) is_pivot[c] = true;

  std::vector<QVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    QVector v(m.cols());
    v[free] = 1;
    for (std::size_t k = 0; k < ech.pivot_columns.size(); ++k)
      v[ech.pivot_columns[k]] = -ech.reduced(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace ghostcheck
