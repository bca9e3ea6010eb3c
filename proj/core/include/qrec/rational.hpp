#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qrec {

using Rational = mpq_class;
using QVector = std::vector<Rational>;

// Accepts "a" or "a/b" with integer a, b; decimals are rejected.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& value);
double to_double(const Rational& value);

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QVector row(std::size_t r) const;
  QVector col(std::size_t c) const;
  QMatrix transpose() const;
  bool is_zero() const;

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

QMatrix operator+(const QMatrix& a, const QMatrix& b);
QMatrix operator-(const QMatrix& a, const QMatrix& b);
QMatrix operator*(const QMatrix& a, const QMatrix& b);
QMatrix operator*(const Rational& s, const QMatrix& a);
QVector operator*(const QMatrix& a, const QVector& v);
// Row vector times matrix.
QVector operator*(const QVector& v, const QMatrix& a);
Rational dot(const QVector& a, const QVector& b);
bool is_zero(const QVector& v);

std::string to_string(const QMatrix& m);
std::string to_string(const QVector& v);

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m);
std::size_t rank(QMatrix m);
// Basis of {x : m x = 0}, one vector per free column.
std::vector<QVector> nullspace(const QMatrix& m);
// Inverse of a square nonsingular matrix; throws DimensionMismatch otherwise.
QMatrix inverse(const QMatrix& m);

// Span of inserted vectors kept in echelon form, remembering how each echelon
// row combines the accepted inputs so coordinates can be recovered.
class IncrementalBasis {
 public:
  explicit IncrementalBasis(std::size_t ambient_dim) : dim_(ambient_dim) {}

  // Returns true and records the vector if it is independent of the span.
  bool insert(const QVector& v);
  // Coordinates of v with respect to the accepted vectors, in insertion order.
  // Throws DimensionMismatch if v is not in the span.
  QVector coordinates(const QVector& v) const;
  bool contains(const QVector& v) const;

  std::size_t size() const { return accepted_.size(); }
  const std::vector<QVector>& vectors() const { return accepted_; }

 private:
  // Reduces v against the echelon rows; combo accumulates subtracted multiples.
  void reduce(QVector& v, QVector& combo) const;

  std::size_t dim_;
  std::vector<QVector> accepted_;
  std::vector<QVector> echelon_;
  std::vector<QVector> combos_;
  std::vector<std::size_t> pivots_;
};

}  // namespace qrec
