#include "qrec/rational.hpp"

#include <regex>
#include <sstream>

#include "qrec/error.hpp"

namespace qrec {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::OffsetTooSmall: return "OffsetTooSmall";
    case ErrorCode::InconsistentInitialValues: return "InconsistentInitialValues";
    case ErrorCode::MissingCoefficient: return "MissingCoefficient";
    case ErrorCode::IllFoundedRecurrence: return "IllFoundedRecurrence";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IndexRangeViolation: return "IndexRangeViolation";
    case ErrorCode::SpecialCaseViolation: return "SpecialCaseViolation";
    case ErrorCode::RepresentationHasOffset: return "RepresentationHasOffset";
    case ErrorCode::UnsupportedLabel: return "UnsupportedLabel";
    case ErrorCode::UnsupportedShift: return "UnsupportedShift";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Underdetermined: return "Underdetermined";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::ClusteringAmbiguous: return "ClusteringAmbiguous";
    case ErrorCode::NoSeparation: return "NoSeparation";
    case ErrorCode::NotSimpleEigenvalue: return "NotSimpleEigenvalue";
    case ErrorCode::NearPole: return "NearPole";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::UnknownCatalogEntry: return "UnknownCatalogEntry";
    case ErrorCode::UnsupportedPrecision: return "UnsupportedPrecision";
    case ErrorCode::PrefixInsufficient: return "PrefixInsufficient";
  }
  return "UnknownError";
}

Rational parse_rational(const std::string& text) {
  static const std::regex pattern(R"(\s*([+-]?\d+)(?:/(\d+))?\s*)");
  std::smatch match;
  if (!std::regex_match(text, match, pattern)) {
    throw Error(ErrorCode::ParseError, "not a rational: '" + text + "'");
  }
  std::string numerator = match[1].str();
  if (!numerator.empty() && numerator[0] == '+') numerator.erase(0, 1);
  mpz_class num(numerator, 10);
  mpz_class den(1);
  if (match[2].matched) den = mpz_class(match[2].str(), 10);
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
  Rational value(num, den);
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) { return value.get_str(); }

double to_double(const Rational& value) { return value.get_d(); }

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) return {};
  QMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

QVector QMatrix::row(std::size_t r) const {
  return QVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

QVector QMatrix::col(std::size_t c) const {
  QVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool QMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

static void require_same_shape(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "matrix shapes differ");
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  require_same_shape(a, b);
  QMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) + b(r, c);
  return out;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  require_same_shape(a, b);
  QMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) - b(r, c);
  return out;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product shapes");
  QMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(r, k) == 0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c)
        if (b(k, c) != 0) out(r, c) += a(r, k) * b(k, c);
    }
  return out;
}

QMatrix operator*(const Rational& s, const QMatrix& a) {
  QMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = s * a(r, c);
  return out;
}

QVector operator*(const QMatrix& a, const QVector& v) {
  if (a.cols() != v.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shapes");
  QVector out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (a(r, c) != 0 && v[c] != 0) out[r] += a(r, c) * v[c];
  return out;
}

QVector operator*(const QVector& v, const QMatrix& a) {
  if (a.rows() != v.size()) throw Error(ErrorCode::DimensionMismatch, "vector-matrix shapes");
  QVector out(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (v[r] == 0) continue;
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (a(r, c) != 0) out[c] += v[r] * a(r, c);
  }
  return out;
}

Rational dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "dot product lengths");
  Rational sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

bool is_zero(const QVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

std::string to_string(const QVector& v) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i].get_str();
  out << ']';
  return out.str();
}

std::string to_string(const QMatrix& m) {
  std::ostringstream out;
  out << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) out << (r ? ",\n " : "") << to_string(m.row(r));
  out << ']';
  return out.str();
}

// Bit size of numerator plus denominator; small entries make cheap pivots.
static std::size_t height(const Rational& x) {
  return mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2);
}

std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t best = m.rows();
    for (std::size_t r = lead_row; r < m.rows(); ++r)
      if (m(r, c) != 0 && (best == m.rows() || height(m(r, c)) < height(m(best, c)))) best = r;
    if (best == m.rows()) continue;
    if (best != lead_row)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(best, k), m(lead_row, k));
    const Rational inv = 1 / m(lead_row, c);
    for (std::size_t k = c; k < m.cols(); ++k) m(lead_row, k) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || m(r, c) == 0) continue;
      const Rational factor = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k)
        if (m(lead_row, k) != 0) m(r, k) -= factor * m(lead_row, k);
    }
    pivots.push_back(c);
    ++lead_row;
  }
  return pivots;
}

std::size_t rank(QMatrix m) { return rref(m).size(); }

std::vector<QVector> nullspace(const QMatrix& m) {
  QMatrix reduced = m;
  const auto pivots = rref(reduced);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    QVector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

QMatrix inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1)
    throw Error(ErrorCode::DimensionMismatch, "matrix is singular");
  QMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

void IncrementalBasis::reduce(QVector& v, QVector& combo) const {
  for (std::size_t i = 0; i < echelon_.size(); ++i) {
    const auto p = pivots_[i];
    if (v[p] == 0) continue;
    const Rational factor = v[p] / echelon_[i][p];
    for (std::size_t k = 0; k < dim_; ++k)
      if (echelon_[i][k] != 0) v[k] -= factor * echelon_[i][k];
    for (std::size_t j = 0; j < combos_[i].size(); ++j) combo[j] += factor * combos_[i][j];
  }
}

bool IncrementalBasis::insert(const QVector& v) {
  if (v.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "basis vector length");
  QVector residual = v;
  QVector combo(accepted_.size() + 1);
  reduce(residual, combo);
  std::size_t pivot = dim_;
  for (std::size_t k = 0; k < dim_; ++k)
    if (residual[k] != 0) {
      pivot = k;
      break;
    }
  if (pivot == dim_) return false;
  // residual = v - sum(combo_j * accepted_j)
  for (auto& c : combo) c = -c;
  combo.back() = 1;
  accepted_.push_back(v);
  echelon_.push_back(std::move(residual));
  combos_.push_back(std::move(combo));
  pivots_.push_back(pivot);
  return true;
}

QVector IncrementalBasis::coordinates(const QVector& v) const {
  if (v.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "basis vector length");
  QVector residual = v;
  QVector combo(accepted_.size());
  reduce(residual, combo);
  if (!is_zero(residual)) throw Error(ErrorCode::DimensionMismatch, "vector outside span");
  return combo;
}

bool IncrementalBasis::contains(const QVector& v) const {
  QVector residual = v;
  QVector combo(accepted_.size());
  reduce(residual, combo);
  return is_zero(residual);
}

}  // namespace qrec
