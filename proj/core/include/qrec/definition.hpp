#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrec/rational.hpp"

namespace qrec {

std::int64_t ipow(std::int64_t base, int exponent);
std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t ceil_div(std::int64_t a, std::int64_t b);

// x(q^M n + s) = sum_{k=ell..u} coeff(s, k) x(q^m n + k) for n >= offset.
struct QRecursiveDefinition {
  int q = 2;
  int M = 1;
  int m = 0;
  std::int64_t ell = 0;
  std::int64_t u = 0;
  std::int64_t offset = 0;
  // Row-major, q^M rows of (u - ell + 1) entries; nullopt marks a missing entry.
  std::vector<std::optional<Rational>> coeffs;
  QVector initial_values;
  // Optional per-row start indices (each <= offset); a row may hold earlier
  // than the common offset, and validation checks it from there.
  std::vector<std::int64_t> row_starts;

  std::int64_t rows() const { return ipow(q, M); }
  std::int64_t width() const { return u - ell + 1; }
  // Number of explicit initial values required.
  std::int64_t initial_span() const { return rows() * std::max<std::int64_t>(offset, 1); }
  std::int64_t row_start(std::int64_t s) const;

  const Rational& coeff(std::int64_t s, std::int64_t k) const;
  void set_coeff(std::int64_t s, std::int64_t k, const Rational& value);
  // Allocates an all-missing table of the right shape.
  void reset_coeffs();
};

// Throws OffsetTooSmall, MissingCoefficient, InconsistentInitialValues,
// IllFoundedRecurrence or ParseError; returns the definition unchanged.
const QRecursiveDefinition& validate_definition(const QRecursiveDefinition& def);

// Text format:
//   q 2 / M 1 / m 0 / l 0 / u 1 / offset 0
//   coefficients            rows "s k value" until "end"
//   initial v0 v1 ...       may repeat; values appended
//   starts n_0 n_1 ...      optional per-row start indices
// '#' starts a comment.
QRecursiveDefinition parse_definition(const std::string& text);
QRecursiveDefinition load_definition(const std::string& path);
std::string format_definition(const QRecursiveDefinition& def);

}  // namespace qrec
