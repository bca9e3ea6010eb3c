#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qrec/polynomial.hpp"
#include "qrec/rational.hpp"

namespace qrec {

struct Eigenvalue {
  std::complex<double> value;
  int algebraic_multiplicity = 0;
  int jordan_size = 0;
  // Set when the eigenvalue is rational and verified exactly.
  std::optional<Rational> exact;
  // Jordan size from a structural shortcut is only a lower bound for 0 and 1.
  bool jordan_lower_bound = false;
};

struct SpectrumReport {
  Polynomial char_poly;
  std::vector<Eigenvalue> eigenvalues;  // sorted by modulus, then argument

  double spectral_radius() const;
  // Largest Jordan size among eigenvalues of modulus within tol of `modulus`.
  int max_jordan_on_circle(double modulus, double tol = 1e-9) const;
};

struct SpectrumConfig {
  double cluster_tolerance = 1e-9;
};

// Exact characteristic and minimal polynomials; numeric roots of their
// squarefree parts. Jordan sizes are read off the minimal polynomial exactly.
SpectrumReport spectrum(const QMatrix& c, const SpectrumConfig& cfg = {});

// sigma(C~) for an offset-corrected representation with offset n0 >= 1:
// char poly gains (x - 1) x^(n0 - 1).
SpectrumReport spectrum_offset_shortcut(const SpectrumReport& inner, std::int64_t n0);
// sigma(C) for the special construction: char poly gains x^(zero_block_dim).
SpectrumReport spectrum_special_shortcut(const SpectrumReport& inner_b_sum, std::size_t zero_block_dim);

enum class NormKind { RowSum, ColumnSum, Spectral };
enum class GrowthStatus { Holds, Violated, Unknown };

std::string to_string(NormKind kind);
std::string to_string(GrowthStatus status);

struct JsrOptions {
  int k_max = 2;
  NormKind norm = NormKind::Spectral;
  // Norm of G is taken as ||T^{-1} G T||; usually diagonal.
  std::optional<QMatrix> scaling;
  double tolerance = 1e-9;
};

struct JsrBounds {
  double lower = 0;
  double upper = 0;
  // Word length at which the upper bound was attained.
  int depth = 0;
  NormKind norm = NormKind::Spectral;
  bool scaled = false;
  // Word whose spectral radius meets the upper bound; digits index the set.
  std::optional<std::vector<int>> finiteness_certificate;
  std::vector<int> lower_witness;
  GrowthStatus growth = GrowthStatus::Unknown;
};

JsrBounds jsr_bounds(const std::vector<QMatrix>& mats, const JsrOptions& options = {});
// [max(lower, 1), max(upper, 1)]
JsrBounds jsr_offset_shortcut(const JsrBounds& inner, double tolerance = 1e-9);
// Pass-through of the B-set bounds.
JsrBounds jsr_special_shortcut(const JsrBounds& b_set, double tolerance = 1e-9);

}  // namespace qrec
