#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qrec/definition.hpp"
#include "qrec/representation.hpp"
#include "qrec/spectral.hpp"

namespace qrec {

struct CatalogEntry {
  std::string name;
  std::string description;
  QRecursiveDefinition definition;
  // First-principles evaluator, independent of the recurrence.
  std::function<Rational(std::int64_t)> independent_oracle;
  // Range on which both evaluators are expected to agree.
  std::int64_t oracle_horizon = 0;
  // Build with the special construction (M = m + 1, l = 0, u = q^m - 1).
  bool special = false;
  // Norm settings that certify the JSR of the matrix set used for asymptotics.
  JsrOptions jsr_hint;
  // Eta for the block Dirichlet series of the special construction.
  std::int64_t eta = 1;
  // kappa, minimal_dimension, jsr, phi0 when known.
  std::map<std::string, double> constants;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& name);
std::vector<std::string> catalog_names();

// build_general or build_special followed by correct_offset.
LinearRepresentation catalog_representation(const CatalogEntry& entry);
// The representation with offset as built, before correction.
LinearRepresentation catalog_raw_representation(const CatalogEntry& entry);

// The 2-linear representation of the binary sum of digits from the introduction.
LinearRepresentation sum_of_digits_intro();

// (d(n), d(n + 1)) with A_0 = ((1,0),(1,1)), A_1 = ((1,1),(0,1)).
LinearRepresentation stern_reduced();

// Matrices whose JSR governs the error term: B_r for special entries, A_r otherwise.
std::vector<QMatrix> catalog_jsr_matrices(const CatalogEntry& entry);

// Number of representations of n with digits {0, 1, 2} in base 2.
std::int64_t stern_hyperbinary(std::int64_t n);
// Occurrences of v as a scattered subword of u.
std::int64_t word_binomial(const std::string& u, const std::string& v);
// Binary expansion, empty for 0.
std::string binary_word(std::int64_t n);
// Non-zero entries in row n of the generalized Pascal triangle of binary words.
std::int64_t pascal_z_oracle(std::int64_t n);
// Unbordered length-n factors of the Thue-Morse word. prefix_len 0 picks 8 max(n, 1).
std::int64_t tm_unbordered_oracle(std::int64_t n, std::int64_t prefix_len = 0);
// f(n) = 0 iff the binary expansion of n matches 1(01*0)*10*1.
bool tm_unbordered_is_zero(std::int64_t n);
// Largest power of two not exceeding n, 0 for n = 0.
std::int64_t largest_power_of_two(std::int64_t n);

}  // namespace qrec
