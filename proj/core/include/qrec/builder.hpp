#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrec/definition.hpp"
#include "qrec/oracle.hpp"
#include "qrec/representation.hpp"

namespace qrec {

struct ShiftBounds {
  std::int64_t ell_prime = 0;
  std::int64_t u_prime = 0;
};

ShiftBounds shift_bounds(const QRecursiveDefinition& def);
// n0 - floor(ell' / q^M), the offset of the general construction.
std::int64_t general_offset(const QRecursiveDefinition& def);
std::size_t general_dimension(const QRecursiveDefinition& def);

LinearRepresentation build_general(const QRecursiveDefinition& def);
LinearRepresentation build_special(const QRecursiveDefinition& def);
// The q^m x q^m blocks B_r of the special construction.
std::vector<QMatrix> special_blocks(const QRecursiveDefinition& def);

// Appends delta(0..n0-1) so the result holds from 0; v(k) and v(qk + r) for
// small k come from the source, never from the representation itself.
LinearRepresentation correct_offset(const LinearRepresentation& rep, const ComponentSource& source);
LinearRepresentation correct_offset(const LinearRepresentation& rep, const SequenceOracle& oracle);

// Representation of n -> x(n + shift), minimized.
LinearRepresentation shift_representation(const LinearRepresentation& rep, std::int64_t shift);

// x(q^M n + s) = sum_k c(s,k) x(q^m n + k) + g_s(n); absent entries mean g_s = 0.
// Result is offset-corrected.
LinearRepresentation build_inhomogeneous(const QRecursiveDefinition& def,
                                         const std::vector<std::optional<LinearRepresentation>>& inhomogeneities);

struct IdentityTerm {
  Rational coeff;
  int level = 0;
  std::int64_t residue = 0;
};

// sum coeff * x(q^level n + residue) = 0 for all n >= start.
struct RecurrenceIdentity {
  std::vector<IdentityTerm> terms;
  std::int64_t start = 0;
};

struct IdentitySystem {
  int q = 2;
  int M = 1;
  int m = 0;
  QVector initial_values;
  std::vector<RecurrenceIdentity> identities;
};

// Solves for every x(q^M n + s) in level-m symbols. The returned definition
// carries per-row start indices and the largest of them as offset; initial
// values are taken from the system.
QRecursiveDefinition disentangle(const std::vector<RecurrenceIdentity>& identities, int q, int M, int m,
                                 const QVector& initial_values = {});
QRecursiveDefinition disentangle(const IdentitySystem& system);

// Text format: q/M/m/initial as for definitions, then blocks
//   identity <start>
//   <coeff> <level> <residue>   (one row per term)
//   end
IdentitySystem parse_identities(const std::string& text);
IdentitySystem load_identities(const std::string& path);

}  // namespace qrec
