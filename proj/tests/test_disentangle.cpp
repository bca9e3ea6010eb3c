#include <doctest.h>

#include "qrec/builder.hpp"
#include "qrec/catalog.hpp"
#include "qrec/error.hpp"
#include "qrec/oracle.hpp"

using namespace qrec;

namespace {

IdentityTerm term(long coeff, int level, std::int64_t residue) { return {Rational(coeff), level, residue}; }

// Coefficient tables agree after trimming to a common index window.
void check_same_coefficients(const QRecursiveDefinition& a, const QRecursiveDefinition& b) {
  REQUIRE(a.rows() == b.rows());
  const auto lo = std::min(a.ell, b.ell);
  const auto hi = std::max(a.u, b.u);
  for (std::int64_t s = 0; s < a.rows(); ++s)
    for (auto k = lo; k <= hi; ++k) {
      const Rational ca = k < a.ell || k > a.u ? Rational(0) : a.coeff(s, k);
      const Rational cb = k < b.ell || k > b.u ? Rational(0) : b.coeff(s, k);
      CAPTURE(s);
      CAPTURE(k);
      CHECK(ca == cb);
    }
}

const char* const kPascalIdentities = R"(
q 2
M 2
m 1
initial 1 2 3 3
# z(2n+1) = 3 z(n) - z(2n)
identity 0
1 1 1
-3 0 0
1 1 0
end
# z(4n) = -z(n) + 2 z(2n)
identity 0
1 2 0
1 0 0
-2 1 0
end
# z(4n+2) = 4 z(n) - z(2n)
identity 0
1 2 2
-4 0 0
1 1 0
end
)";

std::vector<RecurrenceIdentity> unbordered_identities() {
  return {
      {{term(1, 2, 0), term(-2, 1, 0)}, 2},
      {{term(1, 2, 1), term(-1, 1, 1)}, 0},
      {{term(1, 3, 2), term(-1, 1, 1), term(-1, 2, 3)}, 1},
      {{term(1, 3, 3), term(1, 1, 1), term(-1, 2, 2)}, 2},
      {{term(1, 3, 6), term(1, 1, 1), term(-1, 2, 2), term(-1, 2, 3)}, 2},
      {{term(1, 3, 7), term(-2, 1, 1), term(-1, 2, 3)}, 3},
  };
}

}  // namespace

TEST_CASE("Pascal identities disentangle into the known recursion") {
  const auto system = parse_identities(kPascalIdentities);
  CHECK(system.identities.size() == 3);
  const auto def = disentangle(system);
  CHECK(def.M == 2);
  CHECK(def.m == 1);
  CHECK(def.ell == 0);
  CHECK(def.u == 1);
  CHECK(def.offset == 0);
  const Rational third(1, 3);
  CHECK(def.coeff(0, 0) == 5 * third);
  CHECK(def.coeff(0, 1) == -third);
  CHECK(def.coeff(1, 0) == 4 * third);
  CHECK(def.coeff(1, 1) == third);
  CHECK(def.coeff(2, 0) == third);
  CHECK(def.coeff(2, 1) == 4 * third);
  CHECK(def.coeff(3, 0) == -third);
  CHECK(def.coeff(3, 1) == 5 * third);
  check_same_coefficients(def, catalog_entry("pascal_z").definition);
  const SequenceOracle derived(def);
  const SequenceOracle reference(catalog_entry("pascal_z").definition);
  for (std::int64_t n = 0; n < 2000; ++n) REQUIRE(derived.eval(n) == reference.eval(n));
}

TEST_CASE("Thue-Morse identities disentangle into eight relations with row starts") {
  const auto& entry = catalog_entry("unbordered");
  const auto def = disentangle(unbordered_identities(), 2, 3, 2, entry.definition.initial_values);
  CHECK(def.ell == 0);
  CHECK(def.u == 3);
  CHECK(def.offset == 3);
  CHECK(def.row_starts == std::vector<std::int64_t>{1, 0, 1, 2, 1, 0, 2, 3});
  check_same_coefficients(def, entry.definition);
  const SequenceOracle derived(def);
  for (std::int64_t n = 0; n <= entry.oracle_horizon; ++n) REQUIRE(derived.eval(n) == entry.independent_oracle(n));
}

TEST_CASE("identities already in target form pass through unchanged") {
  const auto& stern = catalog_entry("stern").definition;
  std::vector<RecurrenceIdentity> ids{
      {{term(1, 1, 0), term(-1, 0, 0)}, 0},
      {{term(1, 1, 1), term(-1, 0, 0), term(-1, 0, 1)}, 0},
  };
  const auto def = disentangle(ids, 2, 1, 0, stern.initial_values);
  check_same_coefficients(def, stern);
  CHECK(def.offset == 0);
  CHECK(def.row_starts.empty());
}

TEST_CASE("round trip through the text format") {
  const auto def = disentangle(parse_identities(kPascalIdentities));
  const auto again = parse_definition(format_definition(def));
  check_same_coefficients(def, again);
  CHECK(again.initial_values == def.initial_values);
}

TEST_CASE("missing or contradictory identities are reported") {
  std::vector<RecurrenceIdentity> ids{{{term(1, 2, 0), term(1, 0, 0), term(-2, 1, 0)}, 0}};
  CHECK_THROWS_AS(disentangle(ids, 2, 2, 1), Error);
  try {
    disentangle(ids, 2, 2, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Underdetermined);
  }
  // z(2n) = z(2n+1) forces a relation among the level-1 symbols.
  std::vector<RecurrenceIdentity> bad{{{term(1, 1, 0), term(-1, 1, 1)}, 0}};
  try {
    disentangle(bad, 2, 2, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Inconsistent);
  }
  CHECK_THROWS_AS(parse_identities("identity 0\n1 1 0\n"), Error);
  CHECK_THROWS_AS(parse_identities("identity 0\n1 1 0\nend\n"), Error);
  CHECK_THROWS_AS(parse_identities("identity 0\n1 x 0\n-1 0 0\nend\n"), Error);
}
