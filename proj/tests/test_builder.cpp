#include <doctest.h>

#include <bit>

#include "fixtures.hpp"
#include "qrec/builder.hpp"
#include "qrec/catalog.hpp"
#include "qrec/error.hpp"
#include "qrec/oracle.hpp"
#include "support.hpp"

using namespace qrec;
using namespace qrec::testing;

namespace {

std::int64_t closed_dimension(const QRecursiveDefinition& def) {
  const auto b = shift_bounds(def);
  return (ipow(def.q, def.M) - 1) / (def.q - 1) +
         (def.M - def.m) * (b.u_prime - b.ell_prime - ipow(def.q, def.m) + 1);
}

QRecursiveDefinition random_definition(int q, int M, int m, std::int64_t ell, std::int64_t u) {
  QRecursiveDefinition def;
  def.q = q;
  def.M = M;
  def.m = m;
  def.ell = ell;
  def.u = u;
  const auto qm = ipow(q, m);
  def.offset = std::max<std::int64_t>(1, ceil_div(-ell, qm));
  // Keep every right-hand argument below the left-hand one.
  while ((ipow(q, M) - qm) * def.offset <= u) ++def.offset;
  def.reset_coeffs();
  for (std::int64_t s = 0; s < def.rows(); ++s)
    for (std::int64_t k = ell; k <= u; ++k) def.set_coeff(s, k, uniform(-2, 2));
  for (std::int64_t i = 0; i < def.initial_span(); ++i) def.initial_values.emplace_back(uniform(-3, 3));
  return validate_definition(def);
}

}  // namespace

TEST_CASE("shift bounds") {
  auto def = catalog_entry("stern").definition;
  CHECK(shift_bounds(def).ell_prime == 0);
  CHECK(shift_bounds(def).u_prime == 2);
  def = catalog_entry("artificial_general").definition;
  CHECK(shift_bounds(def).ell_prime == -3);
  CHECK(shift_bounds(def).u_prime == 3);
  def = catalog_entry("h_power").definition;
  CHECK(shift_bounds(def).ell_prime == 0);
  CHECK(shift_bounds(def).u_prime == 0);
}

TEST_CASE("general construction reproduces the odd-Pascal and Stern matrices") {
  const auto p = build_general(catalog_entry("pascal_odd").definition);
  CHECK(p.matrices[0] == QMatrix::from_rows({{3, 0, 0}, {2, 1, 0}, {0, 3, 0}}));
  CHECK(p.matrices[1] == QMatrix::from_rows({{2, 1, 0}, {0, 3, 0}, {0, 2, 1}}));
  const auto d = build_general(catalog_entry("stern").definition);
  CHECK(d.matrices[0] == QMatrix::from_rows({{1, 0, 0}, {1, 1, 0}, {0, 1, 0}}));
  CHECK(d.matrices[1] == QMatrix::from_rows({{1, 1, 0}, {0, 1, 0}, {0, 1, 1}}));
  CHECK(d.validity_offset == 0);
}

TEST_CASE("general construction reproduces the 17-dimensional artificial example") {
  const auto& def = catalog_entry("artificial_general").definition;
  const auto rep = build_general(def);
  REQUIRE(rep.dim() == 17);
  CHECK(rep.matrices[0] == matrix_from_text(kArtificialA0));
  CHECK(rep.matrices[1] == matrix_from_text(kArtificialA1));
  // n1 = n0 - floor(l' / q^M); the catalog uses n0 = 1.
  CHECK(rep.validity_offset == def.offset + 1);
  auto zero_offset = def;
  zero_offset.offset = 0;
  CHECK(general_offset(zero_offset) == 1);
  CHECK(rep_check(rep, SequenceOracle(def), 600).ok);
}

TEST_CASE("special construction reproduces the reference matrices") {
  const auto art = build_special(catalog_entry("artificial_special").definition);
  CHECK(art.matrices[0] == matrix_from_text(kSpecialArtificialA0));
  CHECK(art.matrices[1] == matrix_from_text(kSpecialArtificialA1));

  const auto& pz = catalog_entry("pascal_z").definition;
  const auto blocks = special_blocks(pz);
  const Rational t(1, 3);
  CHECK(blocks[0] == t * QMatrix::from_rows({{5, -1}, {4, 1}}));
  CHECK(blocks[1] == t * QMatrix::from_rows({{1, 4}, {-1, 5}}));
  const auto rep = build_special(pz);
  CHECK(rep.matrices[0] == t * QMatrix::from_rows({{0, 3, 0}, {0, 5, -1}, {0, 4, 1}}));
  CHECK(rep.matrices[1] == t * QMatrix::from_rows({{0, 0, 3}, {0, 1, 4}, {0, -1, 5}}));

  const auto& ub = catalog_entry("unbordered").definition;
  const auto ub_blocks = special_blocks(ub);
  CHECK(ub_blocks[0] == QMatrix::from_rows({{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 1, 0, 1}, {0, -1, 1, 0}}));
  CHECK(ub_blocks[1] == QMatrix::from_rows({{0, 0, 2, 0}, {0, 0, 0, 1}, {0, -1, 1, 1}, {0, 2, 0, 1}}));
  const auto ub_rep = build_special(ub);
  CHECK(ub_rep.matrices[0] == matrix_from_text(kUnborderedA0));
  CHECK(ub_rep.matrices[1] == matrix_from_text(kUnborderedA1));
  CHECK(ub_rep.validity_offset == 3);

  auto general_shape = catalog_entry("stern").definition;
  CHECK_THROWS_AS(build_special(general_shape), Error);
}

TEST_CASE("offset correction of the unbordered representation") {
  const auto& def = catalog_entry("unbordered").definition;
  const SequenceOracle oracle(def);
  const auto rep = correct_offset(build_special(def), oracle);
  REQUIRE(rep.dim() == 10);
  CHECK(rep.validity_offset == 0);
  CHECK(block(rep.matrices[0], 0, 7, 7, 3) == matrix_from_text(kUnborderedW0));
  CHECK(block(rep.matrices[1], 0, 7, 7, 3) == matrix_from_text(kUnborderedW1));
  CHECK(block(rep.matrices[0], 7, 7, 3, 3) == QMatrix::from_rows({{1, 0, 0}, {0, 0, 0}, {0, 1, 0}}));
  CHECK(block(rep.matrices[1], 7, 7, 3, 3) == QMatrix::from_rows({{0, 0, 0}, {1, 0, 0}, {0, 0, 0}}));
  CHECK(block(rep.matrices[0], 7, 0, 3, 7).is_zero());
  for (std::int64_t n = 0; n <= 3000; ++n) REQUIRE(rep_eval(rep, n) == oracle.eval(n));
}

TEST_CASE("offset correction leaves offset-free representations alone") {
  const auto& def = catalog_entry("stern").definition;
  const auto rep = build_general(def);
  const auto same = correct_offset(rep, SequenceOracle(def));
  CHECK(same.matrices == rep.matrices);
  CHECK(same.v0 == rep.v0);
}

TEST_CASE("largest power of two via offset correction") {
  const auto& def = catalog_entry("h_power").definition;
  const auto rep = catalog_representation(catalog_entry("h_power"));
  for (std::int64_t n = 1; n <= 10000; ++n) REQUIRE(rep_eval(rep, n) == std::bit_floor(static_cast<std::uint64_t>(n)));
  CHECK(rep_check(rep, SequenceOracle(def), 2000).ok);
}

TEST_CASE("dimension formula, bounds assertions and oracle equivalence on random definitions") {
  for (int trial = 0; trial < 120; ++trial) {
    const int q = static_cast<int>(uniform(2, 4));
    const int M = static_cast<int>(uniform(1, q == 2 ? 4 : 3));
    const int m = static_cast<int>(uniform(0, M - 1));
    const auto ell = uniform(-6, 6);
    const auto u = uniform(ell, 6);
    CAPTURE(q);
    CAPTURE(M);
    CAPTURE(m);
    CAPTURE(ell);
    CAPTURE(u);
    const auto def = random_definition(q, M, m, ell, u);
    const auto rep = build_general(def);
    CHECK(static_cast<std::int64_t>(rep.dim()) == closed_dimension(def));
    CHECK(rep.dim() == general_dimension(def));
    CHECK(rep.validity_offset == general_offset(def));
    if (trial % 4 == 0) {
      const SequenceOracle oracle(def);
      const auto fixed = correct_offset(rep, oracle);
      CHECK(rep_check(fixed, oracle, 150).ok);
      for (std::int64_t n = 0; n < 300; ++n) REQUIRE(rep_eval(fixed, n) == oracle.eval(n));
    }
  }
}

TEST_CASE("special construction saves (q^{m+1} - q)/(q - 1) dimensions") {
  for (int trial = 0; trial < 40; ++trial) {
    const int q = static_cast<int>(uniform(2, 3));
    const int m = static_cast<int>(uniform(0, 2));
    const auto def = random_definition(q, m + 1, m, 0, ipow(q, m) - 1);
    const auto special = build_special(def);
    const auto general = build_general(def);
    CHECK(special.dim() + static_cast<std::size_t>((ipow(q, m + 1) - q) / (q - 1)) == general.dim());
    const SequenceOracle oracle(def);
    CHECK(rep_check(correct_offset(special, oracle), oracle, 100).ok);
  }
}

TEST_CASE("offset correction blocks have the expected triangular structure") {
  for (const auto& entry : catalog()) {
    const auto raw = catalog_raw_representation(entry);
    const auto n0 = static_cast<std::size_t>(raw.validity_offset);
    if (n0 == 0) continue;
    const auto rep = catalog_representation(entry);
    for (int r = 0; r < rep.q; ++r) {
      const auto j = block(rep.matrices[static_cast<std::size_t>(r)], raw.dim(), raw.dim(), n0, n0);
      for (std::size_t k = 0; k < n0; ++k) {
        for (std::size_t c = k + 1; c < n0; ++c) CHECK(j(k, c) == 0);
        CHECK(j(k, k) == (r == 0 && k == 0 ? 1 : 0));
      }
    }
  }
}

TEST_CASE("shifted representations") {
  const auto stern = catalog_representation(catalog_entry("stern"));
  const auto shifted = shift_representation(stern, 1);
  const std::vector<long> expected{1, 1, 2, 1, 3, 2, 3};
  for (std::size_t n = 0; n < expected.size(); ++n) CHECK(rep_eval(shifted, static_cast<std::int64_t>(n)) == expected[n]);
  const auto same = shift_representation(stern, 0);
  for (std::int64_t n = 0; n < 200; ++n) CHECK(rep_eval(same, n) == rep_eval(stern, n));
  const auto& pz = catalog_entry("pascal_z");
  const auto z3 = shift_representation(catalog_representation(pz), 3);
  const SequenceOracle oracle(pz.definition);
  CHECK(rep_eval(z3, 500) == oracle.eval(503));
  for (std::int64_t n = 0; n < 300; ++n) CHECK(rep_eval(z3, n) == oracle.eval(n + 3));
  CHECK_THROWS_AS(shift_representation(stern, -1), Error);
}

TEST_CASE("inhomogeneous construction: binary sum of digits") {
  QRecursiveDefinition def;
  def.q = 2;
  def.M = 1;
  def.m = 0;
  def.ell = 0;
  def.u = 0;
  def.reset_coeffs();
  def.set_coeff(0, 0, 1);
  def.set_coeff(1, 0, 1);
  def.initial_values = {0, 1};
  LinearRepresentation one;
  one.q = 2;
  one.matrices = {QMatrix::from_rows({{1}}), QMatrix::from_rows({{1}})};
  one.v0 = {1};
  one.selection = {1};
  one.labels = {ExternalLabel{"one", 0, 0}};
  const auto rep = build_inhomogeneous(def, {std::nullopt, one});
  const auto intro = sum_of_digits_intro();
  for (std::int64_t n = 0; n <= 4000; ++n) {
    REQUIRE(rep_eval(rep, n) == std::popcount(static_cast<std::uint64_t>(n)));
    REQUIRE(rep_eval(intro, n) == std::popcount(static_cast<std::uint64_t>(n)));
  }
  def.initial_values = {0, 0};
  const auto plain = build_inhomogeneous(def, {std::nullopt, std::nullopt});
  for (std::int64_t n = 0; n < 200; ++n) CHECK(rep_eval(plain, n) == 0);
}

TEST_CASE("inhomogeneous construction: x(2n) = x(n) + n, x(2n+1) = x(n)") {
  QRecursiveDefinition def;
  def.q = 2;
  def.M = 1;
  def.m = 0;
  def.ell = 0;
  def.u = 0;
  def.reset_coeffs();
  def.set_coeff(0, 0, 1);
  def.set_coeff(1, 0, 1);
  def.initial_values = {0, 0};
  LinearRepresentation identity;
  identity.q = 2;
  // (n, 1): (2n, 1) and (2n + 1, 1).
  identity.matrices = {QMatrix::from_rows({{2, 0}, {0, 1}}), QMatrix::from_rows({{2, 1}, {0, 1}})};
  identity.v0 = {0, 1};
  identity.selection = {1, 0};
  identity.labels = {ExternalLabel{"id", 0, 0}, ExternalLabel{"id", 0, 1}};
  const auto rep = build_inhomogeneous(def, {identity, std::nullopt});
  std::vector<std::int64_t> direct(1001, 0);
  for (std::int64_t n = 1; n <= 1000; ++n) direct[static_cast<std::size_t>(n)] = n % 2 == 0 ? direct[static_cast<std::size_t>(n / 2)] + n / 2 : direct[static_cast<std::size_t>(n / 2)];
  for (std::int64_t n = 0; n <= 1000; ++n) REQUIRE(rep_eval(rep, n) == direct[static_cast<std::size_t>(n)]);
}

TEST_CASE("oracle equivalence for every catalog entry") {
  for (const auto& entry : catalog()) {
    CAPTURE(entry.name);
    const SequenceOracle oracle(entry.definition);
    const auto rep = catalog_representation(entry);
    CHECK(rep_check(rep, oracle, 5000).ok);
    if (entry.special) CHECK(rep_check(correct_offset(build_general(entry.definition), oracle), oracle, 2000).ok);
  }
}
