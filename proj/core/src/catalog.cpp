#include "qrec/catalog.hpp"

#include <algorithm>
#include <bit>
#include <regex>
#include <unordered_set>

#include "qrec/builder.hpp"
#include "qrec/error.hpp"
#include "qrec/oracle.hpp"

namespace qrec {

namespace {

QRecursiveDefinition make_definition(int q, int M, int m, std::int64_t ell, std::int64_t u, std::int64_t offset,
                                     const std::vector<std::vector<Rational>>& rows, QVector initial,
                                     std::vector<std::int64_t> row_starts = {}) {
  QRecursiveDefinition def;
  def.q = q;
  def.M = M;
  def.m = m;
  def.ell = ell;
  def.u = u;
  def.offset = offset;
  def.reset_coeffs();
  for (std::size_t s = 0; s < rows.size(); ++s)
    for (std::size_t k = 0; k < rows[s].size(); ++k)
      def.set_coeff(static_cast<std::int64_t>(s), ell + static_cast<std::int64_t>(k), rows[s][k]);
  def.initial_values = std::move(initial);
  def.row_starts = std::move(row_starts);
  return validate_definition(def);
}

QVector integers(std::initializer_list<long> values) {
  QVector out;
  for (const long v : values) out.emplace_back(v);
  return out;
}

JsrOptions jsr_hint(int k, NormKind norm, std::optional<QMatrix> scaling = std::nullopt) {
  JsrOptions opt;
  opt.k_max = k;
  opt.norm = norm;
  opt.scaling = std::move(scaling);
  return opt;
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> out;
  const double log2 = std::log(2.0);
  const double phi = (1 + std::sqrt(5.0)) / 2;

  {
    CatalogEntry e;
    e.name = "stern";
    e.description = "Stern's diatomic sequence d";
    e.definition = make_definition(2, 1, 0, 0, 1, 0, {{1, 0}, {1, 1}}, integers({0, 1}));
    e.independent_oracle = [](std::int64_t n) { return Rational(n == 0 ? 0 : stern_hyperbinary(n - 1)); };
    e.oracle_horizon = 10000;
    e.jsr_hint = jsr_hint(2, NormKind::Spectral);
    e.constants = {{"kappa", std::log(3.0) / log2}, {"minimal_dimension", 2}, {"jsr", phi},
                   {"phi0", 0.5129922721107177789989881697483}};
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "pascal_odd";
    e.description = "odd entries in the first n rows of Pascal's triangle, p";
    e.definition = make_definition(2, 1, 0, 0, 1, 0, {{3, 0}, {2, 1}}, integers({0, 1}));
    e.independent_oracle = [](std::int64_t n) {
      // Row j has 2^popcount(j) odd entries.
      std::int64_t total = 0;
      for (std::int64_t j = 0; j < n; ++j) total += std::int64_t{1} << std::popcount(static_cast<std::uint64_t>(j));
      return Rational(total);
    };
    e.oracle_horizon = 2000;
    e.jsr_hint = jsr_hint(2, NormKind::Spectral);
    e.constants = {{"kappa", std::log(3.0) / log2}};
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "pascal_z";
    e.description = "non-zero entries z in the rows of the generalized Pascal triangle of binary words";
    const Rational t(1, 3);
    e.definition = make_definition(2, 2, 1, 0, 1, 0, {{5 * t, -t}, {4 * t, t}, {t, 4 * t}, {-t, 5 * t}},
                                   integers({1, 2, 3, 3}));
    e.independent_oracle = [](std::int64_t n) { return Rational(pascal_z_oracle(n)); };
    e.oracle_horizon = 1000;
    e.special = true;
    // T^{-1} B_r T are the reduced Stern matrices.
    e.jsr_hint = jsr_hint(2, NormKind::Spectral, QMatrix::from_rows({{2, 1}, {1, 2}}));
    e.eta = 1;
    e.constants = {{"kappa", std::log(3.0) / log2}, {"minimal_dimension", 2}, {"jsr", phi},
                   {"phi0", 2 * 0.5129922721107177789989881697483}};
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "unbordered";
    e.description = "unbordered factors f of length n of the Thue-Morse word";
    e.definition = make_definition(
        2, 3, 2, 0, 3, 3,
        {{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 1, 0, 1}, {0, -1, 1, 0}, {0, 0, 2, 0}, {0, 0, 0, 1}, {0, -1, 1, 1}, {0, 2, 0, 1}},
        // f(16..22) = 8, 4, 8, 0, 8, 4, 4 from tm_unbordered_oracle.
        integers({1, 2, 2, 4, 2, 4, 6, 0, 4, 4, 4, 4, 12, 0, 4, 4, 8, 4, 8, 0, 8, 4, 4, 8}),
        // Each relation holds from its own start; the offset is the largest.
        {1, 0, 1, 2, 1, 0, 2, 3});
    e.independent_oracle = [](std::int64_t n) { return Rational(tm_unbordered_oracle(n)); };
    e.oracle_horizon = 300;
    e.special = true;
    e.jsr_hint = jsr_hint(2, NormKind::RowSum,
                          QMatrix::from_rows({{2, 0, 0, 0}, {0, Rational(1, 2), 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
    e.eta = 3;
    e.constants = {{"kappa", std::log(1 + std::sqrt(3.0)) / log2}, {"minimal_dimension", 8}, {"jsr", 2},
                   {"phi0", 1.081200224751780}};
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "h_power";
    e.description = "largest power of two h(n) <= n";
    e.definition = make_definition(2, 1, 0, 0, 0, 1, {{2}, {2}}, integers({0, 1}));
    e.independent_oracle = [](std::int64_t n) { return Rational(largest_power_of_two(n)); };
    e.oracle_horizon = 10000;
    e.special = true;
    e.jsr_hint = jsr_hint(1, NormKind::Spectral);
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "sum_of_digits";
    e.description = "binary sum of digits s, homogeneous form with M = 2, m = 1";
    e.definition = make_definition(2, 2, 1, 0, 1, 0, {{1, 0}, {0, 1}, {0, 1}, {-1, 2}}, integers({0, 1, 1, 2}));
    e.independent_oracle = [](std::int64_t n) { return Rational(std::popcount(static_cast<std::uint64_t>(n))); };
    e.oracle_horizon = 10000;
    e.special = true;
    e.jsr_hint = jsr_hint(2, NormKind::Spectral);
    e.constants = {{"minimal_dimension", 2}};
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "artificial_general";
    e.description = "q = 2, M = 3, m = 1 with c(s, k) = (-1)^[k < 0] 10 s + k";
    std::vector<std::vector<Rational>> rows;
    for (int s = 0; s < 8; ++s) rows.push_back({-10 * s - 1, 10 * s, 10 * s + 1});
    e.definition = make_definition(2, 3, 1, -1, 1, 1, rows, integers({1, 2, 3, 4, 5, 6, 7, 8}));
    e.jsr_hint = jsr_hint(2, NormKind::Spectral);
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "artificial_special";
    e.description = "q = 2, M = 3, m = 2 with B_0 all ones and B_1 all twos";
    std::vector<std::vector<Rational>> rows;
    for (int s = 0; s < 8; ++s) rows.push_back(std::vector<Rational>(4, s < 4 ? 1 : 2));
    e.definition = make_definition(2, 3, 2, 0, 3, 1, rows, integers({1, 2, 3, 4, 5, 6, 7, 8}));
    e.special = true;
    e.jsr_hint = jsr_hint(2, NormKind::Spectral);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw Error(ErrorCode::UnknownCatalogEntry, name);
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& e : catalog()) names.push_back(e.name);
  return names;
}

LinearRepresentation catalog_raw_representation(const CatalogEntry& entry) {
  return entry.special ? build_special(entry.definition) : build_general(entry.definition);
}

LinearRepresentation catalog_representation(const CatalogEntry& entry) {
  const SequenceOracle oracle(entry.definition);
  return correct_offset(catalog_raw_representation(entry), oracle);
}

LinearRepresentation sum_of_digits_intro() {
  LinearRepresentation rep;
  rep.q = 2;
  rep.matrices = {QMatrix::from_rows({{1, 0}, {0, 1}}), QMatrix::from_rows({{1, 1}, {0, 1}})};
  rep.v0 = {0, 1};
  rep.selection = {1, 0};
  rep.labels = {ExternalLabel{"s", 0, 0}, ExternalLabel{"one", 0, 0}};
  return rep;
}

LinearRepresentation stern_reduced() {
  LinearRepresentation rep;
  rep.q = 2;
  rep.matrices = {QMatrix::from_rows({{1, 0}, {1, 1}}), QMatrix::from_rows({{1, 1}, {0, 1}})};
  rep.v0 = {0, 1};
  rep.selection = {1, 0};
  rep.labels = {SubsequenceLabel{0, 0}, ExternalLabel{"d", 1, 0}};
  return rep;
}

std::vector<QMatrix> catalog_jsr_matrices(const CatalogEntry& entry) {
  if (entry.name == "stern") return stern_reduced().matrices;
  if (entry.special) return special_blocks(entry.definition);
  return build_general(entry.definition).matrices;
}

std::int64_t stern_hyperbinary(std::int64_t n) {
  // Reading n from the top bit, keep (h(v), h(v - 1)) for the prefix value v.
  // The last digit of 2v + 1 must be 1; 2v ends in 0 or in 2 after 2(v - 1).
  std::int64_t a = 1, b = 0;
  for (int i = 62; i >= 0; --i) {
    if ((n >> i) == 0) continue;
    if ((n >> i) & 1) {
      b = a + b;
    } else {
      a = a + b;
    }
  }
  return a;
}

std::int64_t word_binomial(const std::string& u, const std::string& v) {
  std::vector<std::int64_t> count(v.size() + 1, 0);
  count[0] = 1;
  for (const char c : u)
    for (std::size_t j = v.size(); j >= 1; --j)
      if (v[j - 1] == c) count[j] += count[j - 1];
  return count[v.size()];
}

std::string binary_word(std::int64_t n) {
  std::string out;
  for (; n > 0; n >>= 1) out.push_back(static_cast<char>('0' + (n & 1)));
  std::reverse(out.begin(), out.end());
  return out;
}

std::int64_t pascal_z_oracle(std::int64_t n) {
  const auto word = binary_word(n);
  std::int64_t count = 0;
  for (std::int64_t k = 0; k <= n; ++k) {
    const auto sub = binary_word(k);
    // Existence of one embedding suffices; the greedy scan decides it.
    std::size_t j = 0;
    for (std::size_t i = 0; i < word.size() && j < sub.size(); ++i)
      if (word[i] == sub[j]) ++j;
    if (j == sub.size()) ++count;
  }
  return count;
}

namespace {

constexpr std::uint64_t kHashMod = (std::uint64_t{1} << 61) - 1;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(p & kHashMod) + static_cast<std::uint64_t>(p >> 61);
  if (r >= kHashMod) r -= kHashMod;
  return r;
}

class PrefixHash {
 public:
  explicit PrefixHash(const std::string& s) : h_(s.size() + 1, 0), p_(s.size() + 1, 1) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      h_[i + 1] = (mul_mod(h_[i], kBase) + static_cast<std::uint64_t>(s[i] - '0' + 1)) % kHashMod;
      p_[i + 1] = mul_mod(p_[i], kBase);
    }
  }
  std::uint64_t get(std::size_t pos, std::size_t len) const {
    return (h_[pos + len] + kHashMod - mul_mod(h_[pos], p_[len])) % kHashMod;
  }

 private:
  static constexpr std::uint64_t kBase = 1000003;
  std::vector<std::uint64_t> h_, p_;
};

std::string thue_morse(std::int64_t len) {
  std::string t(static_cast<std::size_t>(len), '0');
  for (std::int64_t i = 0; i < len; ++i)
    t[static_cast<std::size_t>(i)] = static_cast<char>('0' + (std::popcount(static_cast<std::uint64_t>(i)) & 1));
  return t;
}

// Distinct length-n factors of t (by first occurrence) and how many are unbordered.
std::pair<std::int64_t, std::int64_t> factor_counts(const std::string& t, std::int64_t n) {
  const auto len = static_cast<std::size_t>(n);
  if (len == 0) return {1, 1};
  const PrefixHash hash(t);
  std::unordered_set<std::uint64_t> seen;
  std::int64_t unbordered = 0;
  for (std::size_t i = 0; i + len <= t.size(); ++i) {
    if (!seen.insert(hash.get(i, len)).second) continue;
    bool bordered = false;
    for (std::size_t b = 1; b <= len / 2 && !bordered; ++b)
      bordered = hash.get(i, b) == hash.get(i + len - b, b) && t.compare(i, b, t, i + len - b, b) == 0;
    if (!bordered) ++unbordered;
  }
  return {static_cast<std::int64_t>(seen.size()), unbordered};
}

}  // namespace

std::int64_t tm_unbordered_oracle(std::int64_t n, std::int64_t prefix_len) {
  if (n < 0) throw Error(ErrorCode::IndexRangeViolation, "negative factor length");
  constexpr std::int64_t kBudget = std::int64_t{1} << 26;
  const auto exhausted = [n] {
    return Error(ErrorCode::PrefixInsufficient, "factor set of length " + std::to_string(n) + " did not stabilize");
  };
  std::int64_t len = std::max<std::int64_t>(prefix_len, 8 * std::max<std::int64_t>(n, 1));
  if (len > kBudget) throw exhausted();
  auto last = factor_counts(thue_morse(len), n);
  int stable = 0;
  while (stable < 2) {
    len *= 2;
    if (len > kBudget) throw exhausted();
    const auto next = factor_counts(thue_morse(len), n);
    stable = next == last ? stable + 1 : 0;
    last = next;
  }
  return last.second;
}

bool tm_unbordered_is_zero(std::int64_t n) {
  static const std::regex pattern("1(01*0)*10*1");
  return std::regex_match(binary_word(n), pattern);
}

std::int64_t largest_power_of_two(std::int64_t n) {
  return n <= 0 ? 0 : static_cast<std::int64_t>(std::bit_floor(static_cast<std::uint64_t>(n)));
}

}  // namespace qrec
