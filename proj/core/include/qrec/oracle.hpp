#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "qrec/definition.hpp"

namespace qrec {

using IndexFunction = std::function<Rational(std::int64_t)>;

// Memoized evaluator of a q-recursive definition, optionally with additive
// inhomogeneities g_s (x(q^M n + s) = ... + g_s(n)).
class SequenceOracle {
 public:
  struct Unchecked {};

  explicit SequenceOracle(QRecursiveDefinition def);
  SequenceOracle(QRecursiveDefinition def, std::vector<IndexFunction> inhomogeneities);
  SequenceOracle(QRecursiveDefinition def, Unchecked);
  SequenceOracle(QRecursiveDefinition def, std::vector<IndexFunction> inhomogeneities, Unchecked);

  SequenceOracle(const SequenceOracle& other);
  SequenceOracle& operator=(const SequenceOracle&) = delete;

  const QRecursiveDefinition& definition() const { return def_; }

  // x(n), with x(n) = 0 for n < 0.
  Rational eval(std::int64_t n) const;
  // X(N) = sum_{0 <= n < N} x(n).
  Rational summatory(std::int64_t N) const;
  // X(0), ..., X(N).
  std::vector<Rational> prefix_sums(std::int64_t N) const;

  void clear_memo() const;
  // Plain recursion without the memo table.
  Rational eval_uncached(std::int64_t n) const;

 private:
  Rational compute(std::int64_t n, bool use_memo) const;

  QRecursiveDefinition def_;
  std::vector<IndexFunction> inhomogeneities_;
  std::int64_t q_pow_M_ = 1;
  std::int64_t q_pow_m_ = 1;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::int64_t, Rational> memo_;
};

// validate_definition for a definition carrying inhomogeneities.
const QRecursiveDefinition& validate_definition(const QRecursiveDefinition& def,
                                                const std::vector<IndexFunction>& inhomogeneities);

}  // namespace qrec
