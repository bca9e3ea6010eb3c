#include "qrec/oracle.hpp"

#include "qrec/error.hpp"

namespace qrec {

SequenceOracle::SequenceOracle(QRecursiveDefinition def, Unchecked)
    : def_(std::move(def)), q_pow_M_(def_.rows()), q_pow_m_(ipow(def_.q, def_.m)) {}

SequenceOracle::SequenceOracle(QRecursiveDefinition def) : SequenceOracle(std::move(def), Unchecked{}) {
  validate_definition(def_);
}

SequenceOracle::SequenceOracle(QRecursiveDefinition def, std::vector<IndexFunction> inhomogeneities, Unchecked)
    : SequenceOracle(std::move(def), Unchecked{}) {
  if (!inhomogeneities.empty() && static_cast<std::int64_t>(inhomogeneities.size()) != q_pow_M_)
    throw Error(ErrorCode::DimensionMismatch, "need one inhomogeneity slot per row");
  inhomogeneities_ = std::move(inhomogeneities);
}

SequenceOracle::SequenceOracle(QRecursiveDefinition def, std::vector<IndexFunction> inhomogeneities)
    : SequenceOracle(std::move(def), std::move(inhomogeneities), Unchecked{}) {
  validate_definition(def_, inhomogeneities_);
}

SequenceOracle::SequenceOracle(const SequenceOracle& other)
    : def_(other.def_),
      inhomogeneities_(other.inhomogeneities_),
      q_pow_M_(other.q_pow_M_),
      q_pow_m_(other.q_pow_m_) {
  std::lock_guard lock(other.mutex_);
  memo_ = other.memo_;
}

Rational SequenceOracle::eval(std::int64_t n) const { return compute(n, true); }

Rational SequenceOracle::eval_uncached(std::int64_t n) const { return compute(n, false); }

Rational SequenceOracle::compute(std::int64_t n, bool use_memo) const {
  if (n < 0) return 0;
  if (n < def_.initial_span()) return def_.initial_values.at(static_cast<std::size_t>(n));
  if (use_memo) {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(n); it != memo_.end()) return it->second;
  }
  const auto block = n / q_pow_M_;
  const auto s = n % q_pow_M_;
  Rational value = 0;
  for (auto k = def_.ell; k <= def_.u; ++k) {
    const Rational& c = def_.coeff(s, k);
    if (c != 0) value += c * compute(q_pow_m_ * block + k, use_memo);
  }
  if (!inhomogeneities_.empty() && inhomogeneities_[static_cast<std::size_t>(s)])
    value += inhomogeneities_[static_cast<std::size_t>(s)](block);
  if (use_memo) {
    std::lock_guard lock(mutex_);
    memo_.emplace(n, value);
  }
  return value;
}

Rational SequenceOracle::summatory(std::int64_t N) const {
  Rational sum = 0;
  for (std::int64_t n = 0; n < N; ++n) sum += eval(n);
  return sum;
}

std::vector<Rational> SequenceOracle::prefix_sums(std::int64_t N) const {
  std::vector<Rational> sums(static_cast<std::size_t>(std::max<std::int64_t>(N, 0) + 1));
  for (std::int64_t n = 0; n < N; ++n) sums[static_cast<std::size_t>(n + 1)] = sums[static_cast<std::size_t>(n)] + eval(n);
  return sums;
}

void SequenceOracle::clear_memo() const {
  std::lock_guard lock(mutex_);
  memo_.clear();
}

}  // namespace qrec
