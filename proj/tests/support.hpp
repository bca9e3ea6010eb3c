#pragma once

#include <random>
#include <vector>

#include "qrec/rational.hpp"

namespace qrec::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240607);
  return engine;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline Rational small_rational(long bound = 5, long max_den = 3) {
  return Rational(uniform(-bound, bound), uniform(1, max_den));
}

inline QMatrix random_matrix(std::size_t rows, std::size_t cols, long bound = 3, long max_den = 1) {
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = small_rational(bound, max_den);
      m(i, j).canonicalize();
    }
  return m;
}

inline QVector random_vector(std::size_t n, long bound = 3) {
  QVector v(n);
  for (auto& x : v) x = Rational(uniform(-bound, bound));
  return v;
}

}  // namespace qrec::testing
