#pragma once

#include <sstream>
#include <string>

#include "qrec/rational.hpp"

namespace qrec::testing {

// Whitespace-separated rationals, one matrix row per line.
inline QMatrix matrix_from_text(const std::string& text) {
  std::vector<std::vector<Rational>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream tokens(line);
    std::string token;
    std::vector<Rational> row;
    while (tokens >> token) row.push_back(parse_rational(token));
    if (!row.empty()) rows.push_back(row);
  }
  return QMatrix::from_rows(rows);
}

inline const char* const kArtificialA0 = R"(
0 0 0 0 1 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0
0 -51 50 51 0 0 0 0 0 0 0 0 0 0 0 0 0
0 -61 60 61 0 0 0 0 0 0 0 0 0 0 0 0 0
0 -71 70 71 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 -1 0 1 0 0 0 0 0 0 0 0 0 0 0
0 0 0 -11 10 11 0 0 0 0 0 0 0 0 0 0 0
0 0 0 -21 20 21 0 0 0 0 0 0 0 0 0 0 0
0 0 0 -31 30 31 0 0 0 0 0 0 0 0 0 0 0
0 0 0 -41 40 41 0 0 0 0 0 0 0 0 0 0 0
0 0 0 -51 50 51 0 0 0 0 0 0 0 0 0 0 0
)";

inline const char* const kArtificialA1 = R"(
0 0 0 0 0 1 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1
0 0 0 -11 10 11 0 0 0 0 0 0 0 0 0 0 0
0 0 0 -21 20 21 0 0 0 0 0 0 0 0 0 0 0
0 0 0 -31 30 31 0 0 0 0 0 0 0 0 0 0 0
0 0 0 -41 40 41 0 0 0 0 0 0 0 0 0 0 0
0 0 0 -51 50 51 0 0 0 0 0 0 0 0 0 0 0
0 0 0 -61 60 61 0 0 0 0 0 0 0 0 0 0 0
0 0 0 -71 70 71 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 -1 0 1 0 0 0 0 0 0 0 0 0
0 0 0 0 0 -11 10 11 0 0 0 0 0 0 0 0 0
)";

inline const char* const kSpecialArtificialA0 = R"(
0 1 0 0 0 0 0
0 0 0 1 0 0 0
0 0 0 0 1 0 0
0 0 0 1 1 1 1
0 0 0 1 1 1 1
0 0 0 1 1 1 1
0 0 0 1 1 1 1
)";

inline const char* const kSpecialArtificialA1 = R"(
0 0 1 0 0 0 0
0 0 0 0 0 1 0
0 0 0 0 0 0 1
0 0 0 2 2 2 2
0 0 0 2 2 2 2
0 0 0 2 2 2 2
0 0 0 2 2 2 2
)";

inline const char* const kUnborderedA0 = R"(
0 1 0 0 0 0 0
0 0 0 1 0 0 0
0 0 0 0 1 0 0
0 0 0 2 0 0 0
0 0 0 0 1 0 0
0 0 0 0 1 0 1
0 0 0 0 -1 1 0
)";

inline const char* const kUnborderedA1 = R"(
0 0 1 0 0 0 0
0 0 0 0 0 1 0
0 0 0 0 0 0 1
0 0 0 0 0 2 0
0 0 0 0 0 0 1
0 0 0 0 -1 1 1
0 0 0 0 2 0 1
)";

inline const char* const kUnborderedW0 = R"(
0 0 0
0 0 0
0 0 0
-1 0 0
0 0 0
-4 0 0
4 2 0
)";

inline const char* const kUnborderedW1 = R"(
0 0 0
0 0 0
0 0 0
-2 0 0
0 0 0
2 2 0
-8 -4 -4
)";

inline QMatrix block(const QMatrix& m, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
  QMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = m(r0 + i, c0 + j);
  return out;
}

}  // namespace qrec::testing
