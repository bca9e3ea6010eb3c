#include "qrec/definition.hpp"

#include <fstream>
#include <sstream>

#include "qrec/error.hpp"
#include "qrec/oracle.hpp"

namespace qrec {

std::int64_t ipow(std::int64_t base, int exponent) {
  std::int64_t result = 1;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::int64_t QRecursiveDefinition::row_start(std::int64_t s) const {
  if (row_starts.empty()) return offset;
  return row_starts.at(static_cast<std::size_t>(s));
}

const Rational& QRecursiveDefinition::coeff(std::int64_t s, std::int64_t k) const {
  const auto& entry = coeffs.at(static_cast<std::size_t>(s * width() + (k - ell)));
  if (!entry) {
    throw Error(ErrorCode::MissingCoefficient,
                "c(" + std::to_string(s) + "," + std::to_string(k) + ") is not set");
  }
  return *entry;
}

void QRecursiveDefinition::set_coeff(std::int64_t s, std::int64_t k, const Rational& value) {
  if (s < 0 || s >= rows() || k < ell || k > u) {
    throw Error(ErrorCode::ParseError,
                "coefficient index (" + std::to_string(s) + "," + std::to_string(k) + ") out of range");
  }
  coeffs[static_cast<std::size_t>(s * width() + (k - ell))] = value;
}

void QRecursiveDefinition::reset_coeffs() {
  coeffs.assign(static_cast<std::size_t>(rows() * width()), std::nullopt);
}

const QRecursiveDefinition& validate_definition(const QRecursiveDefinition& def) {
  return validate_definition(def, {});
}

const QRecursiveDefinition& validate_definition(const QRecursiveDefinition& def,
                                                const std::vector<IndexFunction>& inhomogeneities) {
  if (def.q < 2) throw Error(ErrorCode::ParseError, "q must be at least 2");
  if (def.m < 0 || def.M <= def.m) throw Error(ErrorCode::ParseError, "need M > m >= 0");
  if (def.ell > def.u) throw Error(ErrorCode::ParseError, "need l <= u");
  if (def.offset < 0 || ipow(def.q, def.m) * def.offset + def.ell < 0) {
    throw Error(ErrorCode::OffsetTooSmall,
                "offset " + std::to_string(def.offset) + " violates q^m n0 + l >= 0");
  }
  if (def.coeffs.size() != static_cast<std::size_t>(def.rows() * def.width()))
    throw Error(ErrorCode::MissingCoefficient, "coefficient table has the wrong shape");
  for (std::size_t i = 0; i < def.coeffs.size(); ++i) {
    if (!def.coeffs[i]) {
      const auto s = static_cast<std::int64_t>(i) / def.width();
      const auto k = static_cast<std::int64_t>(i) % def.width() + def.ell;
      throw Error(ErrorCode::MissingCoefficient,
                  "c(" + std::to_string(s) + "," + std::to_string(k) + ") is not set");
    }
  }
  if (static_cast<std::int64_t>(def.initial_values.size()) != def.initial_span()) {
    throw Error(ErrorCode::ParseError, "expected " + std::to_string(def.initial_span()) +
                                           " initial values, got " +
                                           std::to_string(def.initial_values.size()));
  }
  if (!def.row_starts.empty()) {
    if (static_cast<std::int64_t>(def.row_starts.size()) != def.rows())
      throw Error(ErrorCode::ParseError, "starts needs one entry per row");
    for (std::int64_t s = 0; s < def.rows(); ++s) {
      const auto start = def.row_start(s);
      if (start > def.offset || ipow(def.q, def.m) * start + def.ell < 0)
        throw Error(ErrorCode::OffsetTooSmall, "row start " + std::to_string(start) + " out of range");
    }
  }
  // Arguments on the right must stay below the left-hand index beyond the
  // initial block, otherwise evaluation would not terminate.
  const auto first = std::max<std::int64_t>(def.offset, 1);
  const auto gap = (def.rows() - ipow(def.q, def.m)) * first;
  for (std::int64_t s = 0; s < def.rows(); ++s)
    for (std::int64_t k = def.ell; k <= def.u; ++k)
      if (def.coeff(s, k) != 0 && gap + s <= k) {
        throw Error(ErrorCode::IllFoundedRecurrence, "row " + std::to_string(s) + " refers to index shift " +
                                                         std::to_string(k) + " that does not decrease");
      }

  SequenceOracle oracle(def, inhomogeneities, SequenceOracle::Unchecked{});
  for (std::int64_t index = 0; index < def.initial_span(); ++index) {
    const auto n = floor_div(index, def.rows());
    const auto s = index - n * def.rows();
    if (n < def.row_start(s)) continue;
    Rational rhs = 0;
    for (auto k = def.ell; k <= def.u; ++k) {
      const auto arg = ipow(def.q, def.m) * n + k;
      rhs += def.coeff(s, k) * oracle.eval(arg);
    }
    if (!inhomogeneities.empty() && inhomogeneities[static_cast<std::size_t>(s)])
      rhs += inhomogeneities[static_cast<std::size_t>(s)](n);
    if (rhs != def.initial_values[static_cast<std::size_t>(index)]) {
      throw Error(ErrorCode::InconsistentInitialValues,
                  "x(" + std::to_string(index) + ") = " + to_string(def.initial_values[static_cast<std::size_t>(index)]) +
                      " but the recurrence gives " + to_string(rhs));
    }
  }
  return def;
}

namespace {

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::int64_t parse_int(const std::string& token) {
  try {
    std::size_t used = 0;
    const auto value = std::stoll(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "not an integer: '" + token + "'");
  }
}

}  // namespace

QRecursiveDefinition parse_definition(const std::string& text) {
  QRecursiveDefinition def;
  std::istringstream in(text);
  std::string line;
  struct Row {
    std::int64_t s, k;
    Rational value;
  };
  std::vector<Row> rows;
  bool in_table = false;
  bool seen_q = false, seen_M = false, seen_m = false, seen_l = false, seen_u = false;
  while (std::getline(in, line)) {
    std::istringstream words(strip_comment(line));
    std::vector<std::string> tokens;
    for (std::string t; words >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (in_table) {
      if (tokens[0] == "end") {
        in_table = false;
        continue;
      }
      if (tokens.size() != 3) throw Error(ErrorCode::ParseError, "coefficient rows need 's k value'");
      rows.push_back({parse_int(tokens[0]), parse_int(tokens[1]), parse_rational(tokens[2])});
      continue;
    }
    const auto& key = tokens[0];
    auto single = [&]() {
      if (tokens.size() != 2) throw Error(ErrorCode::ParseError, "field '" + key + "' takes one value");
      return parse_int(tokens[1]);
    };
    if (key == "q") { def.q = static_cast<int>(single()); seen_q = true; }
    else if (key == "M") { def.M = static_cast<int>(single()); seen_M = true; }
    else if (key == "m") { def.m = static_cast<int>(single()); seen_m = true; }
    else if (key == "l") { def.ell = single(); seen_l = true; }
    else if (key == "u") { def.u = single(); seen_u = true; }
    else if (key == "offset") def.offset = single();
    else if (key == "coefficients") in_table = true;
    else if (key == "initial") {
      for (std::size_t i = 1; i < tokens.size(); ++i) def.initial_values.push_back(parse_rational(tokens[i]));
    } else if (key == "starts") {
      for (std::size_t i = 1; i < tokens.size(); ++i) def.row_starts.push_back(parse_int(tokens[i]));
    } else {
      throw Error(ErrorCode::ParseError, "unknown field '" + key + "'");
    }
  }
  if (in_table) throw Error(ErrorCode::ParseError, "coefficients table lacks 'end'");
  if (!(seen_q && seen_M && seen_m && seen_l && seen_u))
    throw Error(ErrorCode::ParseError, "fields q, M, m, l, u are required");
  if (def.q < 2 || def.M < 1 || def.M > 12 || def.m < 0 || def.ell > def.u)
    throw Error(ErrorCode::ParseError, "parameters out of range");
  def.reset_coeffs();
  for (const auto& row : rows) def.set_coeff(row.s, row.k, row.value);
  return def;
}

QRecursiveDefinition load_definition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_definition(buffer.str());
}

std::string format_definition(const QRecursiveDefinition& def) {
  std::ostringstream out;
  out << "q " << def.q << "\nM " << def.M << "\nm " << def.m << "\nl " << def.ell << "\nu " << def.u
      << "\noffset " << def.offset << "\ncoefficients\n";
  for (std::int64_t s = 0; s < def.rows(); ++s)
    for (auto k = def.ell; k <= def.u; ++k) {
      const auto& entry = def.coeffs[static_cast<std::size_t>(s * def.width() + (k - def.ell))];
      if (entry) out << s << ' ' << k << ' ' << entry->get_str() << '\n';
    }
  out << "end\ninitial";
  for (const auto& v : def.initial_values) out << ' ' << v.get_str();
  out << '\n';
  if (!def.row_starts.empty()) {
    out << "starts";
    for (auto s : def.row_starts) out << ' ' << s;
    out << '\n';
  }
  return out.str();
}

}  // namespace qrec
