#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qrec/builder.hpp"
#include "qrec/error.hpp"

namespace qrec {

namespace {

using Symbol = std::pair<int, std::int64_t>;  // (level, residue)

struct Relation {
  std::map<Symbol, Rational> terms;
  std::int64_t start = 0;
};

Relation normalize(const RecurrenceIdentity& identity) {
  Relation rel;
  rel.start = std::max<std::int64_t>(identity.start, 0);
  for (const auto& t : identity.terms) rel.terms[{t.level, t.residue}] += t.coeff;
  std::erase_if(rel.terms, [](const auto& e) { return e.second == 0; });
  return rel;
}

std::string key_of(const Relation& rel) {
  std::ostringstream out;
  for (const auto& [sym, c] : rel.terms) out << sym.first << ':' << sym.second << '=' << c.get_str() << ';';
  return out.str();
}

int max_level(const Relation& rel) {
  int level = 0;
  for (const auto& e : rel.terms) level = std::max(level, e.first.first);
  return level;
}

// Breadth-first substitution n -> q n + r, never exceeding level M.
std::vector<Relation> substitution_closure(const std::vector<RecurrenceIdentity>& identities, int q, int M) {
  std::vector<Relation> out;
  std::map<std::string, std::size_t> seen;
  auto add = [&](Relation rel) {
    if (rel.terms.empty()) return;
    const auto key = key_of(rel);
    if (auto it = seen.find(key); it != seen.end()) {
      out[it->second].start = std::min(out[it->second].start, rel.start);
      return;
    }
    seen.emplace(key, out.size());
    out.push_back(std::move(rel));
  };
  for (const auto& identity : identities) {
    for (const auto& t : identity.terms)
      if (t.level < 0 || t.level > M) throw Error(ErrorCode::ParseError, "identity level outside [0, M]");
    add(normalize(identity));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (max_level(out[i]) >= M) continue;
    for (int r = 0; r < q; ++r) {
      Relation next;
      next.start = std::max<std::int64_t>(ceil_div(out[i].start - r, q), 0);
      for (const auto& [sym, c] : out[i].terms) next.terms[{sym.first + 1, ipow(q, sym.first) * r + sym.second}] += c;
      add(std::move(next));
    }
  }
  return out;
}

}  // namespace

QRecursiveDefinition disentangle(const std::vector<RecurrenceIdentity>& identities, int q, int M, int m,
                                 const QVector& initial_values) {
  if (q < 2 || m < 0 || M <= m) throw Error(ErrorCode::ParseError, "need q >= 2 and M > m >= 0");
  const auto relations = substitution_closure(identities, q, M);
  const auto qM = ipow(q, M);

  // Columns: eliminated symbols, then targets (M, s), then level-m symbols.
  std::set<Symbol> symbols;
  for (const auto& rel : relations)
    for (const auto& e : rel.terms) symbols.insert(e.first);
  for (std::int64_t s = 0; s < qM; ++s) symbols.insert({M, s});
  std::vector<Symbol> order;
  for (const auto& sym : symbols)
    if (sym.first != m && !(sym.first == M && sym.second >= 0 && sym.second < qM)) order.push_back(sym);
  const auto first_target = order.size();
  for (std::int64_t s = 0; s < qM; ++s) order.push_back({M, s});
  const auto first_basis = order.size();
  for (const auto& sym : symbols)
    if (sym.first == m) order.push_back(sym);
  std::map<Symbol, std::size_t> column;
  for (std::size_t i = 0; i < order.size(); ++i) column[order[i]] = i;

  // Augmented with the identity to track which relations each row combines.
  const auto n_rel = relations.size();
  const auto n_sym = order.size();
  QMatrix system(n_rel, n_sym + n_rel);
  for (std::size_t i = 0; i < n_rel; ++i) {
    for (const auto& [sym, c] : relations[i].terms) system(i, column.at(sym)) = c;
    system(i, n_sym + i) = 1;
  }
  rref(system);

  std::vector<std::int64_t> target_row(static_cast<std::size_t>(qM), -1);
  for (std::size_t i = 0; i < n_rel; ++i) {
    std::size_t lead = n_sym;
    for (std::size_t c = 0; c < n_sym; ++c)
      if (system(i, c) != 0) {
        lead = c;
        break;
      }
    if (lead == n_sym) continue;
    if (lead >= first_basis) {
      throw Error(ErrorCode::Inconsistent, "identities force a relation among the level-" + std::to_string(m) +
                                               " symbols themselves");
    }
    if (lead < first_target) continue;
    bool clean = true;
    for (std::size_t c = lead + 1; c < first_basis; ++c)
      if (system(i, c) != 0) clean = false;
    if (clean) target_row[lead - first_target] = static_cast<std::int64_t>(i);
  }
  std::string unsolved;
  for (std::int64_t s = 0; s < qM; ++s)
    if (target_row[static_cast<std::size_t>(s)] < 0) unsolved += " x(" + std::to_string(qM) + "n+" + std::to_string(s) + ")";
  if (!unsolved.empty()) throw Error(ErrorCode::Underdetermined, "unsolved targets:" + unsolved);

  std::int64_t ell = 0, u = 0;
  bool any = false;
  for (std::int64_t s = 0; s < qM; ++s) {
    const auto row = static_cast<std::size_t>(target_row[static_cast<std::size_t>(s)]);
    for (std::size_t c = first_basis; c < n_sym; ++c) {
      if (system(row, c) == 0) continue;
      const auto residue = order[c].second;
      ell = any ? std::min(ell, residue) : residue;
      u = any ? std::max(u, residue) : residue;
      any = true;
    }
  }

  QRecursiveDefinition def;
  def.q = q;
  def.M = M;
  def.m = m;
  def.ell = ell;
  def.u = u;
  def.reset_coeffs();
  const auto qm = ipow(q, m);
  const auto min_start = std::max<std::int64_t>(ceil_div(-ell, qm), 0);
  for (std::int64_t s = 0; s < qM; ++s) {
    const auto row = static_cast<std::size_t>(target_row[static_cast<std::size_t>(s)]);
    for (auto k = ell; k <= u; ++k) {
      const auto it = column.find({m, k});
      def.set_coeff(s, k, it == column.end() ? Rational(0) : Rational(-system(row, it->second)));
    }
    std::int64_t start = min_start;
    for (std::size_t i = 0; i < n_rel; ++i)
      if (system(row, n_sym + i) != 0) start = std::max(start, relations[i].start);
    def.row_starts.push_back(start);
  }
  def.offset = *std::max_element(def.row_starts.begin(), def.row_starts.end());
  if (std::all_of(def.row_starts.begin(), def.row_starts.end(), [&](auto v) { return v == def.offset; }))
    def.row_starts.clear();
  if (!initial_values.empty()) {
    const auto span = static_cast<std::size_t>(def.initial_span());
    if (initial_values.size() < span)
      throw Error(ErrorCode::ParseError, "need " + std::to_string(span) + " initial values");
    def.initial_values.assign(initial_values.begin(), initial_values.begin() + static_cast<std::ptrdiff_t>(span));
  }
  return def;
}

QRecursiveDefinition disentangle(const IdentitySystem& system) {
  return disentangle(system.identities, system.q, system.M, system.m, system.initial_values);
}

IdentitySystem parse_identities(const std::string& text) {
  IdentitySystem system;
  std::istringstream in(text);
  std::string line;
  RecurrenceIdentity* open = nullptr;
  auto to_int = [](const std::string& token) -> std::int64_t {
    try {
      std::size_t used = 0;
      const auto v = std::stoll(token, &used);
      if (used == token.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::ParseError, "not an integer: '" + token + "'");
  };
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::vector<std::string> tokens;
    for (std::string t; words >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (open) {
      if (tokens[0] == "end") {
        if (open->terms.size() < 2) throw Error(ErrorCode::ParseError, "an identity needs at least two terms");
        open = nullptr;
        continue;
      }
      if (tokens.size() != 3) throw Error(ErrorCode::ParseError, "identity rows need 'coeff level residue'");
      open->terms.push_back({parse_rational(tokens[0]), static_cast<int>(to_int(tokens[1])), to_int(tokens[2])});
      continue;
    }
    const auto& key = tokens[0];
    if (key == "q" && tokens.size() == 2) system.q = static_cast<int>(to_int(tokens[1]));
    else if (key == "M" && tokens.size() == 2) system.M = static_cast<int>(to_int(tokens[1]));
    else if (key == "m" && tokens.size() == 2) system.m = static_cast<int>(to_int(tokens[1]));
    else if (key == "initial") {
      for (std::size_t i = 1; i < tokens.size(); ++i) system.initial_values.push_back(parse_rational(tokens[i]));
    } else if (key == "identity") {
      system.identities.push_back({{}, tokens.size() > 1 ? to_int(tokens[1]) : 0});
      open = &system.identities.back();
    } else {
      throw Error(ErrorCode::ParseError, "unknown field '" + key + "'");
    }
  }
  if (open) throw Error(ErrorCode::ParseError, "identity block lacks 'end'");
  return system;
}

IdentitySystem load_identities(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_identities(buffer.str());
}

}  // namespace qrec
