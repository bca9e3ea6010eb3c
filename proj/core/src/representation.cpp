#include "qrec/representation.hpp"

#include <json.hpp>
#include <sstream>

#include "qrec/error.hpp"

namespace qrec {

std::string to_string(const Label& label) {
  std::ostringstream out;
  if (const auto* sub = std::get_if<SubsequenceLabel>(&label)) {
    out << "sub(" << sub->level << ',' << sub->residue << ')';
  } else if (const auto* delta = std::get_if<DeltaLabel>(&label)) {
    out << "delta(" << delta->index << ')';
  } else {
    const auto& ext = std::get<ExternalLabel>(label);
    out << ext.name << '[' << ext.component << "](n+" << ext.shift << ')';
  }
  return out.str();
}

void LinearRepresentation::check_shape() const {
  const auto d = dim();
  if (q < 2 || matrices.size() != static_cast<std::size_t>(q))
    throw Error(ErrorCode::DimensionMismatch, "need q matrices");
  for (const auto& a : matrices)
    if (a.rows() != d || a.cols() != d) throw Error(ErrorCode::DimensionMismatch, "matrix is not D x D");
  if (selection.size() != d) throw Error(ErrorCode::DimensionMismatch, "selection length");
  if (!labels.empty() && labels.size() != d) throw Error(ErrorCode::DimensionMismatch, "label count");
}

QMatrix LinearRepresentation::matrix_sum() const {
  QMatrix sum(dim(), dim());
  for (const auto& a : matrices) sum = sum + a;
  return sum;
}

QVector rep_vector(const LinearRepresentation& rep, std::int64_t n) {
  if (rep.validity_offset > 0)
    throw Error(ErrorCode::RepresentationHasOffset,
                "validity offset " + std::to_string(rep.validity_offset) + "; correct it first");
  std::vector<int> digits;
  for (auto k = n; k > 0; k /= rep.q) digits.push_back(static_cast<int>(k % rep.q));
  QVector v = rep.v0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) v = rep.matrices[static_cast<std::size_t>(*it)] * v;
  return v;
}

Rational rep_eval(const LinearRepresentation& rep, std::int64_t n) {
  return dot(rep.selection, rep_vector(rep, n));
}

void ComponentSource::add_external(const std::string& name, std::int64_t shift, LinearRepresentation rep) {
  externals_[{name, shift}] = std::move(rep);
}

Rational ComponentSource::eval(const Label& label, std::int64_t n) const {
  if (const auto* sub = std::get_if<SubsequenceLabel>(&label)) {
    if (!oracle_) throw Error(ErrorCode::UnsupportedLabel, "no oracle for subsequence labels");
    return oracle_->eval(ipow(oracle_->definition().q, sub->level) * n + sub->residue);
  }
  if (const auto* delta = std::get_if<DeltaLabel>(&label)) return n == delta->index ? 1 : 0;
  const auto& ext = std::get<ExternalLabel>(label);
  const auto it = externals_.find({ext.name, ext.shift});
  if (it == externals_.end()) throw Error(ErrorCode::UnsupportedLabel, "unregistered label " + to_string(label));
  if (n < 0) return 0;
  return rep_vector(it->second, n).at(ext.component);
}

QVector ComponentSource::eval(const std::vector<Label>& labels, std::int64_t n) const {
  QVector out;
  out.reserve(labels.size());
  for (const auto& label : labels) out.push_back(eval(label, n));
  return out;
}

RepCheckReport rep_check(const LinearRepresentation& rep, const ComponentSource& source,
                         std::int64_t n_max, std::optional<std::int64_t> start) {
  RepCheckReport report;
  report.checked_from = start.value_or(rep.validity_offset);
  report.checked_to = n_max;
  try {
    rep.check_shape();
    if (rep.labels.size() != rep.dim()) throw Error(ErrorCode::UnsupportedLabel, "representation has no labels");
    for (auto n = report.checked_from; n <= n_max; ++n) {
      const QVector base = source.eval(rep.labels, n);
      for (int r = 0; r < rep.q; ++r) {
        const QVector expected = source.eval(rep.labels, rep.q * n + r);
        const QVector got = rep.matrices[static_cast<std::size_t>(r)] * base;
        for (std::size_t i = 0; i < expected.size(); ++i) {
          if (expected[i] != got[i]) {
            report.ok = false;
            report.n = n;
            report.r = r;
            report.component = i;
            report.message = "component " + to_string(rep.labels[i]) + " at n=" + std::to_string(n) +
                             ", r=" + std::to_string(r) + ": expected " + to_string(expected[i]) +
                             ", got " + to_string(got[i]);
            return report;
          }
        }
      }
    }
  } catch (const Error& e) {
    report.ok = false;
    report.message = e.what();
  }
  return report;
}

RepCheckReport rep_check(const LinearRepresentation& rep, const SequenceOracle& oracle,
                         std::int64_t n_max, std::optional<std::int64_t> start) {
  return rep_check(rep, ComponentSource(&oracle), n_max, start);
}

namespace {

using nlohmann::json;

json vector_json(const QVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

QVector vector_from(const json& j) {
  QVector v;
  for (const auto& x : j) v.push_back(parse_rational(x.is_string() ? x.get<std::string>() : x.dump()));
  return v;
}

}  // namespace

std::string representation_to_json(const LinearRepresentation& rep) {
  json out;
  out["q"] = rep.q;
  out["dim"] = rep.dim();
  out["validity_offset"] = rep.validity_offset;
  out["matrices"] = json::array();
  for (const auto& a : rep.matrices) {
    json rows = json::array();
    for (std::size_t r = 0; r < a.rows(); ++r) rows.push_back(vector_json(a.row(r)));
    out["matrices"].push_back(rows);
  }
  out["v0"] = vector_json(rep.v0);
  out["selection"] = vector_json(rep.selection);
  out["labels"] = json::array();
  for (const auto& label : rep.labels) {
    json l;
    if (const auto* sub = std::get_if<SubsequenceLabel>(&label)) {
      l = {{"kind", "subsequence"}, {"level", sub->level}, {"residue", sub->residue}};
    } else if (const auto* delta = std::get_if<DeltaLabel>(&label)) {
      l = {{"kind", "delta"}, {"index", delta->index}};
    } else {
      const auto& ext = std::get<ExternalLabel>(label);
      l = {{"kind", "external"}, {"name", ext.name}, {"shift", ext.shift}, {"component", ext.component}};
    }
    out["labels"].push_back(l);
  }
  return out.dump(2);
}

LinearRepresentation representation_from_json(const std::string& text) {
  LinearRepresentation rep;
  try {
    const json in = json::parse(text);
    rep.q = in.at("q").get<int>();
    rep.validity_offset = in.value("validity_offset", std::int64_t{0});
    for (const auto& a : in.at("matrices")) {
      std::vector<QVector> rows;
      for (const auto& row : a) rows.push_back(vector_from(row));
      rep.matrices.push_back(QMatrix::from_rows(rows));
    }
    rep.v0 = vector_from(in.at("v0"));
    rep.selection = vector_from(in.at("selection"));
    if (in.contains("labels")) {
      for (const auto& l : in.at("labels")) {
        const auto kind = l.at("kind").get<std::string>();
        if (kind == "subsequence")
          rep.labels.emplace_back(SubsequenceLabel{l.at("level").get<int>(), l.at("residue").get<std::int64_t>()});
        else if (kind == "delta")
          rep.labels.emplace_back(DeltaLabel{l.at("index").get<std::int64_t>()});
        else if (kind == "external")
          rep.labels.emplace_back(ExternalLabel{l.at("name").get<std::string>(), l.at("shift").get<std::int64_t>(),
                                                l.at("component").get<std::size_t>()});
        else
          throw Error(ErrorCode::ParseError, "unknown label kind '" + kind + "'");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("representation JSON: ") + e.what());
  }
  rep.check_shape();
  return rep;
}

}  // namespace qrec
