#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qrec/oracle.hpp"
#include "qrec/rational.hpp"

namespace qrec {

// x(q^level n + residue)
struct SubsequenceLabel {
  int level = 0;
  std::int64_t residue = 0;
  friend bool operator==(const SubsequenceLabel&, const SubsequenceLabel&) = default;
};

// n -> [n = index]
struct DeltaLabel {
  std::int64_t index = 0;
  friend bool operator==(const DeltaLabel&, const DeltaLabel&) = default;
};

// Component `component` of a registered auxiliary vector sequence.
struct ExternalLabel {
  std::string name;
  std::int64_t shift = 0;
  std::size_t component = 0;
  friend bool operator==(const ExternalLabel&, const ExternalLabel&) = default;
};

using Label = std::variant<SubsequenceLabel, DeltaLabel, ExternalLabel>;

std::string to_string(const Label& label);

struct LinearRepresentation {
  int q = 2;
  std::vector<QMatrix> matrices;
  QVector v0;
  QVector selection;
  std::vector<Label> labels;
  std::int64_t validity_offset = 0;

  std::size_t dim() const { return v0.size(); }
  // Shapes agree; throws DimensionMismatch otherwise.
  void check_shape() const;
  QMatrix matrix_sum() const;
};

// v(n) = A_{d_0} ... A_{d_{L-1}} v0.
QVector rep_vector(const LinearRepresentation& rep, std::int64_t n);
Rational rep_eval(const LinearRepresentation& rep, std::int64_t n);

// Evaluates component labels at concrete indices.
class ComponentSource {
 public:
  explicit ComponentSource(const SequenceOracle* oracle = nullptr) : oracle_(oracle) {}

  // Vector sequence of `rep` (validity offset 0) backs labels {name, shift, *}.
  void add_external(const std::string& name, std::int64_t shift, LinearRepresentation rep);

  Rational eval(const Label& label, std::int64_t n) const;
  QVector eval(const std::vector<Label>& labels, std::int64_t n) const;

 private:
  const SequenceOracle* oracle_;
  std::map<std::pair<std::string, std::int64_t>, LinearRepresentation> externals_;
};

struct RepCheckReport {
  bool ok = true;
  std::int64_t checked_from = 0;
  std::int64_t checked_to = 0;
  std::int64_t n = -1;
  int r = -1;
  std::size_t component = 0;
  std::string message;
};

// Verifies v(qn + r) = A_r v(n) for n in [start, n_max]; start defaults to the
// validity offset. Failures are reported, not thrown.
RepCheckReport rep_check(const LinearRepresentation& rep, const ComponentSource& source,
                         std::int64_t n_max, std::optional<std::int64_t> start = std::nullopt);
RepCheckReport rep_check(const LinearRepresentation& rep, const SequenceOracle& oracle,
                         std::int64_t n_max, std::optional<std::int64_t> start = std::nullopt);

std::string representation_to_json(const LinearRepresentation& rep);
LinearRepresentation representation_from_json(const std::string& text);

}  // namespace qrec
