#include "qrec/minimizer.hpp"

#include "qrec/error.hpp"

namespace qrec {

namespace {

// Closure of `seed` under v -> step(v, r), in length-lexicographic word order.
template <typename Step>
IncrementalBasis closure(const QVector& seed, int q, Step step) {
  IncrementalBasis basis(seed.size());
  if (is_zero(seed)) return basis;
  basis.insert(seed);
  for (std::size_t next = 0; next < basis.size(); ++next) {
    for (int r = 0; r < q; ++r) {
      const QVector image = step(basis.vectors()[next], r);
      if (!is_zero(image)) basis.insert(image);
    }
  }
  return basis;
}

}  // namespace

std::pair<LinearRepresentation, MinimizationReport> minimize(const LinearRepresentation& rep) {
  rep.check_shape();
  if (rep.validity_offset > 0) throw Error(ErrorCode::RepresentationHasOffset, "minimize needs offset 0");
  MinimizationReport report;
  report.input_dim = rep.dim();

  // Rows U with U A_r = A'_r U.
  const auto rows = closure(rep.selection, rep.q, [&](const QVector& v, int r) {
    return v * rep.matrices[static_cast<std::size_t>(r)];
  });
  report.forward_basis_size = rows.size();
  const auto k = rows.size();
  LinearRepresentation left;
  left.q = rep.q;
  for (int r = 0; r < rep.q; ++r) {
    QMatrix a(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto coords = rows.coordinates(rows.vectors()[i] * rep.matrices[static_cast<std::size_t>(r)]);
      for (std::size_t j = 0; j < k; ++j) a(i, j) = coords[j];
    }
    left.matrices.push_back(std::move(a));
  }
  left.v0.resize(k);
  for (std::size_t i = 0; i < k; ++i) left.v0[i] = dot(rows.vectors()[i], rep.v0);
  left.selection.assign(k, 0);
  if (k > 0) left.selection[0] = 1;

  // Columns V with A_r V = V A''_r.
  const auto cols = closure(left.v0, left.q, [&](const QVector& v, int r) {
    return left.matrices[static_cast<std::size_t>(r)] * v;
  });
  report.backward_basis_size = cols.size();
  const auto n = cols.size();
  LinearRepresentation out;
  out.q = rep.q;
  for (int r = 0; r < rep.q; ++r) {
    QMatrix a(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto coords = cols.coordinates(left.matrices[static_cast<std::size_t>(r)] * cols.vectors()[j]);
      for (std::size_t i = 0; i < n; ++i) a(i, j) = coords[i];
    }
    out.matrices.push_back(std::move(a));
  }
  out.v0.assign(n, 0);
  if (n > 0) out.v0[0] = 1;
  out.selection.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.selection[j] = dot(left.selection, cols.vectors()[j]);
  for (std::size_t i = 0; i < n; ++i) out.labels.emplace_back(ExternalLabel{"basis", 0, i});

  // The zero sequence keeps a single zero component.
  if (n == 0) {
    out.matrices.assign(static_cast<std::size_t>(rep.q), QMatrix(1, 1));
    out.v0 = {Rational(0)};
    out.selection = {Rational(0)};
    out.labels = {ExternalLabel{"basis", 0, 0}};
  }
  report.output_dim = out.dim();
  return {out, report};
}

}  // namespace qrec
