#include "qrec/builder.hpp"

#include <map>

#include "qrec/error.hpp"
#include "qrec/minimizer.hpp"

namespace qrec {

ShiftBounds shift_bounds(const QRecursiveDefinition& def) {
  const auto ratio = ipow(def.q, def.M - def.m);
  const auto qM = ipow(def.q, def.M);
  const auto qm = ipow(def.q, def.m);
  ShiftBounds b;
  b.ell_prime = def.ell < 0 ? floor_div((def.ell + 1) * ratio - qM, ratio - 1) : 0;
  b.u_prime = qm - 1 + (def.u > 0 ? ceil_div(def.u * ratio, ratio - 1) : 0);
  return b;
}

std::int64_t general_offset(const QRecursiveDefinition& def) {
  return def.offset - floor_div(shift_bounds(def).ell_prime, ipow(def.q, def.M));
}

std::size_t general_dimension(const QRecursiveDefinition& def) {
  const auto b = shift_bounds(def);
  const auto head = (ipow(def.q, def.M) - 1) / (def.q - 1);
  return static_cast<std::size_t>(head + (def.M - def.m) * (b.u_prime - b.ell_prime - ipow(def.q, def.m) + 1));
}

namespace {

// Component layout of the general construction: blocks v_j with residues in [lo, hi].
class BlockLayout {
 public:
  void add_block(int level, std::int64_t lo, std::int64_t hi) {
    blocks_.push_back({level, lo, hi, size_});
    size_ += static_cast<std::size_t>(hi - lo + 1);
  }

  std::size_t index(int level, std::int64_t residue) const {
    const auto& b = blocks_.at(static_cast<std::size_t>(level));
    if (residue < b.lo || residue > b.hi) {
      throw Error(ErrorCode::IndexRangeViolation, "component (" + std::to_string(level) + "," +
                                                      std::to_string(residue) + ") outside block [" +
                                                      std::to_string(b.lo) + "," + std::to_string(b.hi) + "]");
    }
    return b.start + static_cast<std::size_t>(residue - b.lo);
  }

  std::vector<Label> labels() const {
    std::vector<Label> out;
    for (const auto& b : blocks_)
      for (auto d = b.lo; d <= b.hi; ++d) out.emplace_back(SubsequenceLabel{b.level, d});
    return out;
  }

  std::size_t size() const { return size_; }

 private:
  struct Block {
    int level;
    std::int64_t lo, hi;
    std::size_t start;
  };
  std::vector<Block> blocks_;
  std::size_t size_ = 0;
};

BlockLayout general_layout(const QRecursiveDefinition& def) {
  const auto b = shift_bounds(def);
  const auto qm = ipow(def.q, def.m);
  BlockLayout layout;
  for (int j = 0; j < def.M; ++j) {
    if (j < def.m)
      layout.add_block(j, 0, ipow(def.q, j) - 1);
    else
      layout.add_block(j, b.ell_prime, ipow(def.q, j) - qm + b.u_prime);
  }
  return layout;
}

// Reference from a level-(M-1) row to g_s(n + shift).
struct Coupling {
  std::size_t row;
  int r;
  std::int64_t s;
  std::int64_t shift;
};

LinearRepresentation general_core(const QRecursiveDefinition& def, const SequenceOracle& oracle,
                                  std::vector<Coupling>* couplings) {
  const auto layout = general_layout(def);
  const auto dim = layout.size();
  const auto labels = layout.labels();
  const auto qM = ipow(def.q, def.M);
  const auto qm = ipow(def.q, def.m);

  LinearRepresentation rep;
  rep.q = def.q;
  rep.matrices.assign(static_cast<std::size_t>(def.q), QMatrix(dim, dim));
  rep.labels = labels;
  rep.validity_offset = general_offset(def);

  for (std::size_t row = 0; row < dim; ++row) {
    const auto& label = std::get<SubsequenceLabel>(labels[row]);
    const int j = label.level;
    const auto d = label.residue;
    for (int r = 0; r < def.q; ++r) {
      auto& a = rep.matrices[static_cast<std::size_t>(r)];
      if (j <= def.M - 2) {
        a(row, layout.index(j + 1, ipow(def.q, j) * r + d)) = 1;
        continue;
      }
      const auto d_outer = floor_div(d, qM);
      const auto r_inner = d - d_outer * qM;
      const auto r_tilde = ipow(def.q, def.M - 1) * r + r_inner;
      const bool wraps = r_tilde >= qM;
      const auto s = wraps ? r_tilde - qM : r_tilde;
      const auto base = qm * d_outer + (wraps ? qm : 0);
      for (auto k = def.ell; k <= def.u; ++k) {
        const Rational& c = def.coeff(s, k);
        if (c != 0) a(row, layout.index(def.m, base + k)) += c;
      }
      if (couplings) couplings->push_back({row, r, s, d_outer + (wraps ? 1 : 0)});
    }
  }

  rep.v0.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) rep.v0[i] = oracle.eval(std::get<SubsequenceLabel>(labels[i]).residue);
  rep.selection.assign(dim, 0);
  rep.selection[layout.index(0, 0)] = 1;
  return rep;
}

}  // namespace

LinearRepresentation build_general(const QRecursiveDefinition& def) {
  const SequenceOracle oracle(def);
  return general_core(def, oracle, nullptr);
}

std::vector<QMatrix> special_blocks(const QRecursiveDefinition& def) {
  const auto qm = ipow(def.q, def.m);
  if (def.M != def.m + 1 || def.ell != 0 || def.u != qm - 1) {
    throw Error(ErrorCode::SpecialCaseViolation, "needs M = m + 1, l = 0 and u = q^m - 1");
  }
  std::vector<QMatrix> blocks;
  for (int r = 0; r < def.q; ++r) {
    QMatrix b(static_cast<std::size_t>(qm), static_cast<std::size_t>(qm));
    for (std::int64_t d = 0; d < qm; ++d)
      for (std::int64_t k = 0; k < qm; ++k)
        b(static_cast<std::size_t>(d), static_cast<std::size_t>(k)) = def.coeff(r * qm + d, k);
    blocks.push_back(std::move(b));
  }
  return blocks;
}

LinearRepresentation build_special(const QRecursiveDefinition& def) {
  const auto blocks = special_blocks(def);
  const SequenceOracle oracle(def);
  BlockLayout layout;
  for (int j = 0; j <= def.m; ++j) layout.add_block(j, 0, ipow(def.q, j) - 1);
  const auto dim = layout.size();
  const auto qm = ipow(def.q, def.m);
  const auto tail = layout.index(def.m, 0);

  LinearRepresentation rep;
  rep.q = def.q;
  rep.labels = layout.labels();
  rep.validity_offset = def.offset;
  rep.matrices.assign(static_cast<std::size_t>(def.q), QMatrix(dim, dim));
  for (int r = 0; r < def.q; ++r) {
    auto& a = rep.matrices[static_cast<std::size_t>(r)];
    for (std::size_t row = 0; row < tail; ++row) {
      const auto& label = std::get<SubsequenceLabel>(rep.labels[row]);
      a(row, layout.index(label.level + 1, ipow(def.q, label.level) * r + label.residue)) = 1;
    }
    for (std::int64_t d = 0; d < qm; ++d)
      for (std::int64_t k = 0; k < qm; ++k)
        a(tail + static_cast<std::size_t>(d), tail + static_cast<std::size_t>(k)) =
            blocks[static_cast<std::size_t>(r)](static_cast<std::size_t>(d), static_cast<std::size_t>(k));
  }
  rep.v0.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) rep.v0[i] = oracle.eval(std::get<SubsequenceLabel>(rep.labels[i]).residue);
  rep.selection.assign(dim, 0);
  rep.selection[0] = 1;
  return rep;
}

LinearRepresentation correct_offset(const LinearRepresentation& rep, const ComponentSource& source) {
  rep.check_shape();
  const auto n0 = rep.validity_offset;
  if (n0 == 0) return rep;
  const auto dim = rep.dim();
  const auto extra = static_cast<std::size_t>(n0);
  const auto total = dim + extra;

  LinearRepresentation out;
  out.q = rep.q;
  out.labels = rep.labels;
  for (std::int64_t k = 0; k < n0; ++k) out.labels.emplace_back(DeltaLabel{k});
  out.validity_offset = 0;

  std::vector<QVector> v_small;
  for (std::int64_t k = 0; k < n0; ++k) v_small.push_back(source.eval(rep.labels, k));

  for (int r = 0; r < rep.q; ++r) {
    const auto& a = rep.matrices[static_cast<std::size_t>(r)];
    QMatrix big(total, total);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) big(i, j) = a(i, j);
    for (std::int64_t k = 0; k < n0; ++k) {
      const QVector image = source.eval(rep.labels, rep.q * k + r);
      const QVector predicted = a * v_small[static_cast<std::size_t>(k)];
      for (std::size_t i = 0; i < dim; ++i) big(i, dim + static_cast<std::size_t>(k)) = image[i] - predicted[i];
    }
    // J_r[k][j] = [q j + r = k]
    for (std::int64_t k = 0; k < n0; ++k)
      for (std::int64_t j = 0; j < n0; ++j)
        if (rep.q * j + r == k) big(dim + static_cast<std::size_t>(k), dim + static_cast<std::size_t>(j)) = 1;
    out.matrices.push_back(std::move(big));
  }

  out.v0 = source.eval(rep.labels, 0);
  out.v0.resize(total);
  out.v0[dim] = 1;
  out.selection = rep.selection;
  out.selection.resize(total);
  return out;
}

LinearRepresentation correct_offset(const LinearRepresentation& rep, const SequenceOracle& oracle) {
  return correct_offset(rep, ComponentSource(&oracle));
}

namespace {

// Representation of n -> x(n + 1) through the window (v(n), v(n + 1)).
LinearRepresentation shift_once(const LinearRepresentation& rep) {
  const auto dim = rep.dim();
  const auto q = static_cast<std::size_t>(rep.q);
  LinearRepresentation out;
  out.q = rep.q;
  out.validity_offset = 0;
  for (std::size_t r = 0; r < q; ++r) {
    QMatrix big(2 * dim, 2 * dim);
    const auto& top = rep.matrices[r];
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) big(i, j) = top(i, j);
    // v(qn + r + 1) is A_{r+1} v(n), or A_0 v(n + 1) when the digit carries.
    if (r + 1 < q) {
      const auto& next = rep.matrices[r + 1];
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) big(dim + i, j) = next(i, j);
    } else {
      const auto& first = rep.matrices[0];
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) big(dim + i, dim + j) = first(i, j);
    }
    out.matrices.push_back(std::move(big));
  }
  out.v0 = rep.v0;
  const QVector v1 = rep.matrices[1] * rep.v0;
  out.v0.insert(out.v0.end(), v1.begin(), v1.end());
  out.selection.assign(dim, 0);
  out.selection.insert(out.selection.end(), rep.selection.begin(), rep.selection.end());
  return out;
}

}  // namespace

LinearRepresentation shift_representation(const LinearRepresentation& rep, std::int64_t shift) {
  if (shift < 0) throw Error(ErrorCode::UnsupportedShift, "negative shift " + std::to_string(shift));
  if (rep.validity_offset > 0) throw Error(ErrorCode::RepresentationHasOffset, "shift needs offset 0");
  LinearRepresentation current = minimize(rep).first;
  for (std::int64_t i = 0; i < shift; ++i) current = minimize(shift_once(current)).first;
  return current;
}

LinearRepresentation build_inhomogeneous(const QRecursiveDefinition& def,
                                         const std::vector<std::optional<LinearRepresentation>>& inhomogeneities) {
  if (static_cast<std::int64_t>(inhomogeneities.size()) != def.rows())
    throw Error(ErrorCode::DimensionMismatch, "need one inhomogeneity slot per row");
  std::vector<IndexFunction> g(inhomogeneities.size());
  for (std::size_t s = 0; s < inhomogeneities.size(); ++s) {
    if (!inhomogeneities[s]) continue;
    if (inhomogeneities[s]->validity_offset != 0)
      throw Error(ErrorCode::RepresentationHasOffset, "inhomogeneity needs offset 0");
    const auto rep = *inhomogeneities[s];
    g[s] = [rep](std::int64_t n) { return rep_eval(rep, n); };
  }
  const SequenceOracle oracle(def, g);

  std::vector<Coupling> couplings;
  LinearRepresentation core = general_core(def, oracle, &couplings);
  const auto core_dim = core.dim();

  // One block per referenced (s, shift), in sorted order.
  struct Block {
    std::size_t start = 0;
    LinearRepresentation rep;
  };
  std::map<std::pair<std::int64_t, std::int64_t>, Block> blocks;
  for (const auto& c : couplings)
    if (inhomogeneities[static_cast<std::size_t>(c.s)]) blocks.try_emplace({c.s, c.shift});
  std::size_t total = core_dim;
  for (auto& [key, block] : blocks) {
    if (key.second < 0)
      throw Error(ErrorCode::UnsupportedShift, "inhomogeneity needed at negative shift " + std::to_string(key.second));
    block.rep = shift_representation(*inhomogeneities[static_cast<std::size_t>(key.first)], key.second);
    block.start = total;
    total += block.rep.dim();
  }

  LinearRepresentation rep;
  rep.q = def.q;
  rep.validity_offset = core.validity_offset;
  rep.labels = core.labels;
  rep.v0 = core.v0;
  rep.selection = core.selection;
  rep.selection.resize(total);
  ComponentSource source(&oracle);
  for (const auto& [key, block] : blocks) {
    const auto name = "g" + std::to_string(key.first);
    for (std::size_t i = 0; i < block.rep.dim(); ++i) rep.labels.emplace_back(ExternalLabel{name, key.second, i});
    rep.v0.insert(rep.v0.end(), block.rep.v0.begin(), block.rep.v0.end());
    source.add_external(name, key.second, block.rep);
  }
  for (int r = 0; r < def.q; ++r) {
    QMatrix big(total, total);
    const auto& a = core.matrices[static_cast<std::size_t>(r)];
    for (std::size_t i = 0; i < core_dim; ++i)
      for (std::size_t j = 0; j < core_dim; ++j) big(i, j) = a(i, j);
    for (const auto& [key, block] : blocks) {
      const auto& b = block.rep.matrices[static_cast<std::size_t>(r)];
      for (std::size_t i = 0; i < block.rep.dim(); ++i)
        for (std::size_t j = 0; j < block.rep.dim(); ++j) big(block.start + i, block.start + j) = b(i, j);
    }
    for (const auto& c : couplings) {
      if (c.r != r || !inhomogeneities[static_cast<std::size_t>(c.s)]) continue;
      const auto& block = blocks.at({c.s, c.shift});
      for (std::size_t j = 0; j < block.rep.dim(); ++j) big(c.row, block.start + j) += block.rep.selection[j];
    }
    rep.matrices.push_back(std::move(big));
  }
  return correct_offset(rep, source);
}

}  // namespace qrec
