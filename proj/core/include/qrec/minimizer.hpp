#pragma once

#include <utility>

#include "qrec/representation.hpp"

namespace qrec {

struct MinimizationReport {
  std::size_t input_dim = 0;
  std::size_t output_dim = 0;
  std::size_t forward_basis_size = 0;
  std::size_t backward_basis_size = 0;
};

// Forward step: span of selection * A_w (left reduction). Backward step: span
// of A_w * v0 (right reduction). Components of the result carry labels
// external("basis", 0, i) because they are combinations of the input.
std::pair<LinearRepresentation, MinimizationReport> minimize(const LinearRepresentation& rep);

}  // namespace qrec
