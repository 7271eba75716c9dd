#pragma once

#include <vector>

#include "ionspin/eigensolver.hpp"

namespace ionspin::detail {

struct LanczosResult {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;  // operator (sector) basis
  std::vector<double> residuals;
  int iterations = 0;
};

/// k lowest eigenpairs by Lanczos with full re-orthogonalization, one
/// deflated run per eigenpair so degenerate levels are all recovered.
LanczosResult lanczos_lowest(const IsingOperator& h, int k, const EigenOptions& options);

}  // namespace ionspin::detail
