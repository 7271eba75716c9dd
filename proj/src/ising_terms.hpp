#pragma once

#include <vector>

#include "ionspin/coupling.hpp"
#include "ionspin/simd/kernels.hpp"

namespace ionspin::detail {

/// Bond list for the diagonal kernel: weight 2 J_mn for every m < n, in
/// row order. Ion i maps to bit N-1-i.
inline std::vector<simd::PairTerm> ising_terms(const CouplingMatrix& j) {
  const int n = j.size();
  std::vector<simd::PairTerm> terms;
  terms.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int m = 0; m < n; ++m) {
    for (int p = m + 1; p < n; ++p) {
      terms.push_back({2.0 * j(m, p), static_cast<std::uint32_t>(n - 1 - m),
                       static_cast<std::uint32_t>(n - 1 - p)});
    }
  }
  return terms;
}

}  // namespace ionspin::detail
