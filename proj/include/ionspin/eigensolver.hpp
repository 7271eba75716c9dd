#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ionspin/hamiltonian.hpp"
#include "ionspin/spin.hpp"

namespace ionspin {

enum class EigenMethod { automatic, dense, iterative };

struct EigenOptions {
  EigenMethod method = EigenMethod::automatic;
  /// Residual bound ||Hv - Ev|| <= tol * max(1, |E|) for the iterative path.
  double tol = 1e-10;
  std::uint64_t seed = 0x5EED;
  int max_iterations = 5000;  // total Lanczos steps across restarts, per eigenpair
  /// Largest sector dimension diagonalized densely under `automatic`.
  std::size_t dense_limit = 4096;
};

inline constexpr int kMaxEigenpairs = 8;

struct SpectrumResult {
  int n_spins = 0;
  Sector sector = Sector::full;
  double field = 0.0;  // coupling units
  std::vector<double> eigenvalues;                // ascending
  std::vector<std::vector<double>> eigenvectors;  // full 2^N basis, unit norm
  std::vector<double> residuals;
  std::string method;  // "diagonal", "dense" or "lanczos"
  int iterations = 0;

  int size() const noexcept { return static_cast<int>(eigenvalues.size()); }
};

/// k lowest eigenpairs of h (1 <= k <= min(8, dim)). Under `automatic`, a
/// zero field is solved exactly from the diagonal, sectors up to
/// dense_limit are diagonalized densely, and larger ones by Lanczos.
SpectrumResult lowest_eigenpairs(const IsingOperator& h, int k, const EigenOptions& options = {});

SpectrumResult lowest_eigenpairs(const CouplingMatrix& j, Field field, int k,
                                 const EigenOptions& options = {},
                                 Sector sector = Sector::full);

/// Indices of the computed states degenerate with `which`, within
/// 1e-10 * max(1, |E|).
std::vector<int> degenerate_cluster(const SpectrumResult& result, int which);

/// <sum_n sx_n> / N, averaged over the degenerate cluster of `which`.
double polarization(const SpectrumResult& result, int which = 0);

/// sum_{s in basis} |<s|v>|^2, averaged over the degenerate cluster of
/// `which`. Basis entries must be distinct.
double subspace_projection(const SpectrumResult& result, std::span<const SpinConfig> basis,
                           int which = 0);

}  // namespace ionspin
