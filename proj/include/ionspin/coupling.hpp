#pragma once

// Detuning-controlled Ising couplings
//
//   J_mn = sum_k b_m^k b_n^k / (mu^2 - omega_k^2),   J_nn = 0,
//
// in "coupling units": the laser prefactor (hbar Omega dk)^2 / 2m is 1.

#include <optional>
#include <span>
#include <vector>

#include "ionspin/chain.hpp"

namespace ionspin {

/// Smallest allowed distance of a rescaled detuning from an integer.
inline constexpr double kResonanceGuard = 1e-6;

struct DetuningSpec {
  double rescaled = 0.0;  // mu-tilde: k + frac sits between modes k and k+1 (1-based)
  double resolved = 0.0;  // physical mu in units of wz
  int lower_mode = 0;     // k, 1-based
};

/// mu = omega_k + frac * (omega_{k+1} - omega_k), k = floor(rescaled).
/// ResonanceError within kResonanceGuard of an integer in [1, N];
/// OutOfRange outside (1, N).
DetuningSpec resolve_detuning(const ModeSpectrum& spectrum, double rescaled);

class CouplingMatrix {
 public:
  CouplingMatrix() = default;

  /// Arbitrary symmetric couplings (row-major n x n). The diagonal is zeroed.
  static CouplingMatrix from_values(int n, std::vector<double> values);

  int size() const noexcept { return n_; }
  double operator()(int m, int n) const { return values_[static_cast<std::size_t>(m) * n_ + n]; }
  std::span<const double> values() const noexcept { return values_; }
  double jbar() const noexcept { return jbar_; }

  const std::optional<DetuningSpec>& detuning() const noexcept { return detuning_; }
  double aspect_ratio() const noexcept { return aspect_ratio_; }

 private:
  friend CouplingMatrix coupling_matrix(const ModeSpectrum&, const DetuningSpec&);

  int n_ = 0;
  std::vector<double> values_;
  double jbar_ = 0.0;
  std::optional<DetuningSpec> detuning_;
  double aspect_ratio_ = 0.0;
};

/// sqrt(sum_{m != n} J_mn^2 / (N (N-1))).
double rms_coupling(int n, std::span<const double> values);

CouplingMatrix coupling_matrix(const ModeSpectrum& spectrum, const DetuningSpec& detuning);

enum class BondKind { ferromagnetic, antiferromagnetic };

struct Bond {
  int m = 0;  // 0-based, m < n
  int n = 0;
  double value = 0.0;
  double weight = 0.0;  // |value|
  BondKind kind = BondKind::ferromagnetic;
};

/// All N(N-1)/2 bonds, strongest first (ties keep (m, n) order).
std::vector<Bond> bond_graph(const CouplingMatrix& j);

/// Chain and modes for one (N, beta), producing couplings at any mu-tilde.
class ChainCouplings {
 public:
  explicit ChainCouplings(const TrapConfig& config);

  const TrapConfig& config() const noexcept { return modes_.chain.config; }
  int size() const noexcept { return modes_.chain.config.n_ions; }
  const IonChain& chain() const noexcept { return modes_.chain; }
  const ModeSpectrum& spectrum() const noexcept { return modes_.spectrum; }

  CouplingMatrix at(double rescaled) const;

 private:
  ChainModes modes_;
};

}  // namespace ionspin
