#pragma once

// Linear ion crystal in a harmonic trap: equilibrium positions and transverse
// normal modes.
//
// Units: lengths in l = (e^2 / 4 pi eps0 m wz^2)^(1/3), frequencies in the
// axial trap frequency wz. With these, the axial potential is
//   V(u) = sum_n u_n^2 / 2 + sum_{m<n} 1 / |u_m - u_n|
// and the only trap parameter left is the aspect ratio beta = wx / wz.

#include <Eigen/Dense>
#include <vector>

namespace ionspin {

inline constexpr double kDefaultAspectRatio = 10.0;

struct TrapConfig {
  int n_ions = 0;
  double aspect_ratio = kDefaultAspectRatio;

  /// Throws ConfigError unless n_ions >= 2 and aspect_ratio > 0.
  void validate() const;
};

struct IonChain {
  TrapConfig config;
  std::vector<double> positions;  // ascending
  double gradient_norm = 0.0;     // max-norm of dV/du at the returned point
  int iterations = 0;
};

/// Newton iteration on V(u) from a uniform spread of spacing 2, with step
/// halving whenever a full step does not lower V.
IonChain equilibrium_positions(const TrapConfig& config, double tol = 1e-12);

/// Transverse stiffness matrix (units of wz^2):
///   A_nn = beta^2 - sum_{p != n} 1/|u_n - u_p|^3,  A_nm = 1/|u_n - u_m|^3.
/// Every row sums to beta^2.
Eigen::MatrixXd transverse_mode_matrix(const IonChain& chain);

struct ModeSpectrum {
  std::vector<double> squared;      // eigenvalues of A, ascending (may be <= 0 if unstable)
  std::vector<double> frequencies;  // sqrt(squared); NaN where squared <= 0
  Eigen::MatrixXd modes;            // column k is b^k, entry (n, k) = b_n^k
  double aspect_ratio = 0.0;        // recovered from the row-sum identity

  int size() const noexcept { return static_cast<int>(squared.size()); }
  /// Amplitude of ion n in mode k (both 0-based).
  double amplitude(int ion, int mode) const { return modes(ion, mode); }
};

/// Eigendecomposition of a stiffness matrix without the stability check.
/// Signs follow "largest-magnitude entry positive, lowest index on ties".
ModeSpectrum decompose_modes(const Eigen::MatrixXd& stiffness);

/// decompose_modes plus validation: throws ZigzagInstability when an
/// eigenvalue is not positive and NumericalError when two eigenvalues
/// coincide within 1e-9 or the residual check fails.
ModeSpectrum mode_spectrum(const Eigen::MatrixXd& stiffness);

/// True iff the softest mode has omega_1^2 > 1e-9.
bool zigzag_stability(const ModeSpectrum& spectrum) noexcept;

/// Convenience: positions, stiffness matrix and validated spectrum.
struct ChainModes {
  IonChain chain;
  ModeSpectrum spectrum;
};
ChainModes solve_chain(const TrapConfig& config);

}  // namespace ionspin
