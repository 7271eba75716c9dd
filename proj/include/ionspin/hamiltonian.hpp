#pragma once

// Transverse-field Ising Hamiltonian on the 2^N spin basis
//
//   H = sum_{m<n} 2 J_mn sz_m sz_n  -  B sum_n sx_n ,   B >= 0.
//
// The field enters with a minus sign, which is unitarily equivalent to +B
// (conjugate by prod_n sz_n): the spectrum and every |<s|v>|^2 are the same,
// and with this sign the ground state is the positive Perron vector and the
// strong-field polarization <sum sx>/N tends to +1.
//
// H commutes with the global flip P = prod_n sx_n. The flip-even and
// flip-odd sectors are spanned by (|s> +/- |flip s>)/sqrt(2) with ion 1 up in
// s, i.e. basis indices 0 .. 2^(N-1) - 1.

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "ionspin/coupling.hpp"

namespace ionspin {

enum class Sector { full, flip_even, flip_odd };

/// Transverse field with the unit it was given in. jbar and n_jbar resolve
/// against the couplings they are applied to.
struct Field {
  enum class Unit { absolute, jbar, n_jbar };

  double value = 0.0;
  Unit unit = Unit::absolute;

  static Field absolute(double b) { return {b, Unit::absolute}; }
  static Field in_jbar(double b) { return {b, Unit::jbar}; }
  static Field in_n_jbar(double b) { return {b, Unit::n_jbar}; }

  /// Field in coupling units for these couplings.
  double resolve(const CouplingMatrix& j) const;
};

class IsingOperator {
 public:
  IsingOperator(const CouplingMatrix& j, Field field, Sector sector = Sector::full);

  int spins() const noexcept { return n_; }
  Sector sector() const noexcept { return sector_; }
  double field() const noexcept { return field_; }
  std::size_t dimension() const noexcept { return diag_.size(); }
  std::span<const double> diagonal() const noexcept { return diag_; }

  /// out = H in, matrix-free.
  void apply(std::span<const double> in, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> in) const;

  Eigen::MatrixXd dense() const;

  /// Sector vector -> full 2^N vector (identity for Sector::full).
  std::vector<double> embed(std::span<const double> v) const;

 private:
  int n_ = 0;
  Sector sector_ = Sector::full;
  double field_ = 0.0;
  int flip_bits_ = 0;
  int reversal_sign_ = 0;
  std::vector<double> diag_;
};

/// Matrix-free H v on the full basis.
std::vector<double> apply_hamiltonian(const CouplingMatrix& j, Field field,
                                      std::span<const double> v);

/// <v| sum_n sx_n |v> for a full-basis vector.
double transverse_expectation(int n_spins, std::span<const double> v);

}  // namespace ionspin
