#pragma once

// Classical spin configurations of the chain.
//
// A configuration is an N-character string over {0, 1} (0 = up, z = +1;
// 1 = down, z = -1), ion 1 first. It is stored as the integer whose binary
// representation is that string, so ion i (0-based) is bit N-1-i and integer
// order equals string order.

#include <array>
#include <compare>
#include <span>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ionspin/coupling.hpp"
#include "ionspin/error.hpp"

namespace ionspin {

class SpinConfig {
 public:
  static constexpr int kMaxSpins = 62;

  SpinConfig(int n_spins, std::uint64_t index);
  static SpinConfig from_string(std::string_view bits);

  int size() const noexcept { return n_; }
  std::uint64_t index() const noexcept { return index_; }
  bool down(int ion) const noexcept { return ((index_ >> (n_ - 1 - ion)) & 1U) != 0; }
  int z(int ion) const noexcept { return down(ion) ? -1 : 1; }

  SpinConfig flipped() const noexcept;
  SpinConfig reversed() const noexcept;
  std::string to_string() const;

  friend auto operator<=>(const SpinConfig&, const SpinConfig&) = default;

 private:
  int n_ = 0;
  std::uint64_t index_ = 0;
};

/// Orbit of a configuration under global flip and chain reflection,
/// represented by its smallest member.
struct SpinOrder {
  SpinConfig canonical;
  int degeneracy;  // orbit size, 2 or 4

  bool reflection_symmetric() const noexcept { return degeneracy == 2; }
  std::vector<SpinConfig> orbit() const;
  friend bool operator==(const SpinOrder&, const SpinOrder&) = default;
};

SpinOrder canonicalize(SpinConfig s);

/// {0...0, 1...1}
std::array<SpinConfig, 2> ferro_basis(int n);
/// {0^a 1^b, 0^b 1^a, 1^a 0^b, 1^b 0^a}, a = (N+1)/2, b = (N-1)/2; N odd >= 3.
std::array<SpinConfig, 4> kink_basis(int n);

/// Differing bits between a and b, minimised over the global flip of b.
int hamming_distance(SpinConfig a, SpinConfig b);

/// E(s) = sum_{m<n} 2 J_mn z_m z_n.
double classical_energy(const CouplingMatrix& j, SpinConfig s);

/// All basis energies for states first .. first + out.size() - 1.
void classical_energies(const CouplingMatrix& j, std::uint64_t first, std::span<double> out);

inline constexpr int kMaxExhaustiveSpins = 24;

struct ClassicalGround {
  SpinOrder order;
  double energy;
  std::vector<SpinConfig> minimizers;  // every config within the tie tolerance, ascending
};

/// Raised when the minimizing configurations belong to more than one
/// symmetry orbit, i.e. at an exact level crossing.
class AmbiguousGround : public Error {
 public:
  AmbiguousGround(std::vector<SpinOrder> orders, double energy);
  const std::vector<SpinOrder>& orders() const noexcept { return orders_; }
  double energy() const noexcept { return energy_; }

 private:
  std::vector<SpinOrder> orders_;
  double energy_;
};

/// Exhaustive scan over the 2^(N-1) configurations with ion 1 up. Ties are
/// configurations within 1e-10 * max(1, |E_min|) of the minimum.
ClassicalGround classical_ground(const CouplingMatrix& j);

}  // namespace ionspin
