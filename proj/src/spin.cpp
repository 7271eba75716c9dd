#include "ionspin/spin.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fmt/format.h>

#include "ising_terms.hpp"

namespace ionspin {

SpinConfig::SpinConfig(int n_spins, std::uint64_t index) : n_(n_spins), index_(index) {
  if (n_spins < 1 || n_spins > kMaxSpins) {
    throw ConfigError(fmt::format("spin count {} outside [1, {}]", n_spins, kMaxSpins));
  }
  if (index >> n_spins) {
    throw ConfigError(fmt::format("index {} does not fit {} spins", index, n_spins));
  }
}

SpinConfig SpinConfig::from_string(std::string_view bits) {
  std::uint64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw ConfigError(fmt::format("bad spin string '{}'", bits));
    index = (index << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return SpinConfig(static_cast<int>(bits.size()), index);
}

SpinConfig SpinConfig::flipped() const noexcept {
  SpinConfig out = *this;
  out.index_ = index_ ^ ((std::uint64_t{1} << n_) - 1);
  return out;
}

SpinConfig SpinConfig::reversed() const noexcept {
  std::uint64_t r = 0;
  for (int i = 0; i < n_; ++i) {
    r |= ((index_ >> i) & 1U) << (n_ - 1 - i);
  }
  SpinConfig out = *this;
  out.index_ = r;
  return out;
}

std::string SpinConfig::to_string() const {
  std::string s(static_cast<std::size_t>(n_), '0');
  for (int i = 0; i < n_; ++i) {
    if (down(i)) s[i] = '1';
  }
  return s;
}

std::vector<SpinConfig> SpinOrder::orbit() const {
  std::vector<SpinConfig> out{canonical, canonical.flipped(), canonical.reversed(),
                              canonical.reversed().flipped()};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SpinOrder canonicalize(SpinConfig s) {
  SpinOrder probe{s, 0};
  const auto members = probe.orbit();
  return {members.front(), static_cast<int>(members.size())};
}

std::array<SpinConfig, 2> ferro_basis(int n) {
  const SpinConfig up(n, 0);
  return {up, up.flipped()};
}

std::array<SpinConfig, 4> kink_basis(int n) {
  if (n < 3 || n % 2 == 0) {
    throw ConfigError(fmt::format("kink basis needs odd N >= 3, got {}", n));
  }
  const int b = (n - 1) / 2;
  const int a = n - b;
  // 0^a 1^b has its low b bits set
  const SpinConfig long_up(n, (std::uint64_t{1} << b) - 1);
  const SpinConfig short_up(n, (std::uint64_t{1} << a) - 1);
  return {long_up, short_up, long_up.flipped(), short_up.flipped()};
}

int hamming_distance(SpinConfig a, SpinConfig b) {
  if (a.size() != b.size()) throw ConfigError("hamming distance needs equal spin counts");
  const int direct = std::popcount(a.index() ^ b.index());
  return std::min(direct, a.size() - direct);
}

void classical_energies(const CouplingMatrix& j, std::uint64_t first, std::span<double> out) {
  const auto terms = detail::ising_terms(j);
  simd::diagonal_energies(terms, first, out);
}

double classical_energy(const CouplingMatrix& j, SpinConfig s) {
  if (s.size() != j.size()) {
    throw ConfigError(fmt::format("config has {} spins, couplings {}", s.size(), j.size()));
  }
  double e = 0.0;
  classical_energies(j, s.index(), std::span<double>(&e, 1));
  return e;
}

AmbiguousGround::AmbiguousGround(std::vector<SpinOrder> orders, double energy)
    : Error(fmt::format("classical ground state spans {} distinct spin orders", orders.size())),
      orders_(std::move(orders)),
      energy_(energy) {}

ClassicalGround classical_ground(const CouplingMatrix& j) {
  const int n = j.size();
  if (n < 1 || n > kMaxExhaustiveSpins) {
    throw OutOfRange(
        fmt::format("exhaustive search supports 1..{} spins, got {}", kMaxExhaustiveSpins, n));
  }
  // Ion 1 up: the first half of the basis. The other half follows by flip.
  const std::uint64_t half = std::uint64_t{1} << (n - 1);
  std::vector<double> energies(half);
  classical_energies(j, 0, energies);

  const double emin = *std::min_element(energies.begin(), energies.end());
  const double tie = 1e-10 * std::max(1.0, std::abs(emin));

  std::vector<SpinConfig> minimizers;
  std::vector<SpinOrder> orders;
  for (std::uint64_t s = 0; s < half; ++s) {
    if (energies[s] > emin + tie) continue;
    const SpinConfig c(n, s);
    minimizers.push_back(c);
    minimizers.push_back(c.flipped());
    const SpinOrder o = canonicalize(c);
    if (std::find(orders.begin(), orders.end(), o) == orders.end()) orders.push_back(o);
  }
  if (orders.size() != 1) {
    std::sort(orders.begin(), orders.end(),
              [](const SpinOrder& a, const SpinOrder& b) { return a.canonical < b.canonical; });
    throw AmbiguousGround(std::move(orders), emin);
  }
  std::sort(minimizers.begin(), minimizers.end());
  minimizers.erase(std::unique(minimizers.begin(), minimizers.end()), minimizers.end());
  return {orders.front(), emin, std::move(minimizers)};
}

}  // namespace ionspin
