#include "ionspin/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

#include "ionspin/error.hpp"

namespace ionspin {

DetuningSpec resolve_detuning(const ModeSpectrum& spectrum, double rescaled) {
  const int n = spectrum.size();
  if (!std::isfinite(rescaled)) throw OutOfRange("rescaled detuning must be finite");

  const double nearest = std::round(rescaled);
  if (nearest >= 1.0 && nearest <= n && std::abs(rescaled - nearest) < kResonanceGuard) {
    throw ResonanceError(
        fmt::format("rescaled detuning {} is on phonon mode {}", rescaled, nearest));
  }
  if (!(rescaled > 1.0 && rescaled < n)) {
    throw OutOfRange(fmt::format("rescaled detuning {} outside (1, {})", rescaled, n));
  }

  const int k = static_cast<int>(std::floor(rescaled));
  const double frac = rescaled - k;
  const double lo = spectrum.frequencies[k - 1];
  const double hi = spectrum.frequencies[k];
  return {rescaled, lo + frac * (hi - lo), k};
}

double rms_coupling(int n, std::span<const double> values) {
  if (n < 2) return 0.0;
  double sum = 0.0;
  for (int m = 0; m < n; ++m) {
    for (int p = 0; p < n; ++p) {
      if (m == p) continue;
      const double v = values[static_cast<std::size_t>(m) * n + p];
      sum += v * v;
    }
  }
  return std::sqrt(sum / (static_cast<double>(n) * (n - 1)));
}

CouplingMatrix CouplingMatrix::from_values(int n, std::vector<double> values) {
  if (n < 1) throw ConfigError("coupling matrix needs at least one spin");
  if (values.size() != static_cast<std::size_t>(n) * n) {
    throw ConfigError(fmt::format("expected {} coupling entries, got {}", n * n, values.size()));
  }
  for (int m = 0; m < n; ++m) {
    values[static_cast<std::size_t>(m) * n + m] = 0.0;
    for (int p = m + 1; p < n; ++p) {
      if (values[static_cast<std::size_t>(m) * n + p] != values[static_cast<std::size_t>(p) * n + m]) {
        throw ConfigError(fmt::format("couplings not symmetric at ({}, {})", m + 1, p + 1));
      }
    }
  }
  CouplingMatrix j;
  j.n_ = n;
  j.values_ = std::move(values);
  j.jbar_ = rms_coupling(n, j.values_);
  return j;
}

CouplingMatrix coupling_matrix(const ModeSpectrum& spectrum, const DetuningSpec& detuning) {
  const int n = spectrum.size();
  const double mu2 = detuning.resolved * detuning.resolved;
  std::vector<double> inv(n);
  for (int k = 0; k < n; ++k) {
    const double denom = mu2 - spectrum.squared[k];
    if (denom == 0.0) {
      throw ResonanceError(fmt::format("detuning exactly on mode {}", k + 1));
    }
    inv[k] = 1.0 / denom;
  }

  std::vector<double> values(static_cast<std::size_t>(n) * n, 0.0);
  for (int m = 0; m < n; ++m) {
    for (int p = m + 1; p < n; ++p) {
      double sum = 0.0;
      for (int k = 0; k < n; ++k) {
        sum += spectrum.modes(m, k) * spectrum.modes(p, k) * inv[k];
      }
      values[static_cast<std::size_t>(m) * n + p] = sum;
      values[static_cast<std::size_t>(p) * n + m] = sum;
    }
  }

  CouplingMatrix j = CouplingMatrix::from_values(n, std::move(values));
  j.detuning_ = detuning;
  j.aspect_ratio_ = spectrum.aspect_ratio;
  return j;
}

std::vector<Bond> bond_graph(const CouplingMatrix& j) {
  const int n = j.size();
  std::vector<Bond> bonds;
  bonds.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int m = 0; m < n; ++m) {
    for (int p = m + 1; p < n; ++p) {
      const double v = j(m, p);
      bonds.push_back({m, p, v, std::abs(v),
                       v < 0.0 ? BondKind::ferromagnetic : BondKind::antiferromagnetic});
    }
  }
  std::stable_sort(bonds.begin(), bonds.end(),
                   [](const Bond& a, const Bond& b) { return a.weight > b.weight; });
  return bonds;
}

ChainCouplings::ChainCouplings(const TrapConfig& config) : modes_(solve_chain(config)) {}

CouplingMatrix ChainCouplings::at(double rescaled) const {
  return coupling_matrix(modes_.spectrum, resolve_detuning(modes_.spectrum, rescaled));
}

}  // namespace ionspin
