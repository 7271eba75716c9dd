#include "ionspin/eigensolver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

#include "ionspin/error.hpp"
#include "ionspin/simd/kernels.hpp"
#include "lanczos.hpp"

namespace ionspin {
namespace {

constexpr double kDenseResidual = 1e-9;

double residual_norm(const IsingOperator& h, std::span<const double> v, double e) {
  std::vector<double> r = h.apply(v);
  simd::axpy(-e, v, r);
  return std::sqrt(simd::dot(r, r));
}

SpectrumResult diagonal_solve(const IsingOperator& h, int k) {
  const auto diag = h.diagonal();
  std::vector<std::size_t> order(diag.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return diag[a] < diag[b]; });

  SpectrumResult out;
  out.method = "diagonal";
  for (int i = 0; i < k; ++i) {
    std::vector<double> v(h.dimension(), 0.0);
    v[order[i]] = 1.0;
    out.eigenvalues.push_back(diag[order[i]]);
    out.residuals.push_back(0.0);
    out.eigenvectors.push_back(h.embed(v));
  }
  return out;
}

SpectrumResult dense_solve(const IsingOperator& h, int k) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.dense());
  if (solver.info() != Eigen::Success) {
    throw SolverError("dense diagonalization failed", 0, 0.0);
  }
  SpectrumResult out;
  out.method = "dense";
  for (int i = 0; i < k; ++i) {
    const double e = solver.eigenvalues()[i];
    const Eigen::VectorXd col = solver.eigenvectors().col(i);
    const std::span<const double> v(col.data(), static_cast<std::size_t>(col.size()));
    const double res = residual_norm(h, v, e);
    if (res > kDenseResidual * std::max(1.0, std::abs(e))) {
      throw SolverError(fmt::format("dense eigenpair {} residual {:.3e} too large", i, res), 0,
                        res);
    }
    out.eigenvalues.push_back(e);
    out.residuals.push_back(res);
    out.eigenvectors.push_back(h.embed(v));
  }
  return out;
}

SpectrumResult iterative_solve(const IsingOperator& h, int k, const EigenOptions& options) {
  detail::LanczosResult lz = detail::lanczos_lowest(h, k, options);
  SpectrumResult out;
  out.method = "lanczos";
  out.iterations = lz.iterations;
  out.eigenvalues = std::move(lz.values);
  out.residuals = std::move(lz.residuals);
  for (const auto& v : lz.vectors) out.eigenvectors.push_back(h.embed(v));
  return out;
}

}  // namespace

SpectrumResult lowest_eigenpairs(const IsingOperator& h, int k, const EigenOptions& options) {
  const std::size_t dim = h.dimension();
  const int limit = static_cast<int>(std::min<std::size_t>(kMaxEigenpairs, dim));
  if (k < 1 || k > limit) {
    throw ConfigError(fmt::format("requested {} eigenpairs, allowed 1..{}", k, limit));
  }
  if (!(options.tol > 0.0)) throw ConfigError("eigensolver tolerance must be positive");

  SpectrumResult out;
  switch (options.method) {
    case EigenMethod::automatic:
      if (h.field() == 0.0) {
        out = diagonal_solve(h, k);
      } else if (dim <= options.dense_limit) {
        out = dense_solve(h, k);
      } else {
        out = iterative_solve(h, k, options);
      }
      break;
    case EigenMethod::dense:
      out = dense_solve(h, k);
      break;
    case EigenMethod::iterative:
      out = iterative_solve(h, k, options);
      break;
  }
  out.n_spins = h.spins();
  out.sector = h.sector();
  out.field = h.field();
  return out;
}

SpectrumResult lowest_eigenpairs(const CouplingMatrix& j, Field field, int k,
                                 const EigenOptions& options, Sector sector) {
  const IsingOperator h(j, field, sector);
  return lowest_eigenpairs(h, k, options);
}

std::vector<int> degenerate_cluster(const SpectrumResult& result, int which) {
  if (which < 0 || which >= result.size()) {
    throw ConfigError(fmt::format("state index {} outside 0..{}", which, result.size() - 1));
  }
  const auto& e = result.eigenvalues;
  auto close = [&](int a, int b) {
    return std::abs(e[a] - e[b]) <= 1e-10 * std::max({1.0, std::abs(e[a]), std::abs(e[b])});
  };
  int lo = which;
  while (lo > 0 && close(lo - 1, lo)) --lo;
  int hi = which;
  while (hi + 1 < result.size() && close(hi, hi + 1)) ++hi;
  std::vector<int> out(static_cast<std::size_t>(hi - lo + 1));
  std::iota(out.begin(), out.end(), lo);
  return out;
}

double polarization(const SpectrumResult& result, int which) {
  const auto cluster = degenerate_cluster(result, which);
  double sum = 0.0;
  for (int i : cluster) {
    sum += transverse_expectation(result.n_spins, result.eigenvectors[i]);
  }
  return sum / (static_cast<double>(cluster.size()) * result.n_spins);
}

double subspace_projection(const SpectrumResult& result, std::span<const SpinConfig> basis,
                           int which) {
  if (basis.empty()) throw ConfigError("projection basis is empty");
  for (std::size_t a = 0; a < basis.size(); ++a) {
    if (basis[a].size() != result.n_spins) {
      throw ConfigError("projection basis has the wrong spin count");
    }
    for (std::size_t b = a + 1; b < basis.size(); ++b) {
      if (basis[a] == basis[b]) throw ConfigError("projection basis entries must be distinct");
    }
  }
  const auto cluster = degenerate_cluster(result, which);
  double sum = 0.0;
  for (int i : cluster) {
    for (const SpinConfig& s : basis) {
      const double amp = result.eigenvectors[i][s.index()];
      sum += amp * amp;
    }
  }
  return sum / static_cast<double>(cluster.size());
}

}  // namespace ionspin
