#include "lanczos.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numeric>
#include <random>

#include "ionspin/error.hpp"
#include "ionspin/simd/kernels.hpp"

namespace ionspin::detail {
namespace {

using Vec = std::vector<double>;

double norm(const Vec& v) { return std::sqrt(simd::dot(v, v)); }

void scale(Vec& v, double a) {
  for (double& x : v) x *= a;
}

// Two passes of classical Gram-Schmidt against every vector in `sets`.
void orthogonalize(Vec& w, std::initializer_list<const std::vector<Vec>*> sets) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto* set : sets) {
      for (const Vec& q : *set) {
        simd::axpy(-simd::dot(q, w), q, w);
      }
    }
  }
}

Vec random_vector(std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  Vec v(dim);
  for (double& x : v) x = dist(rng);
  return v;
}

struct RitzPair {
  double value;
  Vec vector;
  double residual;
};

double residual_of(const IsingOperator& h, const Vec& x, double theta) {
  Vec r = h.apply(x);
  simd::axpy(-theta, x, r);
  return norm(r);
}

// Lanczos run from `start` on h projected off `locked`. Returns the lowest
// Ritz pair once its residual estimate meets the tolerance or the basis is
// exhausted.
RitzPair lanczos_run(const IsingOperator& h, const std::vector<Vec>& locked, Vec start,
                     std::size_t max_basis, double tol, int& steps) {
  std::vector<Vec> basis;
  std::vector<double> alpha;
  std::vector<double> beta;

  orthogonalize(start, {&locked});
  scale(start, 1.0 / norm(start));
  basis.push_back(std::move(start));

  Eigen::VectorXd ritz;
  double theta = 0.0;
  for (std::size_t j = 0; j < max_basis; ++j) {
    Vec w = h.apply(basis[j]);
    ++steps;
    const double a = simd::dot(w, basis[j]);
    alpha.push_back(a);
    orthogonalize(w, {&locked, &basis});
    const double b = norm(w);

    const bool last = j + 1 == max_basis;
    const double scale_ref = std::max(1.0, std::abs(a));
    const bool breakdown = b <= 1e-13 * scale_ref;
    if (last || breakdown || j % 4 == 3) {
      const auto m = static_cast<Eigen::Index>(alpha.size());
      Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
      Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(beta.data(), m - 1);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      theta = tri.eigenvalues()[0];
      ritz = tri.eigenvectors().col(0);
      const double estimate = b * std::abs(ritz[m - 1]);
      if (last || breakdown || estimate <= 0.1 * tol * std::max(1.0, std::abs(theta))) break;
    }
    beta.push_back(b);
    scale(w, 1.0 / b);
    basis.push_back(std::move(w));
  }

  Vec x(h.dimension(), 0.0);
  for (Eigen::Index i = 0; i < ritz.size(); ++i) {
    simd::axpy(ritz[i], basis[static_cast<std::size_t>(i)], x);
  }
  orthogonalize(x, {&locked});
  scale(x, 1.0 / norm(x));
  const Vec hx = h.apply(x);
  theta = simd::dot(x, hx);
  return {theta, x, residual_of(h, x, theta)};
}

}  // namespace

LanczosResult lanczos_lowest(const IsingOperator& h, int k, const EigenOptions& options) {
  const std::size_t dim = h.dimension();
  std::mt19937_64 rng(options.seed);
  LanczosResult out;

  // Keep the Krylov basis under ~64 MiB.
  const std::size_t memory_cap = std::max<std::size_t>(30, (std::size_t{1} << 23) / dim);
  for (int target = 0; target < k; ++target) {
    const std::size_t free_dim = dim - out.vectors.size();
    const std::size_t max_basis = std::min({free_dim, std::size_t{300}, memory_cap});

    Vec start = random_vector(dim, rng);
    int steps = 0;
    RitzPair best{0.0, {}, std::numeric_limits<double>::infinity()};
    bool converged = false;
    while (steps < options.max_iterations) {
      RitzPair pair = lanczos_run(h, out.vectors, start, max_basis, options.tol, steps);
      const double bound = options.tol * std::max(1.0, std::abs(pair.value));
      if (pair.residual < best.residual) best = pair;
      if (pair.residual <= bound) {
        converged = true;
        break;
      }
      start = pair.vector;  // explicit restart from the current Ritz vector
    }
    out.iterations += steps;
    if (!converged) {
      throw SolverError(fmt::format("Lanczos did not converge for eigenpair {} after {} steps "
                                    "(best residual {:.3e})",
                                    target, steps, best.residual),
                        steps, best.residual);
    }
    out.values.push_back(best.value);
    out.residuals.push_back(best.residual);
    out.vectors.push_back(std::move(best.vector));
  }

  std::vector<std::size_t> order(out.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return out.values[a] < out.values[b]; });
  LanczosResult sorted;
  sorted.iterations = out.iterations;
  for (std::size_t i : order) {
    sorted.values.push_back(out.values[i]);
    sorted.residuals.push_back(out.residuals[i]);
    sorted.vectors.push_back(std::move(out.vectors[i]));
  }
  return sorted;
}

}  // namespace ionspin::detail
