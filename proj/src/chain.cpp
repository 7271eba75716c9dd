#include "ionspin/chain.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "ionspin/error.hpp"

namespace ionspin {

void TrapConfig::validate() const {
  if (n_ions < 2) {
    throw ConfigError(fmt::format("need at least 2 ions, got {}", n_ions));
  }
  if (!(aspect_ratio > 0.0) || !std::isfinite(aspect_ratio)) {
    throw ConfigError(fmt::format("aspect ratio must be positive, got {}", aspect_ratio));
  }
}

namespace {

double potential(const Eigen::VectorXd& u) {
  const Eigen::Index n = u.size();
  double v = 0.5 * u.squaredNorm();
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index p = m + 1; p < n; ++p) {
      const double d = u[p] - u[m];
      if (d <= 0.0) return std::numeric_limits<double>::infinity();  // ions swapped order
      v += 1.0 / d;
    }
  }
  return v;
}

Eigen::VectorXd gradient(const Eigen::VectorXd& u) {
  const Eigen::Index n = u.size();
  Eigen::VectorXd g = u;
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index p = 0; p < n; ++p) {
      if (p == m) continue;
      const double d = u[m] - u[p];
      g[m] -= std::copysign(1.0, d) / (d * d);
    }
  }
  return g;
}

Eigen::MatrixXd hessian(const Eigen::VectorXd& u) {
  const Eigen::Index n = u.size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    h(m, m) = 1.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      if (p == m) continue;
      const double c = 2.0 / std::pow(std::abs(u[m] - u[p]), 3);
      h(m, m) += c;
      h(m, p) = -c;
    }
  }
  return h;
}

constexpr int kMaxNewtonIterations = 200;
// Below this gradient norm V can no longer resolve a decrease, so Newton
// steps are taken undamped.
constexpr double kUndampedGradient = 1e-6;

}  // namespace

IonChain equilibrium_positions(const TrapConfig& config, double tol) {
  config.validate();
  if (!(tol > 0.0)) throw ConfigError("equilibrium tolerance must be positive");

  const int n = config.n_ions;
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) {
    u[i] = 2.0 * (i - 0.5 * (n - 1));
  }

  double gnorm = std::numeric_limits<double>::infinity();
  for (int it = 0; it <= kMaxNewtonIterations; ++it) {
    const Eigen::VectorXd g = gradient(u);
    gnorm = g.lpNorm<Eigen::Infinity>();
    if (gnorm <= tol) {
      IonChain chain{config, {}, gnorm, it};
      chain.positions.assign(u.data(), u.data() + n);
      return chain;
    }
    if (it == kMaxNewtonIterations) break;

    Eigen::LDLT<Eigen::MatrixXd> ldlt(hessian(u));
    Eigen::VectorXd step = ldlt.solve(-g);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || !step.allFinite() ||
        step.dot(g) >= 0.0) {
      step = -g;
    }

    if (gnorm < kUndampedGradient) {
      u += step;
      continue;
    }
    const double v0 = potential(u);
    double t = 1.0;
    while (t > 1e-12 && !(potential(u + t * step) < v0)) {
      t *= 0.5;
    }
    u += t * step;
  }
  throw SolverError(fmt::format("equilibrium search did not converge for N={} (residual {:.3e})",
                                n, gnorm),
                    kMaxNewtonIterations, gnorm);
}

Eigen::MatrixXd transverse_mode_matrix(const IonChain& chain) {
  const auto& u = chain.positions;
  const int n = static_cast<int>(u.size());
  const double beta2 = chain.config.aspect_ratio * chain.config.aspect_ratio;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int m = 0; m < n; ++m) {
    for (int p = m + 1; p < n; ++p) {
      const double d = std::abs(u[m] - u[p]);
      if (d < 1e-9) {
        throw ConfigError(fmt::format("ions {} and {} coincide", m + 1, p + 1));
      }
      const double c = 1.0 / (d * d * d);
      a(m, p) = c;
      a(p, m) = c;
    }
  }
  for (int m = 0; m < n; ++m) {
    double lattice = 0.0;
    for (int p = 0; p < n; ++p) {
      if (p != m) lattice += a(m, p);
    }
    a(m, m) = beta2 - lattice;
  }
  return a;
}

ModeSpectrum decompose_modes(const Eigen::MatrixXd& stiffness) {
  const Eigen::Index n = stiffness.rows();
  if (n == 0 || stiffness.cols() != n) {
    throw ConfigError("stiffness matrix must be square and non-empty");
  }
  if ((stiffness - stiffness.transpose()).cwiseAbs().maxCoeff() != 0.0) {
    throw ConfigError("stiffness matrix is not symmetric");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(stiffness);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition of the stiffness matrix failed");
  }

  ModeSpectrum out;
  out.modes = solver.eigenvectors();
  out.squared.resize(n);
  out.frequencies.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lambda = solver.eigenvalues()[k];
    out.squared[k] = lambda;
    out.frequencies[k] = lambda > 0.0 ? std::sqrt(lambda) : std::numeric_limits<double>::quiet_NaN();

    auto col = out.modes.col(k);
    const double peak = col.cwiseAbs().maxCoeff();
    Eigen::Index pivot = 0;
    while (std::abs(col[pivot]) < peak - 1e-12) ++pivot;
    if (col[pivot] < 0.0) col = -col;
  }
  out.aspect_ratio = std::sqrt(std::max(0.0, stiffness.sum() / static_cast<double>(n)));
  return out;
}

ModeSpectrum mode_spectrum(const Eigen::MatrixXd& stiffness) {
  ModeSpectrum out = decompose_modes(stiffness);
  if (!zigzag_stability(out)) {
    throw ZigzagInstability(
        fmt::format("linear chain unstable: lowest transverse eigenvalue omega_1^2 = {:.6g}",
                    out.squared.front()),
        out.squared.front());
  }
  for (int k = 0; k + 1 < out.size(); ++k) {
    if (out.squared[k + 1] - out.squared[k] < 1e-9) {
      throw NumericalError(fmt::format("modes {} and {} are degenerate", k + 1, k + 2));
    }
  }
  const double scale = std::max(std::abs(out.squared.front()), std::abs(out.squared.back()));
  for (int k = 0; k < out.size(); ++k) {
    const double res =
        (stiffness * out.modes.col(k) - out.squared[k] * out.modes.col(k)).norm();
    if (res > 1e-10 * scale) {
      throw NumericalError(fmt::format("mode {} residual {:.3e} too large", k + 1, res));
    }
  }
  return out;
}

bool zigzag_stability(const ModeSpectrum& spectrum) noexcept {
  return !spectrum.squared.empty() && spectrum.squared.front() > 1e-9;
}

ChainModes solve_chain(const TrapConfig& config) {
  IonChain chain = equilibrium_positions(config);
  ModeSpectrum spectrum = mode_spectrum(transverse_mode_matrix(chain));
  return {std::move(chain), std::move(spectrum)};
}

}  // namespace ionspin
