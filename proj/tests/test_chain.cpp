#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "ionspin/chain.hpp"
#include "ionspin/error.hpp"

using namespace ionspin;

namespace {

double dv(const std::vector<double>& u, std::size_t i) {
  double g = u[i];
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (j == i) continue;
    const double d = u[i] - u[j];
    g -= (d > 0 ? 1.0 : -1.0) / (d * d);
  }
  return g;
}

// One-coordinate Newton sweeps until the gradient vanishes.
std::vector<double> coordinate_descent(int n) {
  std::vector<double> u(n);
  for (int i = 0; i < n; ++i) u[i] = 1.5 * (i - (n - 1) / 2.0);
  for (int sweep = 0; sweep < 200000; ++sweep) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int it = 0; it < 3; ++it) {
        double h = 1.0;
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          h += 2.0 / std::pow(std::abs(u[i] - u[j]), 3);
        }
        double step = dv(u, i) / h;
        double room = 1e300;
        if (i > 0) room = std::min(room, u[i] - u[i - 1]);
        if (i + 1 < n) room = std::min(room, u[i + 1] - u[i]);
        step = std::clamp(step, -0.4 * room, 0.4 * room);
        u[i] -= step;
      }
    }
    for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(dv(u, i)));
    if (worst < 1e-14) break;
  }
  return u;
}

double transverse_potential(const std::vector<double>& u, const std::vector<double>& x,
                            double beta) {
  double v = 0.0;
  for (std::size_t n = 0; n < u.size(); ++n) {
    v += 0.5 * beta * beta * x[n] * x[n];
    for (std::size_t m = n + 1; m < u.size(); ++m) {
      const double du = u[m] - u[n];
      const double dx = x[m] - x[n];
      v += 1.0 / std::sqrt(du * du + dx * dx);
    }
  }
  return v;
}

long double det_shifted(const Eigen::MatrixXd& a, long double lambda) {
  const int n = static_cast<int>(a.rows());
  std::vector<long double> m(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i * n + j] = a(i, j) - (i == j ? lambda : 0.0L);
  long double det = 1.0L;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::fabs(m[r * n + c]) > std::fabs(m[piv * n + c])) piv = r;
    if (m[piv * n + c] == 0.0L) return 0.0L;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m[c * n + j], m[piv * n + j]);
      det = -det;
    }
    det *= m[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      const long double f = m[r * n + c] / m[c * n + c];
      for (int j = c; j < n; ++j) m[r * n + j] -= f * m[c * n + j];
    }
  }
  return det;
}

// Eigenvalues as sign changes of det(A - lambda I) on a fine grid, then bisection.
std::vector<double> characteristic_roots(const Eigen::MatrixXd& a) {
  double lo = 1e300, hi = -1e300;
  for (int i = 0; i < a.rows(); ++i) {
    double r = 0.0;
    for (int j = 0; j < a.cols(); ++j)
      if (j != i) r += std::abs(a(i, j));
    lo = std::min(lo, a(i, i) - r);
    hi = std::max(hi, a(i, i) + r);
  }
  lo -= 1.0;
  hi += 1.0;
  const int steps = 200000;
  std::vector<double> roots;
  long double prev = det_shifted(a, lo);
  for (int s = 1; s <= steps; ++s) {
    const long double x0 = lo + (hi - lo) * (s - 1) / steps;
    const long double x1 = lo + (hi - lo) * static_cast<long double>(s) / steps;
    const long double cur = det_shifted(a, x1);
    if ((prev < 0) != (cur < 0)) {
      long double p = x0, q = x1, fp = prev;
      for (int it = 0; it < 200; ++it) {
        const long double mid = 0.5L * (p + q);
        const long double fm = det_shifted(a, mid);
        if ((fm < 0) == (fp < 0)) {
          p = mid;
          fp = fm;
        } else {
          q = mid;
        }
      }
      roots.push_back(static_cast<double>(0.5L * (p + q)));
    }
    prev = cur;
  }
  return roots;
}

}  // namespace

TEST_CASE("two- and three-ion equilibria match closed forms") {
  const auto two = equilibrium_positions({2, 10.0});
  CHECK(two.positions[0] == doctest::Approx(-std::pow(2.0, -2.0 / 3.0)).epsilon(1e-12));
  CHECK(two.positions[1] == doctest::Approx(std::pow(2.0, -2.0 / 3.0)).epsilon(1e-12));

  const auto three = equilibrium_positions({3, 10.0});
  const double c = std::cbrt(1.25);
  CHECK(std::abs(three.positions[0] + c) < 1e-10);
  CHECK(std::abs(three.positions[1]) < 1e-10);
  CHECK(std::abs(three.positions[2] - c) < 1e-10);
}

TEST_CASE("positions are ascending, symmetric and at rest") {
  for (int n = 2; n <= 15; ++n) {
    const auto chain = equilibrium_positions({n, 10.0});
    CHECK(std::is_sorted(chain.positions.begin(), chain.positions.end()));
    CHECK(chain.gradient_norm <= 1e-12);
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(chain.positions[i] + chain.positions[n - 1 - i]) < 1e-12);
    }
  }
}

TEST_CASE("seven-ion positions agree with coordinate descent") {
  const auto chain = equilibrium_positions({7, 10.0});
  const auto oracle = coordinate_descent(7);
  for (int i = 0; i < 7; ++i) CHECK(std::abs(chain.positions[i] - oracle[i]) < 1e-10);
}

TEST_CASE("stiffness matrix") {
  SUBCASE("two ions") {
    const auto a = transverse_mode_matrix(equilibrium_positions({2, 10.0}));
    CHECK(a(0, 0) == doctest::Approx(99.5).epsilon(1e-13));
    CHECK(a(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(a(0, 1) == a(1, 0));
  }
  SUBCASE("rows sum to beta squared") {
    for (double beta : {3.0, 10.0, 25.0}) {
      const auto a = transverse_mode_matrix(equilibrium_positions({9, beta}));
      CHECK(a == a.transpose());
      for (int i = 0; i < 9; ++i) CHECK(a.row(i).sum() == doctest::Approx(beta * beta).epsilon(1e-13));
    }
  }
  SUBCASE("five ions against a finite-difference Hessian") {
    const double beta = 10.0;
    const auto chain = equilibrium_positions({5, beta});
    const auto a = transverse_mode_matrix(chain);
    const double h = 1e-4;
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        auto at = [&](double di, double dj) {
          std::vector<double> x(5, 0.0);
          x[i] += di;
          x[j] += dj;
          return transverse_potential(chain.positions, x, beta);
        };
        const double fd = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h);
        CHECK(std::abs(fd - a(i, j)) < 1e-6);
      }
    }
  }
}

TEST_CASE("mode spectrum") {
  SUBCASE("two ions") {
    const auto modes = solve_chain({2, 10.0}).spectrum;
    CHECK(std::abs(modes.frequencies[0] - std::sqrt(99.0)) < 1e-12);
    CHECK(std::abs(modes.frequencies[1] - 10.0) < 1e-12);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(std::abs(modes.modes(0, 0)) - r) < 1e-12);
    CHECK(modes.modes(0, 0) * modes.modes(1, 0) < 0);
    CHECK(std::abs(modes.modes(0, 1) - r) < 1e-12);
    CHECK(std::abs(modes.modes(1, 1) - r) < 1e-12);
  }
  SUBCASE("seven ions against characteristic-polynomial roots") {
    const auto a = transverse_mode_matrix(equilibrium_positions({7, 10.0}));
    const auto roots = characteristic_roots(a);
    REQUIRE(roots.size() == 7);
    const auto modes = mode_spectrum(a);
    for (int k = 0; k < 7; ++k) CHECK(std::abs(modes.frequencies[k] - std::sqrt(roots[k])) < 1e-8);
  }
  SUBCASE("top mode is the centre of mass at beta") {
    for (int n = 2; n <= 11; ++n) {
      const auto modes = solve_chain({n, 10.0}).spectrum;
      CHECK(std::abs(modes.frequencies[n - 1] - 10.0) < 1e-10);
      for (int i = 0; i < n; ++i) CHECK(std::abs(modes.modes(i, n - 1) - 1.0 / std::sqrt(n)) < 1e-10);
      CHECK(modes.aspect_ratio == doctest::Approx(10.0).epsilon(1e-12));
    }
  }
  SUBCASE("orthonormal, ascending, sign convention") {
    const auto modes = solve_chain({9, 10.0}).spectrum;
    const Eigen::MatrixXd gram = modes.modes.transpose() * modes.modes;
    CHECK((gram - Eigen::MatrixXd::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::is_sorted(modes.frequencies.begin(), modes.frequencies.end()));
    for (int k = 0; k < 9; ++k) {
      Eigen::Index idx = 0;
      const double top = modes.modes.col(k).cwiseAbs().maxCoeff(&idx);
      Eigen::Index first = 0;
      while (std::abs(modes.modes(first, k)) < top - 1e-12) ++first;
      CHECK(modes.modes(first, k) > 0);
    }
  }
}

TEST_CASE("zigzag stability") {
  CHECK(zigzag_stability(solve_chain({7, 10.0}).spectrum));
  CHECK(zigzag_stability(solve_chain({2, 1.0001}).spectrum));
  const auto a = transverse_mode_matrix(equilibrium_positions({2, 0.9}));
  CHECK_FALSE(zigzag_stability(decompose_modes(a)));
  CHECK_THROWS_AS(mode_spectrum(a), ZigzagInstability);
  CHECK_THROWS_AS(solve_chain({2, 0.9}), ZigzagInstability);
}

TEST_CASE("softest mode softens with chain length") {
  double prev = 1e300;
  for (int n = 2; n <= 11; ++n) {
    const double w1 = solve_chain({n, 10.0}).spectrum.frequencies[0];
    CHECK(w1 < prev);
    prev = w1;
  }
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(equilibrium_positions({1, 10.0}), ConfigError);
  CHECK_THROWS_AS(equilibrium_positions({3, 0.0}), ConfigError);
  CHECK_THROWS_AS(equilibrium_positions({3, -2.0}), ConfigError);
}
