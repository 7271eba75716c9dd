#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "doctest.h"
#include "ionspin/error.hpp"
#include "ionspin/hamiltonian.hpp"
#include "ionspin/simd/kernels.hpp"

using namespace ionspin;

namespace {

CouplingMatrix random_couplings(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int m = 0; m < n; ++m)
    for (int p = m + 1; p < n; ++p) v[m * n + p] = v[p * n + m] = g(rng);
  return CouplingMatrix::from_values(n, v);
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Pauli operator on `ion`, ion 0 being the most significant tensor factor.
Eigen::MatrixXd site(int n, int ion, const Eigen::MatrixXd& op) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
  for (int i = 0; i < n; ++i) out = kron(out, i == ion ? op : Eigen::MatrixXd::Identity(2, 2));
  return out;
}

Eigen::MatrixXd kronecker_hamiltonian(const CouplingMatrix& j, double b) {
  const int n = j.size();
  Eigen::MatrixXd sz(2, 2), sx(2, 2);
  sz << 1, 0, 0, -1;
  sx << 0, 1, 1, 0;
  const int dim = 1 << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int m = 0; m < n; ++m) {
    for (int p = m + 1; p < n; ++p) h += 2.0 * j(m, p) * site(n, m, sz) * site(n, p, sz);
    h -= b * site(n, m, sx);
  }
  return h;
}

Eigen::VectorXd sorted_eigenvalues(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues();
}

}  // namespace

TEST_CASE("single spin in a unit field") {
  const auto j = CouplingMatrix::from_values(1, {0.0});
  const auto out = apply_hamiltonian(j, Field::absolute(1.0), std::vector<double>{1.0, 0.0});
  CHECK(out[0] == 0.0);
  CHECK(out[1] == -1.0);  // H = -B sx
}

TEST_CASE("matrix-free H against a Kronecker-product construction") {
  const auto j = random_couplings(6, 11);
  const double b = 0.7;
  const auto h = kronecker_hamiltonian(j, b);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd v(64);
    for (auto& x : v) x = u(rng);
    const Eigen::VectorXd ref = h * v;
    const auto got = apply_hamiltonian(j, Field::absolute(b), std::vector<double>(v.data(), v.data() + 64));
    for (int i = 0; i < 64; ++i) CHECK(std::abs(got[i] - ref[i]) < 1e-12);
  }
  CHECK((IsingOperator(j, Field::absolute(b)).dense() - h).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("field units") {
  const auto j = random_couplings(5, 2);
  CHECK(Field::absolute(0.3).resolve(j) == 0.3);
  CHECK(Field::in_jbar(0.3).resolve(j) == doctest::Approx(0.3 * j.jbar()));
  CHECK(Field::in_n_jbar(0.3).resolve(j) == doctest::Approx(1.5 * j.jbar()));
  CHECK_THROWS_AS(Field::absolute(-1.0).resolve(j), ConfigError);
  CHECK_THROWS_AS(Field::absolute(INFINITY).resolve(j), ConfigError);
}

TEST_CASE("flip sectors split the full spectrum") {
  const auto j = random_couplings(6, 4);
  const Field f = Field::absolute(0.4);
  const IsingOperator full(j, f), even(j, f, Sector::flip_even), odd(j, f, Sector::flip_odd);
  CHECK(even.dimension() == 32);
  CHECK(odd.dimension() == 32);
  Eigen::VectorXd both(64);
  both << sorted_eigenvalues(even.dense()), sorted_eigenvalues(odd.dense());
  std::sort(both.data(), both.data() + 64);
  const Eigen::VectorXd ref = sorted_eigenvalues(full.dense());
  CHECK((both - ref).cwiseAbs().maxCoeff() < 1e-12);

  std::vector<double> v(32);
  for (int i = 0; i < 32; ++i) v[i] = std::sin(i + 1.0);
  for (const IsingOperator* h : {&even, &odd}) {
    const auto e = h->embed(v);
    const auto he = full.apply(e);
    const auto hv = h->embed(h->apply(v));
    for (int i = 0; i < 64; ++i) CHECK(std::abs(he[i] - hv[i]) < 1e-12);
    const double sign = h == &even ? 1.0 : -1.0;
    for (int i = 0; i < 64; ++i) CHECK(e[i] == doctest::Approx(sign * e[63 - i]));
  }
}

TEST_CASE("spectrum is gauge and reflection invariant") {
  const int n = 6;
  const auto j = random_couplings(n, 9);
  const Eigen::VectorXd ref = sorted_eigenvalues(IsingOperator(j, Field::absolute(0.5)).dense());

  const int g[n] = {1, -1, -1, 1, -1, 1};
  std::vector<double> gauged(n * n), mirrored(n * n);
  for (int m = 0; m < n; ++m) {
    for (int p = 0; p < n; ++p) {
      gauged[m * n + p] = g[m] * g[p] * j(m, p);
      mirrored[m * n + p] = j(n - 1 - m, n - 1 - p);
    }
  }
  for (const auto& vals : {gauged, mirrored}) {
    const auto jj = CouplingMatrix::from_values(n, vals);
    const Eigen::VectorXd got = sorted_eigenvalues(IsingOperator(jj, Field::absolute(0.5)).dense());
    CHECK((got - ref).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("transverse expectation") {
  std::vector<double> plus(8, 1.0 / std::sqrt(8.0));
  CHECK(transverse_expectation(3, plus) == doctest::Approx(3.0));
  std::vector<double> up(8, 0.0);
  up[0] = 1.0;
  CHECK(transverse_expectation(3, up) == 0.0);
}

TEST_CASE("operator limits") {
  CHECK_THROWS_AS(IsingOperator(random_couplings(27, 1), Field::absolute(1.0)), ConfigError);
}

TEST_CASE("SIMD kernels agree with the scalar reference") {
  using namespace ionspin::simd;
  const auto& ref = kernels(Isa::scalar);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1, 1);

  for (Isa isa : available_isas()) {
    CAPTURE(isa_name(isa));
    const auto& k = kernels(isa);
    for (int n : {1, 2, 3, 5, 8, 11}) {
      std::vector<PairTerm> terms;
      for (int m = 0; m < n; ++m)
        for (int p = m + 1; p < n; ++p)
          terms.push_back({u(rng), static_cast<std::uint32_t>(n - 1 - m), static_cast<std::uint32_t>(n - 1 - p)});
      const std::size_t dim = std::size_t{1} << n;
      for (std::uint64_t first : {std::uint64_t{0}, std::uint64_t{3}}) {
        if (first >= dim) continue;
        const std::size_t count = dim - first;
        std::vector<double> a(count), b(count);
        diagonal_energies(terms, first, a, ref);
        diagonal_energies(terms, first, b, k);
        CHECK(a == b);
      }

      std::vector<double> diag(dim), in(dim), out_ref(dim), out(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        diag[i] = u(rng);
        in[i] = u(rng);
      }
      for (int sign : {0, 1, -1}) {
        if (sign != 0 && n < 2) continue;
        const int bits = sign == 0 ? n : std::max(0, n - 1);
        const std::size_t d = std::size_t{1} << bits;
        std::span<const double> dg(diag.data(), d), iv(in.data(), d);
        apply_ising(dg, iv, std::span<double>(out_ref.data(), d), bits, 0.37, sign, ref);
        apply_ising(dg, iv, std::span<double>(out.data(), d), bits, 0.37, sign, k);
        CHECK(std::equal(out.begin(), out.begin() + d, out_ref.begin()));
      }

      const double dr = dot(in, diag, ref);
      CHECK(dot(in, diag, k) == doctest::Approx(dr).epsilon(1e-13));
      std::vector<double> y1 = in, y2 = in;
      axpy(0.25, diag, y1, ref);
      axpy(0.25, diag, y2, k);
      CHECK(y1 == y2);
    }
  }
  CHECK(isa_available(Isa::scalar));
  CHECK(isa_available(active_isa()));
}
