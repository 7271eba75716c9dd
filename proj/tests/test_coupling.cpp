#include <cmath>

#include "doctest.h"
#include "ionspin/coupling.hpp"
#include "ionspin/error.hpp"

using namespace ionspin;

TEST_CASE("rescaled detuning") {
  const ChainCouplings three(TrapConfig{3, 10.0});
  const auto& w = three.spectrum().frequencies;
  const auto spec = resolve_detuning(three.spectrum(), 2.75);
  CHECK(spec.lower_mode == 2);
  CHECK(spec.resolved == doctest::Approx(w[1] + 0.75 * (w[2] - w[1])).epsilon(1e-15));

  const ChainCouplings two(TrapConfig{2, 10.0});
  CHECK(std::abs(resolve_detuning(two.spectrum(), 1.5).resolved - (std::sqrt(99.0) + 10.0) / 2) <
        1e-12);
}

TEST_CASE("detuning domain") {
  const ChainCouplings seven(TrapConfig{7, 10.0});
  CHECK_THROWS_AS(seven.at(5.0), ResonanceError);
  CHECK_THROWS_AS(seven.at(5.0 + 5e-7), ResonanceError);
  CHECK_THROWS_AS(seven.at(7.0), ResonanceError);
  CHECK_THROWS_AS(seven.at(1.0), ResonanceError);
  CHECK_THROWS_AS(seven.at(0.5), OutOfRange);
  CHECK_THROWS_AS(seven.at(7.5), OutOfRange);
  CHECK_THROWS_AS(seven.at(NAN), OutOfRange);
  CHECK_NOTHROW(seven.at(5.0 + 2e-6));
}

TEST_CASE("two-ion coupling closed form") {
  const ChainCouplings two(TrapConfig{2, 10.0});
  const auto j = two.at(1.5);
  const double mu = (std::sqrt(99.0) + 10.0) / 2;
  const double d = mu * mu - 100.0;
  const double expected = 0.5 * (1.0 / d - 1.0 / (d + 1.0));
  CHECK(j(0, 1) == doctest::Approx(expected).epsilon(1e-10));
  CHECK(j(0, 1) < 0);
  CHECK(j(0, 0) == 0.0);
  CHECK(j.jbar() == doctest::Approx(std::abs(expected)).epsilon(1e-10));
}

TEST_CASE("five-ion couplings against extended-precision summation") {
  const ChainCouplings five(TrapConfig{5, 10.0});
  const auto& sp = five.spectrum();
  const auto j = five.at(3.4);
  const long double w3 = sp.frequencies[2], w4 = sp.frequencies[3];
  const long double mu = w3 + 0.4L * (w4 - w3);
  long double sumsq = 0.0L;
  for (int m = 0; m < 5; ++m) {
    for (int n = 0; n < 5; ++n) {
      long double ref = 0.0L;
      if (m != n) {
        for (int k = 0; k < 5; ++k) {
          const long double wk = sp.frequencies[k];
          ref += static_cast<long double>(sp.modes(m, k)) * sp.modes(n, k) / (mu * mu - wk * wk);
        }
      }
      sumsq += ref * ref;
      CHECK(std::abs(static_cast<double>(j(m, n) - ref)) < 1e-12);
    }
  }
  CHECK(std::abs(j.jbar() - static_cast<double>(std::sqrt(sumsq / 20.0L))) < 1e-12);
}

TEST_CASE("coupling matrix invariants") {
  const ChainCouplings nine(TrapConfig{9, 10.0});
  for (double mu : {1.3, 2.5, 4.9, 7.01, 8.99}) {
    const auto j = nine.at(mu);
    REQUIRE(j.detuning().has_value());
    CHECK(j.detuning()->rescaled == mu);
    CHECK(j.aspect_ratio() == doctest::Approx(10.0));
    for (int m = 0; m < 9; ++m) {
      CHECK(j(m, m) == 0.0);
      for (int n = 0; n < 9; ++n) CHECK(j(m, n) == j(n, m));
    }
    CHECK(j.jbar() == doctest::Approx(rms_coupling(9, j.values())).epsilon(1e-15));
  }
}

TEST_CASE("seven-ion bond graph around the ferromagnet-kink transition") {
  const ChainCouplings seven(TrapConfig{7, 10.0});
  const auto j51 = seven.at(5.1);
  const auto j53 = seven.at(5.3);

  CHECK(j51(0, 6) > 0);
  const auto bonds = bond_graph(j51);
  REQUIRE(bonds.size() == 21);
  bool top3 = false;
  for (int i = 0; i < 3; ++i) top3 = top3 || (bonds[i].m == 0 && bonds[i].n == 6);
  CHECK(top3);
  for (std::size_t i = 1; i < bonds.size(); ++i) CHECK(bonds[i - 1].weight >= bonds[i].weight);
  for (const Bond& b : bonds) {
    CHECK(b.m < b.n);
    CHECK(b.weight == std::abs(b.value));
    CHECK((b.kind == BondKind::ferromagnetic) == (b.value < 0));
  }

  CHECK(j51(0, 4) < 0);
  CHECK(j51(2, 6) < 0);
  CHECK(std::abs(j53(0, 4)) < std::abs(j51(0, 4)));
  CHECK(std::abs(j53(2, 6)) < std::abs(j51(2, 6)));
}

TEST_CASE("bond graph edge cases") {
  const auto bonds = bond_graph(ChainCouplings(TrapConfig{2, 10.0}).at(1.5));
  REQUIRE(bonds.size() == 1);
  CHECK(bonds[0].m == 0);
  CHECK(bonds[0].n == 1);
  CHECK(bonds[0].kind == BondKind::ferromagnetic);

  const auto tied = bond_graph(CouplingMatrix::from_values(3, {0, 1, -1, 1, 0, 1, -1, 1, 0}));
  CHECK(tied[0].m == 0);
  CHECK(tied[0].n == 1);
  CHECK(tied[1].n == 2);
  CHECK(tied[2].m == 1);
}

TEST_CASE("from_values") {
  const auto j = CouplingMatrix::from_values(2, {5.0, -2.0, -2.0, 7.0});
  CHECK(j(0, 0) == 0.0);
  CHECK(j(1, 1) == 0.0);
  CHECK(j.jbar() == doctest::Approx(2.0));
  CHECK_FALSE(j.detuning().has_value());
  CHECK_THROWS_AS(CouplingMatrix::from_values(2, {0.0, 1.0, 2.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(CouplingMatrix::from_values(2, {0.0, 1.0, 1.0}), ConfigError);
}
