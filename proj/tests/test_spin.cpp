#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "ionspin/error.hpp"
#include "ionspin/spin.hpp"

using namespace ionspin;

TEST_CASE("bit-string encoding") {
  const auto s = SpinConfig::from_string("0001");
  CHECK(s.size() == 4);
  CHECK(s.index() == 1);
  CHECK(s.z(0) == 1);
  CHECK(s.z(3) == -1);
  CHECK(s.to_string() == "0001");
  CHECK(s.flipped().to_string() == "1110");
  CHECK(s.reversed().to_string() == "1000");
  CHECK(SpinConfig::from_string("0110") < SpinConfig::from_string("1000"));
  CHECK_THROWS_AS(SpinConfig::from_string("01x"), ConfigError);
  CHECK_THROWS_AS(SpinConfig::from_string(""), ConfigError);
  CHECK_THROWS_AS(SpinConfig(3, 8), ConfigError);
}

TEST_CASE("canonical orders") {
  CHECK(canonicalize(SpinConfig::from_string("1111000")).canonical.to_string() == "0000111");
  CHECK(canonicalize(SpinConfig::from_string("1111000")).degeneracy == 4);
  CHECK(canonicalize(SpinConfig::from_string("010")).canonical.to_string() == "010");
  CHECK(canonicalize(SpinConfig::from_string("010")).degeneracy == 2);
  CHECK(canonicalize(SpinConfig::from_string("010")).reflection_symmetric());

  const auto order = canonicalize(SpinConfig::from_string("01001"));
  std::set<std::string> orbit;
  for (const auto& s : order.orbit()) orbit.insert(s.to_string());
  CHECK(orbit == std::set<std::string>{"01001", "10110", "10010", "01101"});
  CHECK(order.degeneracy == 4);
}

TEST_CASE("canonicalize is idempotent and orbit-invariant") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 12);
    const SpinConfig s(n, rng() & ((std::uint64_t{1} << n) - 1));
    const SpinOrder o = canonicalize(s);
    CHECK(canonicalize(o.canonical) == o);
    CHECK(canonicalize(s.flipped()) == o);
    CHECK(canonicalize(s.reversed()) == o);
    CHECK((o.degeneracy == 2 || o.degeneracy == 4));
    const auto orbit = o.orbit();
    CHECK(static_cast<int>(orbit.size()) == o.degeneracy);
    CHECK(std::is_sorted(orbit.begin(), orbit.end()));
    CHECK(orbit.front() == o.canonical);
  }
}

TEST_CASE("ferromagnetic and kink bases") {
  const auto f = ferro_basis(5);
  CHECK(f[0].to_string() == "00000");
  CHECK(f[1].to_string() == "11111");

  std::set<std::string> k7;
  for (const auto& s : kink_basis(7)) k7.insert(s.to_string());
  CHECK(k7 == std::set<std::string>{"0000111", "0001111", "1111000", "1110000"});
  std::set<std::string> k3;
  for (const auto& s : kink_basis(3)) k3.insert(s.to_string());
  CHECK(k3 == std::set<std::string>{"001", "011", "110", "100"});
  CHECK_THROWS_AS(kink_basis(4), ConfigError);
  CHECK_THROWS_AS(kink_basis(1), ConfigError);
}

TEST_CASE("ferromagnet to kink is (N-1)/2 flips") {
  for (int n : {3, 5, 7, 9, 11}) {
    CHECK(hamming_distance(ferro_basis(n)[0], canonicalize(kink_basis(n)[0]).canonical) ==
          (n - 1) / 2);
  }
  CHECK(hamming_distance(SpinConfig::from_string("000000000"),
                         SpinConfig::from_string("000001111")) == 4);
  CHECK(hamming_distance(SpinConfig::from_string("0000"), SpinConfig::from_string("1110")) == 1);
}

TEST_CASE("classical energy") {
  const auto j = CouplingMatrix::from_values(3, {0, 1, -2, 1, 0, 0.5, -2, 0.5, 0});
  // E = 2 (J12 z1 z2 + J13 z1 z3 + J23 z2 z3)
  CHECK(classical_energy(j, SpinConfig::from_string("000")) == doctest::Approx(2 * (1 - 2 + 0.5)));
  CHECK(classical_energy(j, SpinConfig::from_string("010")) == doctest::Approx(2 * (-1 - 2 - 0.5)));

  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::vector<double> v(64, 0.0);
  for (int m = 0; m < 8; ++m)
    for (int n = m + 1; n < 8; ++n) v[m * 8 + n] = v[n * 8 + m] = g(rng);
  const auto jr = CouplingMatrix::from_values(8, v);
  std::vector<double> all(256);
  classical_energies(jr, 0, all);
  for (std::uint64_t s = 0; s < 256; ++s) {
    const SpinConfig c(8, s);
    CHECK(all[s] == doctest::Approx(classical_energy(jr, c)).epsilon(1e-13));
    CHECK(all[s] == doctest::Approx(classical_energy(jr, c.flipped())).epsilon(1e-13));
  }
}

TEST_CASE("classical ground state of the seven-ion chain") {
  const ChainCouplings seven(TrapConfig{7, 10.0});
  const auto fm = classical_ground(seven.at(5.1));
  CHECK(fm.order.canonical.to_string() == "0000000");
  CHECK(fm.order.degeneracy == 2);
  CHECK(fm.minimizers.size() == 2);

  const auto j51 = seven.at(5.1);
  std::vector<double> all(128);
  classical_energies(j51, 0, all);
  CHECK(*std::min_element(all.begin(), all.end()) == doctest::Approx(all[0]).epsilon(1e-14));

  const auto kink = classical_ground(seven.at(5.3));
  CHECK(kink.order.canonical.to_string() == "0000111");
  CHECK(kink.order.degeneracy == 4);
  CHECK(kink.minimizers.size() == 4);
}

TEST_CASE("exact ties raise AmbiguousGround") {
  // Uniform ferromagnetic triangle is unambiguous; an isolated spin is not.
  const auto j = CouplingMatrix::from_values(3, {0, -1, 0, -1, 0, 0, 0, 0, 0});
  try {
    classical_ground(j);
    FAIL("expected AmbiguousGround");
  } catch (const AmbiguousGround& e) {
    CHECK(e.orders().size() == 2);
    CHECK(e.energy() == doctest::Approx(-2.0));
  }
  CHECK(classical_ground(CouplingMatrix::from_values(3, {0, -1, -1, -1, 0, -1, -1, -1, 0}))
            .order.canonical.index() == 0);
}
