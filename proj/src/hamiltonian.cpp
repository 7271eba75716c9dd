#include "ionspin/hamiltonian.hpp"

#include <cmath>
#include <fmt/format.h>

#include "ionspin/error.hpp"
#include "ionspin/simd/kernels.hpp"
#include "ionspin/spin.hpp"

namespace ionspin {

namespace {
constexpr int kMaxOperatorSpins = 26;
}

double Field::resolve(const CouplingMatrix& j) const {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ConfigError(fmt::format("transverse field must be finite and >= 0, got {}", value));
  }
  switch (unit) {
    case Unit::absolute:
      return value;
    case Unit::jbar:
      return value * j.jbar();
    case Unit::n_jbar:
      return value * j.size() * j.jbar();
  }
  return value;
}

IsingOperator::IsingOperator(const CouplingMatrix& j, Field field, Sector sector)
    : n_(j.size()), sector_(sector), field_(field.resolve(j)) {
  if (n_ < 1 || n_ > kMaxOperatorSpins) {
    throw OutOfRange(fmt::format("Hamiltonian supports 1..{} spins, got {}", kMaxOperatorSpins, n_));
  }
  if (sector_ == Sector::full) {
    flip_bits_ = n_;
    reversal_sign_ = 0;
  } else {
    // Flipping ion 1 leaves the ion-1-up half; its representative is the
    // global flip, index dim-1-s, with sign +/-1 from the sector parity.
    flip_bits_ = n_ - 1;
    reversal_sign_ = sector_ == Sector::flip_even ? 1 : -1;
  }
  diag_.resize(std::size_t{1} << flip_bits_);
  classical_energies(j, 0, diag_);
}

void IsingOperator::apply(std::span<const double> in, std::span<double> out) const {
  if (in.size() != dimension() || out.size() != dimension()) {
    throw ConfigError(fmt::format("vector dimension {} does not match operator dimension {}",
                                  in.size(), dimension()));
  }
  simd::apply_ising(diag_, in, out, flip_bits_, field_, reversal_sign_);
}

std::vector<double> IsingOperator::apply(std::span<const double> in) const {
  std::vector<double> out(dimension());
  apply(in, out);
  return out;
}

Eigen::MatrixXd IsingOperator::dense() const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    h(s, s) = diag_[static_cast<std::size_t>(s)];
    for (int b = 0; b < flip_bits_; ++b) {
      h(s, s ^ (Eigen::Index{1} << b)) -= field_;
    }
    if (reversal_sign_ != 0) {
      h(s, dim - 1 - s) -= field_ * reversal_sign_;
    }
  }
  return h;
}

std::vector<double> IsingOperator::embed(std::span<const double> v) const {
  if (v.size() != dimension()) throw ConfigError("embed: wrong vector dimension");
  if (sector_ == Sector::full) return {v.begin(), v.end()};

  const std::size_t full_dim = std::size_t{1} << n_;
  const std::size_t mask = full_dim - 1;
  const double scale = 1.0 / std::sqrt(2.0);
  std::vector<double> out(full_dim, 0.0);
  for (std::size_t s = 0; s < v.size(); ++s) {
    out[s] = scale * v[s];
    out[s ^ mask] = reversal_sign_ * scale * v[s];
  }
  return out;
}

std::vector<double> apply_hamiltonian(const CouplingMatrix& j, Field field,
                                      std::span<const double> v) {
  const IsingOperator h(j, field);
  return h.apply(v);
}

double transverse_expectation(int n_spins, std::span<const double> v) {
  const std::size_t dim = std::size_t{1} << n_spins;
  if (v.size() != dim) throw ConfigError("transverse_expectation: wrong vector dimension");
  // zero diagonal and field -1 leave acc[s] = sum_n v[s ^ 2^n]
  const std::vector<double> zeros(dim, 0.0);
  std::vector<double> flipped(dim);
  simd::apply_ising(zeros, v, flipped, n_spins, -1.0, 0);
  return simd::dot(v, flipped);
}

}  // namespace ionspin
