#include "ionspin/simd/kernels.hpp"

#include <cmath>

namespace ionspin::simd::detail {
namespace {

void diagonal_energies_scalar(const PairTerm* terms, std::size_t n_terms, std::uint64_t first,
                              std::size_t count, double* out) {
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = first + i;
    double sum = 0.0;
    double comp = 0.0;
    for (std::size_t p = 0; p < n_terms; ++p) {
      const std::uint64_t differ = ((s >> terms[p].shift_a) ^ (s >> terms[p].shift_b)) & 1U;
      const double x = differ ? -terms[p].weight : terms[p].weight;
      const double t = sum + x;
      if (std::abs(sum) >= std::abs(x)) {
        comp += (sum - t) + x;
      } else {
        comp += (x - t) + sum;
      }
      sum = t;
    }
    out[i] = sum + comp;
  }
}

void apply_ising_scalar(const double* diag, const double* in, double* out, std::size_t dim,
                        int flip_bits, double field, int reversal_sign) {
  const double sign = static_cast<double>(reversal_sign);
  for (std::size_t s = 0; s < dim; ++s) {
    double acc = 0.0;
    for (int b = 0; b < flip_bits; ++b) {
      acc += in[s ^ (std::size_t{1} << b)];
    }
    if (reversal_sign != 0) {
      acc += sign * in[dim - 1 - s];
    }
    out[s] = diag[s] * in[s] - field * acc;
  }
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += a[i] * b[i];
  }
  return sum;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] += alpha * x[i];
  }
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{diagonal_energies_scalar, apply_ising_scalar, dot_scalar,
                                 axpy_scalar};
  return table;
}

}  // namespace ionspin::simd::detail
