// AArch64 Advanced SIMD variants (two doubles per register).
#include <arm_neon.h>

#include "ionspin/simd/kernels.hpp"

namespace ionspin::simd::detail {
namespace {

constexpr std::size_t kLanes = 2;

void diagonal_energies_neon(const PairTerm* terms, std::size_t n_terms, std::uint64_t first,
                            std::size_t count, double* out) {
  const uint64x2_t one = vdupq_n_u64(1);
  const std::size_t blocks = count / kLanes;

  for (std::size_t blk = 0; blk < blocks; ++blk) {
    const std::uint64_t base = first + blk * kLanes;
    const std::uint64_t init[2] = {base, base + 1};
    const uint64x2_t states = vld1q_u64(init);
    float64x2_t sum = vdupq_n_f64(0.0);
    float64x2_t comp = vdupq_n_f64(0.0);
    for (std::size_t p = 0; p < n_terms; ++p) {
      const int64x2_t sa = vdupq_n_s64(-static_cast<std::int64_t>(terms[p].shift_a));
      const int64x2_t sb = vdupq_n_s64(-static_cast<std::int64_t>(terms[p].shift_b));
      const uint64x2_t differ =
          vandq_u64(veorq_u64(vshlq_u64(states, sa), vshlq_u64(states, sb)), one);
      const uint64x2_t flip = vshlq_n_u64(differ, 63);
      const float64x2_t x = vreinterpretq_f64_u64(
          veorq_u64(vreinterpretq_u64_f64(vdupq_n_f64(terms[p].weight)), flip));
      const float64x2_t t = vaddq_f64(sum, x);
      const uint64x2_t sum_larger = vcgeq_f64(vabsq_f64(sum), vabsq_f64(x));
      const float64x2_t when_sum = vaddq_f64(vsubq_f64(sum, t), x);
      const float64x2_t when_x = vaddq_f64(vsubq_f64(x, t), sum);
      comp = vaddq_f64(comp, vbslq_f64(sum_larger, when_sum, when_x));
      sum = t;
    }
    vst1q_f64(out + blk * kLanes, vaddq_f64(sum, comp));
  }

  const std::size_t done = blocks * kLanes;
  if (done < count) {
    scalar_table().diagonal_energies(terms, n_terms, first + done, count - done, out + done);
  }
}

void apply_ising_neon(const double* diag, const double* in, double* out, std::size_t dim,
                      int flip_bits, double field, int reversal_sign) {
  if (dim < kLanes) {
    scalar_table().apply_ising(diag, in, out, dim, flip_bits, field, reversal_sign);
    return;
  }
  const float64x2_t vfield = vdupq_n_f64(field);
  const float64x2_t vsign = vdupq_n_f64(static_cast<double>(reversal_sign));
  for (std::size_t s = 0; s < dim; s += kLanes) {
    const float64x2_t v = vld1q_f64(in + s);
    float64x2_t acc = vdupq_n_f64(0.0);
    acc = vaddq_f64(acc, vextq_f64(v, v, 1));
    for (int b = 1; b < flip_bits; ++b) {
      acc = vaddq_f64(acc, vld1q_f64(in + (s ^ (std::size_t{1} << b))));
    }
    if (reversal_sign != 0) {
      const float64x2_t r = vld1q_f64(in + (dim - kLanes - s));
      acc = vaddq_f64(acc, vmulq_f64(vsign, vextq_f64(r, r, 1)));
    }
    const float64x2_t d = vld1q_f64(diag + s);
    vst1q_f64(out + s, vsubq_f64(vmulq_f64(d, v), vmulq_f64(vfield, acc)));
  }
}

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  double sum = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) {
    sum += a[i] * b[i];
  }
  return sum;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) {
    y[i] += alpha * x[i];
  }
}

}  // namespace

const KernelTable& neon_table() noexcept {
  static const KernelTable table{diagonal_energies_neon, apply_ising_neon, dot_neon, axpy_neon};
  return table;
}

}  // namespace ionspin::simd::detail
