// Compiled with -mavx2; only reached after the dispatcher has confirmed AVX2.
#include <immintrin.h>

#include "ionspin/simd/kernels.hpp"

namespace ionspin::simd::detail {
namespace {

constexpr std::size_t kLanes = 4;

void diagonal_energies_avx2(const PairTerm* terms, std::size_t n_terms, std::uint64_t first,
                            std::size_t count, double* out) {
  const __m256i lane_offsets = _mm256_set_epi64x(3, 2, 1, 0);
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const std::size_t blocks = count / kLanes;

  for (std::size_t blk = 0; blk < blocks; ++blk) {
    const __m256i states =
        _mm256_add_epi64(_mm256_set1_epi64x(static_cast<long long>(first + blk * kLanes)),
                         lane_offsets);
    __m256d sum = _mm256_setzero_pd();
    __m256d comp = _mm256_setzero_pd();
    for (std::size_t p = 0; p < n_terms; ++p) {
      const __m128i sa = _mm_cvtsi32_si128(static_cast<int>(terms[p].shift_a));
      const __m128i sb = _mm_cvtsi32_si128(static_cast<int>(terms[p].shift_b));
      const __m256i differ = _mm256_and_si256(
          _mm256_xor_si256(_mm256_srl_epi64(states, sa), _mm256_srl_epi64(states, sb)), one);
      const __m256d flip = _mm256_castsi256_pd(_mm256_slli_epi64(differ, 63));
      const __m256d x = _mm256_xor_pd(_mm256_set1_pd(terms[p].weight), flip);
      const __m256d t = _mm256_add_pd(sum, x);
      const __m256d abs_sum = _mm256_andnot_pd(sign_mask, sum);
      const __m256d abs_x = _mm256_andnot_pd(sign_mask, x);
      const __m256d sum_larger = _mm256_cmp_pd(abs_sum, abs_x, _CMP_GE_OQ);
      const __m256d when_sum = _mm256_add_pd(_mm256_sub_pd(sum, t), x);
      const __m256d when_x = _mm256_add_pd(_mm256_sub_pd(x, t), sum);
      comp = _mm256_add_pd(comp, _mm256_blendv_pd(when_x, when_sum, sum_larger));
      sum = t;
    }
    _mm256_storeu_pd(out + blk * kLanes, _mm256_add_pd(sum, comp));
  }

  const std::size_t done = blocks * kLanes;
  if (done < count) {
    scalar_table().diagonal_energies(terms, n_terms, first + done, count - done, out + done);
  }
}

void apply_ising_avx2(const double* diag, const double* in, double* out, std::size_t dim,
                      int flip_bits, double field, int reversal_sign) {
  if (dim < kLanes) {
    scalar_table().apply_ising(diag, in, out, dim, flip_bits, field, reversal_sign);
    return;
  }
  const __m256d vfield = _mm256_set1_pd(field);
  const __m256d vsign = _mm256_set1_pd(static_cast<double>(reversal_sign));
  for (std::size_t s = 0; s < dim; s += kLanes) {
    const __m256d v = _mm256_loadu_pd(in + s);
    __m256d acc = _mm256_setzero_pd();
    // bit 0: swap neighbours inside each 128-bit half
    acc = _mm256_add_pd(acc, _mm256_permute_pd(v, 0x5));
    // bit 1: swap the 128-bit halves
    acc = _mm256_add_pd(acc, _mm256_permute4x64_pd(v, 0x4E));
    for (int b = 2; b < flip_bits; ++b) {
      acc = _mm256_add_pd(acc, _mm256_loadu_pd(in + (s ^ (std::size_t{1} << b))));
    }
    if (reversal_sign != 0) {
      const __m256d rev = _mm256_permute4x64_pd(_mm256_loadu_pd(in + (dim - kLanes - s)), 0x1B);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(vsign, rev));
    }
    const __m256d d = _mm256_loadu_pd(diag + s);
    _mm256_storeu_pd(out + s, _mm256_sub_pd(_mm256_mul_pd(d, v), _mm256_mul_pd(vfield, acc)));
  }
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 * kLanes <= n; i += 2 * kLanes) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(a + i + kLanes),
                                             _mm256_loadu_pd(b + i + kLanes)));
  }
  for (; i + kLanes <= n; i += kLanes) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  acc0 = _mm256_add_pd(acc0, acc1);
  const __m128d pair = _mm_add_pd(_mm256_castpd256_pd128(acc0), _mm256_extractf128_pd(acc0, 1));
  double sum = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
  for (; i < n; ++i) {
    sum += a[i] * b[i];
  }
  return sum;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) {
    y[i] += alpha * x[i];
  }
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static const KernelTable table{diagonal_energies_avx2, apply_ising_avx2, dot_avx2, axpy_avx2};
  return table;
}

}  // namespace ionspin::simd::detail
