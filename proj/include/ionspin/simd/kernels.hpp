#pragma once

// Data-parallel inner loops of the spin solver.
//
// Every kernel has a scalar reference implementation and optional AVX2 / NEON
// variants. The variant is picked once at startup from the CPU features (or
// the IONSPIN_ISA environment variable: "scalar", "avx2", "neon"). The energy
// and matvec kernels keep the scalar operation order lane by lane and never
// fuse multiply-adds, so all variants agree bit for bit; dot() reassociates
// its reduction and agrees to rounding only.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace ionspin::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;
/// Compiled in and supported by the running CPU.
bool isa_available(Isa isa) noexcept;
std::vector<Isa> available_isas();
Isa active_isa() noexcept;

/// One Ising bond in bit form: contributes +weight when the two bits agree
/// and -weight when they differ.
struct PairTerm {
  double weight;
  std::uint32_t shift_a;
  std::uint32_t shift_b;
};

struct KernelTable {
  // out[i] = sum_p (+/-) terms[p].weight for basis state first + i,
  // accumulated with Neumaier compensation in term order.
  void (*diagonal_energies)(const PairTerm* terms, std::size_t n_terms, std::uint64_t first,
                            std::size_t count, double* out);
  // out[s] = diag[s]*in[s] - field*acc[s] with
  // acc[s] = sum_{b < flip_bits} in[s ^ 2^b]  (+ reversal_sign * in[dim-1-s]).
  // dim must equal 2^flip_bits.
  void (*apply_ising)(const double* diag, const double* in, double* out, std::size_t dim,
                      int flip_bits, double field, int reversal_sign);
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
};

const KernelTable& kernels(Isa isa);
const KernelTable& kernels() noexcept;

// Span front ends over the active (or an explicit) kernel table.

void diagonal_energies(std::span<const PairTerm> terms, std::uint64_t first, std::span<double> out,
                       const KernelTable& k = kernels());
void apply_ising(std::span<const double> diag, std::span<const double> in, std::span<double> out,
                 int flip_bits, double field, int reversal_sign, const KernelTable& k = kernels());
double dot(std::span<const double> a, std::span<const double> b, const KernelTable& k = kernels());
void axpy(double alpha, std::span<const double> x, std::span<double> y,
          const KernelTable& k = kernels());

namespace detail {
const KernelTable& scalar_table() noexcept;
#if defined(IONSPIN_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif
#if defined(IONSPIN_HAVE_NEON)
const KernelTable& neon_table() noexcept;
#endif
}  // namespace detail

}  // namespace ionspin::simd
