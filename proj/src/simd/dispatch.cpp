#include <cassert>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "ionspin/simd/kernels.hpp"

namespace ionspin::simd {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(IONSPIN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(IONSPIN_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
    if (isa_available(isa)) out.push_back(isa);
  }
  return out;
}

namespace {

Isa detect() noexcept {
  if (const char* env = std::getenv("IONSPIN_ISA")) {
    const std::string_view want(env);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (want == isa_name(isa) && isa_available(isa)) return isa;
    }
  }
  if (isa_available(Isa::avx2)) return Isa::avx2;
  if (isa_available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

}  // namespace

Isa active_isa() noexcept {
  static const Isa isa = detect();
  return isa;
}

const KernelTable& kernels(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("kernel variant not available: " + std::string(isa_name(isa)));
  }
  switch (isa) {
#if defined(IONSPIN_HAVE_AVX2)
    case Isa::avx2:
      return detail::avx2_table();
#endif
#if defined(IONSPIN_HAVE_NEON)
    case Isa::neon:
      return detail::neon_table();
#endif
    default:
      return detail::scalar_table();
  }
}

const KernelTable& kernels() noexcept {
  static const KernelTable& table = kernels(active_isa());
  return table;
}

void diagonal_energies(std::span<const PairTerm> terms, std::uint64_t first, std::span<double> out,
                       const KernelTable& k) {
  k.diagonal_energies(terms.data(), terms.size(), first, out.size(), out.data());
}

void apply_ising(std::span<const double> diag, std::span<const double> in, std::span<double> out,
                 int flip_bits, double field, int reversal_sign, const KernelTable& k) {
  assert(diag.size() == in.size() && in.size() == out.size());
  assert(in.size() == (std::size_t{1} << flip_bits));
  k.apply_ising(diag.data(), in.data(), out.data(), in.size(), flip_bits, field, reversal_sign);
}

double dot(std::span<const double> a, std::span<const double> b, const KernelTable& k) {
  assert(a.size() == b.size());
  return k.dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y, const KernelTable& k) {
  assert(x.size() == y.size());
  k.axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace ionspin::simd
