#pragma once

// Data-parallel inner loops behind the series machinery. Each kernel has a
// scalar reference implementation and an AVX2/FMA variant; the variant is
// chosen once at runtime from the CPU features (override with the
// INFOCOMB_KERNELS environment variable: "scalar" or "avx2").

#include <cstddef>
#include <span>
#include <string_view>

namespace infocomb::kernels {

struct KernelTable {
  const char* name;
  /// out[n-1] = sum_j w[j] * y[j]^n for n = 1..count.
  void (*power_sums)(const double* y, const double* w, std::size_t m, std::size_t count, double* out);
  /// out[k] = sum_{n=1..count} c[n-1] * y[k]^n (Horner in y).
  void (*series_at)(const double* c, std::size_t count, const double* y, std::size_t m, double* out);
  /// sum_n a[n] * (rho(s[n] + f[n]) - rho(s[n])) with rho(x) = sum_i coeffs[i-1] x^i.
  double (*poly_increment_sum)(const double* a, const double* s, const double* f, std::size_t count,
                               const double* coeffs, std::size_t degree);
};

const KernelTable& scalar_table();
/// nullptr when the build or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();
/// The table used by the wrappers below.
const KernelTable& active();
/// Selects a table by name for the rest of the process; returns false if unavailable.
bool select(std::string_view name);

inline void power_sums(std::span<const double> y, std::span<const double> w, std::span<double> out) {
  active().power_sums(y.data(), w.data(), y.size(), out.size(), out.data());
}

inline void series_at(std::span<const double> coeffs, std::span<const double> y, std::span<double> out) {
  active().series_at(coeffs.data(), coeffs.size(), y.data(), y.size(), out.data());
}

inline double poly_increment_sum(std::span<const double> a, std::span<const double> s,
                                 std::span<const double> f, std::span<const double> coeffs) {
  return active().poly_increment_sum(a.data(), s.data(), f.data(), a.size(), coeffs.data(), coeffs.size());
}

}  // namespace infocomb::kernels
