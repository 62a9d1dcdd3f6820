#include <algorithm>

#include "infocomb/kernels.hpp"

namespace infocomb::kernels {

namespace {

// Below this a running power contributes nothing measurable; stopping also
// keeps the loop out of subnormal arithmetic.
constexpr double kNegligible = 1e-300;

void power_sums_scalar(const double* y, const double* w, std::size_t m, std::size_t count, double* out) {
  std::fill(out, out + count, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double p = w[j];
    for (std::size_t n = 0; n < count; ++n) {
      p *= y[j];
      if (p < kNegligible) break;
      out[n] += p;
    }
  }
}

void series_at_scalar(const double* c, std::size_t count, const double* y, std::size_t m, double* out) {
  for (std::size_t k = 0; k < m; ++k) {
    if (count == 0) {
      out[k] = 0.0;
      continue;
    }
    double acc = c[count - 1];
    for (std::size_t n = count - 1; n > 0; --n) acc = acc * y[k] + c[n - 1];
    out[k] = acc * y[k];
  }
}

double poly_increment_sum_scalar(const double* a, const double* s, const double* f, std::size_t count,
                                 const double* coeffs, std::size_t degree) {
  double total = 0.0;
  for (std::size_t n = 0; n < count; ++n) {
    const double u = s[n] + f[n];
    double pu = 0.0, ps = 0.0;
    for (std::size_t i = degree; i > 0; --i) {
      pu = pu * u + coeffs[i - 1];
      ps = ps * s[n] + coeffs[i - 1];
    }
    total += a[n] * (pu * u - ps * s[n]);
  }
  return total;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", power_sums_scalar, series_at_scalar, poly_increment_sum_scalar};
  return table;
}

}  // namespace infocomb::kernels
