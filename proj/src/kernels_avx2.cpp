#include "infocomb/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

#include <algorithm>

namespace infocomb::kernels {

namespace {

constexpr double kNegligible = 1e-300;

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// Lanes hold consecutive exponents n..n+3 of one point; each step advances
// all four by y^4.
void power_sums_avx2(const double* y, const double* w, std::size_t m, std::size_t count, double* out) {
  std::fill(out, out + count, 0.0);
  const __m256d tiny = _mm256_set1_pd(kNegligible);
  for (std::size_t j = 0; j < m; ++j) {
    const double y1 = y[j], y2 = y1 * y1, y3 = y2 * y1, y4 = y2 * y2;
    __m256d p = _mm256_mul_pd(_mm256_set1_pd(w[j]), _mm256_setr_pd(y1, y2, y3, y4));
    const __m256d step = _mm256_set1_pd(y4);
    std::size_t n = 0;
    for (; n + 4 <= count; n += 4) {
      __m256d mask = _mm256_cmp_pd(p, tiny, _CMP_GE_OQ);
      if (_mm256_movemask_pd(mask) == 0) break;
      __m256d acc = _mm256_loadu_pd(out + n);
      _mm256_storeu_pd(out + n, _mm256_add_pd(acc, _mm256_and_pd(p, mask)));
      p = _mm256_mul_pd(p, step);
    }
    if (n + 4 > count && n < count) {
      alignas(32) double lanes[4];
      _mm256_store_pd(lanes, p);
      for (std::size_t r = 0; n + r < count; ++r)
        if (lanes[r] >= kNegligible) out[n + r] += lanes[r];
    }
  }
}

void series_at_avx2(const double* c, std::size_t count, const double* y, std::size_t m, double* out) {
  std::size_t k = 0;
  if (count == 0) {
    std::fill(out, out + m, 0.0);
    return;
  }
  // Two vectors per iteration hide the FMA latency of the Horner chain.
  for (; k + 8 <= m; k += 8) {
    const __m256d ya = _mm256_loadu_pd(y + k), yb = _mm256_loadu_pd(y + k + 4);
    __m256d acc_a = _mm256_set1_pd(c[count - 1]), acc_b = acc_a;
    for (std::size_t n = count - 1; n > 0; --n) {
      const __m256d cn = _mm256_set1_pd(c[n - 1]);
      acc_a = _mm256_fmadd_pd(acc_a, ya, cn);
      acc_b = _mm256_fmadd_pd(acc_b, yb, cn);
    }
    _mm256_storeu_pd(out + k, _mm256_mul_pd(acc_a, ya));
    _mm256_storeu_pd(out + k + 4, _mm256_mul_pd(acc_b, yb));
  }
  for (; k + 4 <= m; k += 4) {
    const __m256d ya = _mm256_loadu_pd(y + k);
    __m256d acc = _mm256_set1_pd(c[count - 1]);
    for (std::size_t n = count - 1; n > 0; --n) acc = _mm256_fmadd_pd(acc, ya, _mm256_set1_pd(c[n - 1]));
    _mm256_storeu_pd(out + k, _mm256_mul_pd(acc, ya));
  }
  for (; k < m; ++k) {
    double acc = c[count - 1];
    for (std::size_t n = count - 1; n > 0; --n) acc = acc * y[k] + c[n - 1];
    out[k] = acc * y[k];
  }
}

double poly_increment_sum_avx2(const double* a, const double* s, const double* f, std::size_t count,
                               const double* coeffs, std::size_t degree) {
  __m256d total = _mm256_setzero_pd();
  std::size_t n = 0;
  for (; n + 4 <= count; n += 4) {
    const __m256d sv = _mm256_loadu_pd(s + n);
    const __m256d uv = _mm256_add_pd(sv, _mm256_loadu_pd(f + n));
    __m256d pu = _mm256_setzero_pd(), ps = _mm256_setzero_pd();
    for (std::size_t i = degree; i > 0; --i) {
      const __m256d ci = _mm256_set1_pd(coeffs[i - 1]);
      pu = _mm256_fmadd_pd(pu, uv, ci);
      ps = _mm256_fmadd_pd(ps, sv, ci);
    }
    const __m256d diff = _mm256_fmsub_pd(pu, uv, _mm256_mul_pd(ps, sv));
    total = _mm256_fmadd_pd(_mm256_loadu_pd(a + n), diff, total);
  }
  double rest = 0.0;
  for (; n < count; ++n) {
    const double u = s[n] + f[n];
    double pu = 0.0, ps = 0.0;
    for (std::size_t i = degree; i > 0; --i) {
      pu = pu * u + coeffs[i - 1];
      ps = ps * s[n] + coeffs[i - 1];
    }
    rest += a[n] * (pu * u - ps * s[n]);
  }
  return hsum(total) + rest;
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{"avx2", power_sums_avx2, series_at_avx2, poly_increment_sum_avx2};
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) return nullptr;
  return &table;
}

}  // namespace infocomb::kernels

#else

namespace infocomb::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace infocomb::kernels

#endif
