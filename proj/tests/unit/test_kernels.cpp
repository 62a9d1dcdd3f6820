#include <doctest.h>

#include <cmath>
#include <vector>

#include "infocomb/kernels.hpp"
#include "infocomb/sampling.hpp"

using namespace infocomb;

namespace {

void naive_power_sums(const std::vector<double>& y, const std::vector<double>& w, std::vector<double>& out) {
  for (std::size_t n = 0; n < out.size(); ++n) {
    double s = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) s += w[j] * std::pow(y[j], double(n + 1));
    out[n] = s;
  }
}

double close(double a, double b) { return std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(b)); }

// Odd sizes exercise the vector remainders.
constexpr std::size_t kSizes[] = {1, 3, 4, 7, 8, 9, 33, 130};

}  // namespace

TEST_CASE("scalar kernels against naive loops") {
  const auto& k = kernels::scalar_table();
  Rng rng(5);
  for (std::size_t m : kSizes) {
    std::vector<double> y(m), w(m), out(41), ref(41);
    for (std::size_t j = 0; j < m; ++j) y[j] = rng.uniform(), w[j] = rng.uniform();
    k.power_sums(y.data(), w.data(), m, out.size(), out.data());
    naive_power_sums(y, w, ref);
    for (std::size_t n = 0; n < out.size(); ++n) CHECK(close(out[n], ref[n]));

    std::vector<double> c(m), vals(5);
    for (auto& v : c) v = rng.uniform(-1.0, 1.0);
    const double pts[5] = {0.0, 0.3, 0.5, 0.9, 1.0};
    k.series_at(c.data(), m, pts, 5, vals.data());
    for (int i = 0; i < 5; ++i) {
      double s = 0.0;
      for (std::size_t n = 0; n < m; ++n) s += c[n] * std::pow(pts[i], double(n + 1));
      CHECK(close(vals[i], s));
    }
  }
}

TEST_CASE("poly_increment_sum against a direct evaluation") {
  const auto& k = kernels::scalar_table();
  Rng rng(9);
  std::vector<double> a(17), s(17), f(17), coeffs{0.0, 0.5, 0.0, 1.0, -0.75};
  for (std::size_t n = 0; n < a.size(); ++n) a[n] = rng.uniform(), s[n] = rng.uniform(0, 0.5), f[n] = rng.uniform(0, 0.5);
  auto rho = [&](double x) {
    double v = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * std::pow(x, double(i + 1));
    return v;
  };
  double ref = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) ref += a[n] * (rho(s[n] + f[n]) - rho(s[n]));
  CHECK(close(k.poly_increment_sum(a.data(), s.data(), f.data(), a.size(), coeffs.data(), coeffs.size()), ref));
}

TEST_CASE("AVX2 kernels match the scalar reference") {
  const auto* v = kernels::avx2_table();
  if (!v) {
    MESSAGE("AVX2 variant unavailable on this machine");
    return;
  }
  const auto& k = kernels::scalar_table();
  Rng rng(21);
  for (std::size_t m : kSizes) {
    std::vector<double> y(m), w(m);
    for (std::size_t j = 0; j < m; ++j) y[j] = rng.uniform(), w[j] = rng.uniform();
    y[0] = 1.0;  // a non-decaying point
    for (std::size_t count : {1u, 5u, 64u, 1000u}) {
      std::vector<double> a(count), b(count);
      k.power_sums(y.data(), w.data(), m, count, a.data());
      v->power_sums(y.data(), w.data(), m, count, b.data());
      for (std::size_t n = 0; n < count; ++n) CHECK(close(b[n], a[n]));

      std::vector<double> c(count), ra(m), rb(m);
      for (auto& x : c) x = rng.uniform(-1.0, 1.0) / double(count);
      k.series_at(c.data(), count, y.data(), m, ra.data());
      v->series_at(c.data(), count, y.data(), m, rb.data());
      for (std::size_t j = 0; j < m; ++j) CHECK(close(rb[j], ra[j]));
    }
    std::vector<double> a(m), s(m), f(m), coeffs{1.0, -0.5, 0.25};
    for (std::size_t n = 0; n < m; ++n) a[n] = rng.uniform(), s[n] = rng.uniform(), f[n] = rng.uniform();
    CHECK(close(v->poly_increment_sum(a.data(), s.data(), f.data(), m, coeffs.data(), 3),
                k.poly_increment_sum(a.data(), s.data(), f.data(), m, coeffs.data(), 3)));
  }
}

TEST_CASE("table selection") {
  CHECK(kernels::select("scalar"));
  CHECK(std::string_view(kernels::active().name) == "scalar");
  CHECK_FALSE(kernels::select("neon-or-whatever"));
  if (kernels::avx2_table()) CHECK(kernels::select("avx2"));
}
