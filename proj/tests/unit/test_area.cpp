#include <doctest.h>

#include <cmath>

#include "infocomb/area.hpp"
#include "infocomb/error.hpp"
#include "infocomb/sampling.hpp"

using namespace infocomb;

TEST_CASE("ensemble parameters") {
  const EnsembleParams p(3, 6);
  CHECK(p.kappa() == doctest::Approx(0.75));
  CHECK(p.design_rate() == doctest::Approx(0.5));
  CHECK(double(p.dl() - 1) * (1.0 - p.kappa()) == doctest::Approx(p.ratio()).epsilon(1e-12));
  const Polynomial rho = p.area_polynomial();
  CHECK(rho.coeff(5) == 1.0);
  CHECK(rho.coeff(6) == -0.75);
  CHECK_THROWS_AS(EnsembleParams(1, 6), DomainError);
  CHECK_THROWS_AS(EnsembleParams(6, 6), DomainError);
  CHECK_THROWS_AS(EnsembleParams(3, 2), DomainError);
}

TEST_CASE("area quantity closed forms") {
  const EnsembleParams p(3, 6);
  // -h - 1.5 (1 - 0.6^6) + 2 (1 - 0.6^5)
  CHECK(area_quantity(bec(0.4), p, 0.4).value == doctest::Approx(0.014464).epsilon(1e-9));
  CHECK(area_quantity(bsc(0.5), p, 1.0).value == doctest::Approx(-0.5));
  CHECK(area_quantity(bsc(0.0), p, 0.0).value == doctest::Approx(0.0));
  CHECK_THROWS_AS(area_quantity(bec(0.4), p, 0.3), DomainError);
}

TEST_CASE("area quantity: series, explicit powers and the polynomial identity agree") {
  const EnsembleParams p(3, 6);
  Rng rng(31);
  for (int t = 0; t < 30; ++t) {
    const Channel a = random_channel(rng, 3);
    const double h = evaluate(Functional::H, a);
    const double s = area_quantity(a, p, h).value;
    CHECK(s == doctest::Approx(area_quantity_explicit(a, p)).epsilon(1e-10));
    CHECK(s + h == doctest::Approx(2.0 * phi_of_poly(Functional::H, p.area_polynomial(), a).value).epsilon(1e-10));
    CHECK(phi_of_poly(Functional::H, p.area_polynomial(), a).value >= area_polynomial_lower_bound(p, h) - 1e-9);
  }
}

TEST_CASE("sufficient conditions") {
  const EnsembleParams p(3, 6);
  for (int k = 0; k <= 100; ++k) CHECK_FALSE(neglem_conditions(p, k / 100.0, 0.01).both());
  CHECK(neglem_conditions(p, 0.75, 0.01).cond_i);
  CHECK_FALSE(neglem_conditions(p, 0.7, 0.01).cond_i);
  CHECK(neglem_conditions(p, 0.5 - 2 * 0.01, 0.01).cond_ii);
  CHECK_FALSE(neglem_conditions(p, 0.49, 0.01).cond_ii);

  const EnsembleParams big(100, 200);
  const double c0 = asymptotic_margin(big);
  CHECK(c0 == doctest::Approx(99.0 * std::exp(-std::sqrt(199.0))));
  CHECK(neglem_conditions(big, 0.4998, c0).cond_ii);
  CHECK(neglem_conditions(big, 0.3, c0).both());
}

TEST_CASE("margin function") {
  const EnsembleParams p(3, 6);
  CHECK(xi(p, 1.0) == doctest::Approx(0.0));
  CHECK(xi(p, 0.0) == doctest::Approx(0.5));
  CHECK(xi(p, 0.8) == doctest::Approx(2.0e-3).epsilon(0.05));
  // Where condition (i) holds, xi stays below c0.
  const EnsembleParams big(100, 200);
  const double c0 = asymptotic_margin(big);
  for (int k = 1; k < 100; ++k) {
    const double h = k / 100.0;
    if (neglem_conditions(big, h, c0).cond_i) CHECK(xi(big, h) <= c0 + 1e-9);
  }
}

TEST_CASE("finite-size interval") {
  const EnsembleParams big(100, 200);
  const auto iv = cclarea_interval(big, 3.0);
  CHECK(iv.lower == doctest::Approx(h2(3.0 / std::sqrt(200.0))));
  CHECK(iv.lower == doctest::Approx(0.7464).epsilon(1e-3));
  CHECK(iv.upper == doctest::Approx(0.49985).epsilon(1e-4));
  CHECK(iv.upper < big.ratio());
  CHECK_FALSE(iv.valid);
  CHECK(cclarea_interval(big, 1.0).valid);
  CHECK_THROWS_AS(cclarea_interval(EnsembleParams(3, 6), 2.0), DomainError);
}

TEST_CASE("corollary condition in both forms") {
  const EnsembleParams p(3, 6);
  for (double h : {0.0, 0.3, 0.9, 0.999}) CHECK_FALSE(corollary_condition(p, h, true));
  // Convexity form: threshold (d_r - 2) / (kappa d_r) = 8/9, i.e. h >= h2(0.0286).
  CHECK_FALSE(corollary_condition(p, 0.18, false));
  CHECK(corollary_condition(p, 0.19, false));
  CHECK(corollary_condition(p, 1.0, false));
}
