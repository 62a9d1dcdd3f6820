#include <doctest.h>

#include <cmath>

#include "infocomb/error.hpp"
#include "infocomb/functionals.hpp"

using namespace infocomb;

namespace {

// Reference entropy with plain log2, no log1p.
double entropy_ref(long double p) {
  if (p <= 0 || p >= 1) return 0.0;
  return double(-p * std::log2(p) - (1 - p) * std::log2(1 - p));
}

// Independent inverse: long double bisection to a fixed width.
double h2_inv_ref(double y) {
  long double lo = 0, hi = 0.5L;
  while (hi - lo > 1e-18L) {
    long double mid = (lo + hi) / 2;
    if (entropy_ref(mid) < y) lo = mid; else hi = mid;
  }
  return double((lo + hi) / 2);
}

}  // namespace

TEST_CASE("binary entropy") {
  CHECK(h2(0.0) == 0.0);
  CHECK(h2(1.0) == 0.0);
  CHECK(h2(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  for (double p : {1e-9, 0.01, 0.11, 0.2, 0.3, 0.45, 0.7})
    CHECK(h2(p) == doctest::Approx(entropy_ref(p)).epsilon(1e-13));
}

TEST_CASE("inverse entropy against a long double bisection") {
  for (double y : {1e-6, 0.01, 0.1, 0.3, 0.5, 0.8, 0.9, 0.999999}) {
    const double x = h2_inv(y);
    CHECK(std::abs(x - h2_inv_ref(y)) < 1e-12);
    CHECK(std::abs(h2(x) - y) < 1e-12);
  }
  CHECK(h2_inv(0.0) == 0.0);
  CHECK(h2_inv(1.0) == 0.5);
  // 1 - 2 h2^{-1}(0.5) = 0.779944...
  CHECK(1.0 - 2.0 * h2_inv(0.5) == doctest::Approx(0.779944).epsilon(1e-6));
}

TEST_CASE("kernels and their inverses") {
  CHECK(kernel(Functional::B, 0.8) == doctest::Approx(0.6));
  CHECK(kernel_inv(Functional::B, 0.6) == doctest::Approx(0.8));
  for (double x : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    CHECK(kernel_inv(Functional::H, kernel(Functional::H, x)) == doctest::Approx(x).epsilon(1e-10));
    CHECK(kernel_inv(Functional::B, kernel(Functional::B, x)) == doctest::Approx(x).epsilon(1e-10));
  }
  CHECK_THROWS_AS(kernel(Functional::E, 0.5), DomainError);
}

TEST_CASE("functionals of standard channels") {
  CHECK(evaluate(Functional::E, bec(0.3)) == doctest::Approx(0.15));
  CHECK(evaluate(Functional::H, bec(0.3)) == doctest::Approx(0.3));
  CHECK(evaluate(Functional::B, bec(0.3)) == doctest::Approx(0.3));
  CHECK(evaluate(Functional::B, bsc(0.11)) == doctest::Approx(2 * std::sqrt(0.11 * 0.89)));
  for (Functional f : {Functional::E, Functional::H, Functional::B}) {
    CHECK(evaluate(f, bsc(0.0)) == 0.0);
    CHECK(evaluate(f, bsc(0.5)) == doctest::Approx(useless_value(f)));
  }
  // H(BSC(eps)) is the kernel at 1 - 2 eps.
  CHECK(evaluate(Functional::H, bsc(0.2)) == doctest::Approx(kernel(Functional::H, 0.6)));
}

TEST_CASE("functional names") {
  CHECK(parse_functional("h") == Functional::H);
  CHECK(parse_functional("B") == Functional::B);
  CHECK(to_string(Functional::E) == "E");
  CHECK_THROWS_AS(parse_functional("X"), ParseError);
  CHECK_THROWS_AS(parse_functional("HB"), ParseError);
}
