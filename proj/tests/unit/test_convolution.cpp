#include <doctest.h>

#include <cmath>

#include "infocomb/convolution.hpp"
#include "infocomb/error.hpp"
#include "infocomb/functionals.hpp"
#include "infocomb/sampling.hpp"
#include "infocomb/series.hpp"

using namespace infocomb;

TEST_CASE("pairwise rule") {
  const Channel c = check_convolve(bsc(0.1), bsc(0.2));
  REQUIRE(c.size() == 1);
  CHECK(c[0].eps == doctest::Approx(0.26).epsilon(1e-15));
  const Channel a = Channel::from_points({{0.05, 0.4}, {0.3, 0.6}});
  CHECK(check_convolve(bsc(0.0), a) == a);
  CHECK(check_convolve(bsc(0.5), a) == bsc(0.5));
  CHECK(check_convolve_with_provenance(a, a).raw_terms == 4);
}

TEST_CASE("erasure powers stay erasures") {
  const Channel p = check_power(bec(0.3), 4);
  CHECK(max_point_difference(p, bec(1.0 - std::pow(0.7, 4))) < 1e-14);
  CHECK(p[1].weight == doctest::Approx(0.7599));
  CHECK_THROWS_AS(check_power(bec(0.3), 0), DomainError);
}

TEST_CASE("power support projection and the cap") {
  const Channel a = Channel::from_points({{0.1, 0.25}, {0.2, 0.25}, {0.3, 0.25}, {0.5, 0.25}});
  // Three interior points over d = 4: C(7, 3) = 35 products, plus the absorbing point.
  CHECK(projected_power_support(a, 4) == doctest::Approx(36.0));
  CHECK(check_power(a, 4).size() <= 36);
  CHECK_THROWS_AS(check_power(a, 200, 1000), CapacityError);
}

TEST_CASE("moments multiply under convolution") {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const Channel a = random_channel(rng), b = random_channel(rng);
    const Channel c = check_convolve(a, b);
    for (std::size_t n : {1u, 2u, 7u, 50u}) CHECK(std::abs(moment(c, n) - moment(a, n) * moment(b, n)) < 1e-12);
  }
}

TEST_CASE("convolution is associative and commutative on supports") {
  Rng rng(11);
  const Channel a = random_channel(rng), b = random_channel(rng), c = random_channel(rng);
  CHECK(max_point_difference(check_convolve(a, b), check_convolve(b, a)) < 1e-14);
  const Channel l = check_convolve(check_convolve(a, b), c), r = check_convolve(a, check_convolve(b, c));
  CHECK(transport_distance(l, r) < 1e-12);
  CHECK(evaluate(Functional::H, l) == doctest::Approx(evaluate(Functional::H, r)).epsilon(1e-12));
}
