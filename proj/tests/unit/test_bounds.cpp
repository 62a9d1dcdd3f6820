#include <doctest.h>

#include <cmath>

#include "infocomb/bounds.hpp"
#include "infocomb/convolution.hpp"
#include "infocomb/error.hpp"
#include "infocomb/sampling.hpp"

using namespace infocomb;

TEST_CASE("upper bound under a fixed functional") {
  const auto b = t1_upper_bound(Functional::H, Polynomial::monomial(3), 0.5);
  const double g = 1.0 - 2.0 * h2_inv(0.5);
  CHECK(b.hypothesis_ok);
  CHECK(b.value == doctest::Approx(1.0 - std::pow(0.5, 3)));
  // The lower bound at the same point uses the squared inverse kernel.
  CHECK(l1_lower_bound(Functional::H, Polynomial::monomial(3), 0.5).value ==
        doctest::Approx(1.0 - std::pow(g * g, 3)).epsilon(1e-12));
  CHECK(1.0 - std::pow(g * g, 3) == doctest::Approx(0.77486).epsilon(1e-4));

  CHECK(l1_lower_bound(Functional::B, Polynomial::monomial(1), 0.6).value == doctest::Approx(0.36));
  CHECK(l1_lower_bound(Functional::H, Polynomial::monomial(4), 0.0).value == doctest::Approx(0.0));
}

TEST_CASE("erasure channel attains the upper bound") {
  for (int d = 2; d <= 10; ++d)
    for (double h : {0.1, 0.5, 0.9}) {
      const auto b = t1_upper_bound(Functional::H, Polynomial::monomial(d), h);
      CHECK(b.value == doctest::Approx(evaluate(Functional::H, check_power(bec(h), d))).epsilon(1e-12));
    }
}

TEST_CASE("convexity hypothesis is reported, not assumed") {
  const Polynomial p({0, 0, 0, 0, 1.0, -0.75});
  // Convex only on [0, 8/9]; at phi0 = 0.05 the range reaches past it.
  CHECK_FALSE(t1_upper_bound(Functional::H, p, 0.05).hypothesis_ok);
  CHECK(t1_upper_bound(Functional::H, p, 0.6).hypothesis_ok);
  const BoundReport r = check_t1(Functional::H, p, bsc(h2_inv(0.05)));
  CHECK(r.verdict(1e-9) == Verdict::Inconclusive);
}

TEST_CASE("extremes under a fixed error probability") {
  const auto e = t2_extremes(Functional::H, Polynomial::monomial(2), 0.1);
  CHECK(e.min_value == doctest::Approx(0.36).epsilon(1e-12));
  CHECK(e.max_value == doctest::Approx(h2(0.18)).epsilon(1e-12));
  CHECK(e.max_value == doctest::Approx(0.6801).epsilon(1e-4));
  const auto z = t2_extremes(Functional::B, Polynomial::monomial(3), 0.0);
  CHECK(z.min_value == doctest::Approx(0.0));
  CHECK(z.max_value == doctest::Approx(0.0));
  const auto u = t2_extremes(Functional::H, Polynomial({0, 0, 0, 0, 1.0, -0.75}), 0.5);
  CHECK(u.min_value == doctest::Approx(0.25));
  CHECK(u.max_value == doctest::Approx(0.25));
}

TEST_CASE("checkers on random channels") {
  Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    const Channel a = random_channel_with(Functional::H, 0.4, rng);
    CHECK(check_t1(Functional::H, Polynomial::monomial(3), a).verdict(1e-9) == Verdict::Holds);
    CHECK(check_l1(Functional::H, Polynomial::monomial(3), a).verdict(1e-9) == Verdict::Holds);
    const Channel b = random_channel_with(Functional::E, 0.2, rng);
    CHECK(check_t2(Functional::B, Polynomial::monomial(2), b).verdict(1e-9) == Verdict::Holds);
    CHECK(check_bsc_minimizer_conjecture(Functional::H, Polynomial::monomial(3), a).verdict(0.0) ==
          Verdict::Inconclusive);
  }
}

TEST_CASE("combining inequalities") {
  const std::vector<Channel> ab{bec(0.3), bsc(0.2)};
  const auto r4 = check_inequality(4, ab, Functional::H);
  CHECK(std::abs(r4.slack) <= 1e-9);

  const std::vector<Channel> useless{bsc(0.5), bsc(0.5)};
  CHECK(check_inequality(4, useless, Functional::H).slack == doctest::Approx(0.0));

  const std::vector<Channel> one{bsc(0.11)};
  const auto r6 = check_inequality(6, one, Functional::B);
  CHECK(r6.lhs == doctest::Approx(1.0 - 2.0 * std::sqrt(0.11 * 0.89)));
  CHECK(r6.lhs == doctest::Approx(0.374).epsilon(1e-3));
  CHECK(r6.slack >= 0.0);

  Rng rng(23);
  for (int id = 4; id <= 12; ++id) {
    for (int t = 0; t < 30; ++t) {
      std::vector<Channel> ch;
      for (int k = 0; k < inequality_arity(id); ++k) ch.push_back(random_channel(rng));
      std::optional<double> alpha;
      std::optional<int> d;
      if (inequality_uses_alpha(id)) alpha = rng.uniform();
      if (inequality_uses_power(id)) d = rng.integer(2, 6);
      const auto r = check_inequality(id, ch, t % 2 ? Functional::H : Functional::B, alpha, d);
      CHECK(r.slack >= -1e-12);
    }
  }
}

TEST_CASE("inequality misuse") {
  const std::vector<Channel> one{bsc(0.1)};
  CHECK_THROWS_AS(check_inequality(4, one, Functional::H), UsageError);
  CHECK_THROWS_AS(check_inequality(5, one, Functional::H), UsageError);
  CHECK_THROWS_AS(check_inequality(5, one, Functional::H, std::nullopt, 1), UsageError);
  const std::vector<Channel> two{bsc(0.1), bsc(0.2)};
  CHECK_THROWS_AS(check_inequality(9, two, Functional::H, std::nullopt, 3), UsageError);
  CHECK_THROWS_AS(check_inequality(13, one, Functional::H), UsageError);
  CHECK_THROWS_AS(check_inequality(11, one, Functional::E), UsageError);
}

TEST_CASE("complements near the useless channel keep relative precision") {
  // 1 - H(BSC(1/2 - 1e-5)^6): x = 2e-5 so the complement is ~ x^12 / (2 ln 2).
  const std::vector<Channel> f{bsc(0.5 - 1e-5)};
  const std::vector<int> k{6};
  const double x6 = std::pow(2e-5, 6);
  const double ref = x6 * x6 / (2.0 * std::log(2.0));
  CHECK(complement_of_product(Functional::H, f, k) == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("report rows") {
  BoundReport r;
  r.kind = "ineq4";
  r.params = "tag=H";
  r.lhs = 0.5;
  r.rhs = 0.25;
  r.slack = 0.25;
  r.seed = 9;
  CHECK(BoundReport::csv_header() == "kind,params,lhs,rhs,slack,hypothesis_ok,seed");
  CHECK(r.csv_row() == "ineq4,tag=H,0.5,0.25,0.25,1,9");
  r.slack = -1.0;
  CHECK(r.verdict(1e-12) == Verdict::Violated);
  r.hypothesis_ok = false;
  CHECK(r.verdict(1e-12) == Verdict::Inconclusive);
}
