#include <doctest.h>

#include "infocomb/channel.hpp"
#include "infocomb/error.hpp"

using namespace infocomb;

TEST_CASE("construction sorts, merges and validates") {
  const Channel a = Channel::from_points({{0.3, 0.25}, {0.1, 0.5}, {0.3 + 1e-13, 0.25}});
  REQUIRE(a.size() == 2);
  CHECK(a[0].eps == 0.1);
  CHECK(a[1].weight == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(a[1].eps == doctest::Approx(0.3).epsilon(1e-12));

  CHECK_THROWS_AS(Channel::from_points({}), DomainError);
  CHECK_THROWS_AS(Channel::from_points({{0.6, 1.0}}), DomainError);
  CHECK_THROWS_AS(Channel::from_points({{0.1, -0.5}, {0.2, 1.5}}), DomainError);
  CHECK_THROWS_AS(Channel::from_points({{0.1, 0.5}, {0.2, 0.4}}), DomainError);
}

TEST_CASE("tiny weights are dropped only while their total stays negligible") {
  const Channel a = Channel::from_points({{0.1, 1.0 - 1e-16}, {0.4, 1e-16}});
  CHECK(a.size() == 1);
  std::vector<MassPoint> many;
  for (int i = 0; i < 2000; ++i) many.push_back({0.5 * i / 2000.0, 9e-16});
  many.push_back({0.5, 1.0 - 2000 * 9e-16});
  CHECK_THROWS_AS(Channel::from_points(many), DomainError);
}

TEST_CASE("bsc, bec and mixtures") {
  CHECK(bsc(0.2).size() == 1);
  const Channel e = bec(0.3);
  REQUIRE(e.size() == 2);
  CHECK(e.perfect_weight() == doctest::Approx(0.7));
  CHECK(e[1].eps == 0.5);
  CHECK(bec(0.0) == bsc(0.0));
  CHECK(bec(1.0) == bsc(0.5));
  CHECK_THROWS_AS(bsc(0.51), DomainError);
  CHECK_THROWS_AS(bec(-0.1), DomainError);

  // alpha BSC(0) + (1 - alpha) BSC(1/2) is the erasure channel.
  CHECK(max_point_difference(mix(bsc(0.0), bsc(0.5), 0.7), bec(0.3)) < 1e-15);
  CHECK(mix(bsc(0.1), bsc(0.2), 1.0) == bsc(0.1));
}

TEST_CASE("transport distance") {
  CHECK(transport_distance(bsc(0.1), bsc(0.1)) == 0.0);
  CHECK(transport_distance(bsc(0.1), bsc(0.3)) == doctest::Approx(0.2));
  // Moving weight 0.3 from 0.5 to 0 and nothing else.
  CHECK(transport_distance(bec(0.3), bsc(0.0)) == doctest::Approx(0.15));
  CHECK(transport_distance(bec(0.3), bec(0.3 + 1e-7)) == doctest::Approx(0.5e-7).epsilon(1e-6));
}

TEST_CASE("channel documents") {
  const Channel a = parse_channel("# erasure\n0 0.7\n\n0.5 0.3  # useless part\n");
  CHECK(max_point_difference(a, bec(0.3)) < 1e-15);

  const Channel b = Channel::from_points({{0.1, 1.0 / 3.0}, {0.25, 2.0 / 3.0}});
  CHECK(parse_channel(serialize_channel(b)) == b);
  CHECK(serialize_channel(bsc(0.26)) == "0.26000000000000001 1\n");

  // Duplicate eps lines merge.
  CHECK(parse_channel("0.2 0.5\n0.2 0.5\n") == bsc(0.2));

  try {
    parse_channel("0.1 0.5\n0.2 abc\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_channel("0.1 0.5 0.2\n"), ParseError);
  CHECK_THROWS_AS(parse_channel("0.7 1\n"), ParseError);
  CHECK_THROWS_AS(parse_channel("0.1 0.5\n0.2 0.4\n"), ParseError);
  CHECK_THROWS_AS(parse_channel("# nothing\n"), ParseError);
  // Sums within 1e-9 of one are accepted and renormalized.
  CHECK_NOTHROW(parse_channel("0.1 0.5\n0.2 0.5000000005\n"));
}

TEST_CASE("inline channel specs") {
  CHECK(load_channel_spec("bsc:0.11") == bsc(0.11));
  CHECK(load_channel_spec("bec:0.4") == bec(0.4));
  CHECK_THROWS_AS(load_channel_spec("bsc:x"), ParseError);
  CHECK_THROWS_AS(load_channel_spec("bsc:0.9"), ParseError);
  CHECK_THROWS_AS(load_channel_spec("/nonexistent/channel.txt"), ParseError);
}
