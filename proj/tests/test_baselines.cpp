#include <doctest.h>

#include "bmatch/baselines.hpp"
#include "bmatch/matching.hpp"
#include "oracles.hpp"

using namespace bmatch;

TEST_CASE("hopcroft-karp on hand-checked graphs") {
  {
    const auto g = testing::complete_graph(3, 3);
    const auto m = hopcroft_karp(g, MatchingState::unmatched(3, 3));
    CHECK(cardinality(m) == 3);
    CHECK(is_maximum(g, m));
  }
  {
    const auto g = testing::fork_graph();
    const auto m = hopcroft_karp(g, cheap_matching(g));
    CHECK(cardinality(m) == 2);
  }
}

TEST_CASE("hopcroft-karp equals brute force on random graphs") {
  for (const auto& g : testing::random_corpus(150, 70, 99)) {
    const auto m = hopcroft_karp(g, cheap_matching(g));
    REQUIRE(validate(g, m).ok());
    REQUIRE(is_maximum(g, m));
    REQUIRE(cardinality(m) == brute_force_maximum(g));
  }
}

TEST_CASE("pothen-fan on hand-checked graphs") {
  {
    const auto g = testing::complete_graph(2, 2);
    const auto m = pfp(g, MatchingState::unmatched(2, 2));
    CHECK(cardinality(m) == 2);
  }
  {
    // Path c0-r0-c1-r1: the cheap matching is already perfect here.
    const auto g = from_edge_list(2, 2, {{0, 0}, {1, 0}, {1, 1}});
    const auto m = pfp(g, cheap_matching(g));
    CHECK(cardinality(m) == 2);
    CHECK(is_maximum(g, m));
  }
}

TEST_CASE("pothen-fan equals hopcroft-karp on random graphs") {
  for (const auto& g : testing::random_corpus(150, 70, 171)) {
    const auto via_pf = pfp(g, cheap_matching(g));
    const auto via_hk = hopcroft_karp(g, cheap_matching(g));
    REQUIRE(validate(g, via_pf).ok());
    REQUIRE(is_maximum(g, via_pf));
    REQUIRE(cardinality(via_pf) == cardinality(via_hk));
  }
}

TEST_CASE("baselines never drop below the initial matching") {
  for (const auto& g : testing::random_corpus(40, 60, 2024)) {
    const auto init = cheap_matching(g);
    const auto base = cardinality(init);
    CHECK(cardinality(hopcroft_karp(g, init)) >= base);
    CHECK(cardinality(pfp(g, init)) >= base);
  }
}

TEST_CASE("baselines accept an empty graph") {
  const auto g = from_edge_list(0, 0, {});
  CHECK(cardinality(hopcroft_karp(g, MatchingState::unmatched(0, 0))) == 0);
  CHECK(cardinality(pfp(g, MatchingState::unmatched(0, 0))) == 0);
}
