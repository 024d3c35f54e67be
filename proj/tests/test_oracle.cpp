#include <doctest.h>

#include "fixtures.hpp"
#include "maxmin/decomposition.hpp"
#include "maxmin/oracle.hpp"

using namespace maxmin;
using namespace fixtures;

TEST_CASE("maximum matchings are enumerated") {
  CHECK(enumerate_matchings(fig1()).size() == 4);
  CHECK(enumerate_matchings(star3()).size() == 3);
  CHECK(enumerate_matchings(graph_of(1, 1, {{0, 0}})).size() == 1);
  for (const Matching& m : enumerate_matchings(fig1())) {
    CHECK(m.size() == 3);
    CHECK(m.is_valid_in(fig1()));
  }
  CHECK_THROWS_AS(enumerate_matchings(graph_of(9, 1, {{0, 0}})), SizeError);
}

TEST_CASE("subset oracle on the worked examples") {
  FairDecomposition f1 = brute_force_blocks(fig1());
  REQUIRE(f1.blocks.size() == 2);
  CHECK(f1.blocks[0].members == std::vector<Index>{1, 2, 3});
  CHECK(f1.blocks[0].lambda == q(2, 3));
  CHECK(f1.blocks[1].lambda == 1);

  FairDecomposition f2 = brute_force_blocks(fig2());
  REQUIRE(f2.blocks.size() == 3);
  CHECK(f2.blocks[0].members == std::vector<Index>{4, 5});
  CHECK(f2.blocks[1].members == std::vector<Index>{1, 2, 3});
  CHECK(f2.blocks[2].members == std::vector<Index>{0});

  BipartiteGraph k33 = graph_of(3, 3, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}});
  FairDecomposition k = brute_force_blocks(k33);
  REQUIRE(k.blocks.size() == 1);
  CHECK(k.blocks[0].lambda == 1);
  CHECK(k.blocks[0].members.size() == 3);
}

TEST_CASE("oracle lambdas increase and the rank rule agrees on canonical graphs") {
  for (const BipartiteGraph& g : canonical_corpus(200, 77)) {
    FairDecomposition d = brute_force_blocks(g);
    for (std::size_t b = 1; b < d.blocks.size(); ++b) CHECK(d.blocks[b - 1].lambda < d.blocks[b].lambda);
    CHECK(d.blocks.front().lambda == min_neighborhood_ratio(g));
    CHECK(brute_force_rank_blocks(g) == d);
  }
}

TEST_CASE("fair profile is the lexicographic optimum over enumerated matchings") {
  for (const BipartiteGraph& g : canonical_corpus(200, 5)) {
    if (g.n_left() > 8) continue;
    std::vector<Rational> fair = fair_decomposition(g).probability;
    std::sort(fair.begin(), fair.end());
    CHECK(lexicographic_optimum(g) == fair);
  }
  std::vector<Rational> expected{q(2, 3), q(2, 3), q(2, 3), q(1, 1)};
  CHECK(lexicographic_optimum(fig1()) == expected);
}

TEST_CASE("rank oracle handles raw graphs") {
  BipartiteGraph g = graph_of(3, 2, {{0, 0}, {1, 0}});
  FairDecomposition d = brute_force_rank_blocks(g);
  CHECK(d.probability == std::vector<Rational>{q(1, 2), q(1, 2), q(0, 1)});
  CHECK_THROWS_AS(brute_force_blocks(graph_of(16, 1, {{0, 0}})), SizeError);
}
