#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "maxmin/graph.hpp"

using namespace maxmin;
using namespace fixtures;

TEST_CASE("load_edge_list reads stars, comments and duplicates") {
  std::istringstream star("1 1\n2 1\n3 1");
  BipartiteGraph g = load_edge_list(star);
  CHECK(g.n_left() == 3);
  CHECK(g.n_right() == 1);
  CHECK(g.num_edges() == 3);

  std::istringstream dup("% comment\n1 1\n1 1");
  g = load_edge_list(dup);
  CHECK(g.n_left() == 1);
  CHECK(g.n_right() == 1);
  CHECK(g.num_edges() == 1);

  std::istringstream fig("1 1\n1 2\n2 2\n2 3\n3 3\n4 2\n4 3\n");
  g = load_edge_list(fig);
  CHECK(g.n_left() == 4);
  CHECK(g.n_right() == 3);
  CHECK(g.num_edges() == 7);
  CHECK(g == fig1());
}

TEST_CASE("load_edge_list ignores extra columns and blank lines") {
  std::istringstream in("\n  \n1 2 5 1234\n\t2 1\n");
  BipartiteGraph g = load_edge_list(in);
  CHECK(g.num_edges() == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
}

TEST_CASE("load_edge_list reports the failing line") {
  std::istringstream bad("1 1\n2 x\n");
  try {
    load_edge_list(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream one("1 1\n% c\n3\n");
  CHECK_THROWS_AS(load_edge_list(one), ParseError);
  std::istringstream zero("1 1\n0 1\n");
  try {
    load_edge_list(zero);
    FAIL("expected RangeError");
  } catch (const RangeError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream negative("-3 1\n");
  CHECK_THROWS_AS(load_edge_list(negative), RangeError);
}

TEST_CASE("serialization round trip") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    BipartiteGraph g = random_graph(9, 7, 0.4, rng);
    std::ostringstream out;
    write_edge_list(out, g);
    std::istringstream in(out.str());
    BipartiteGraph back = load_edge_list(in);
    std::ostringstream again;
    write_edge_list(again, back);
    CHECK(again.str() == out.str());
  }
}

TEST_CASE("adjacency directions agree") {
  std::mt19937_64 rng(3);
  BipartiteGraph g = random_graph(12, 9, 0.3, rng);
  std::size_t count = 0;
  for (Index v = 0; v < g.n_right(); ++v) {
    for (Index u : g.left_neighbors(v)) {
      CHECK(g.has_edge(u, v));
      ++count;
    }
  }
  CHECK(count == g.num_edges());
}

TEST_CASE("remove_isolated") {
  BipartiteGraph g = graph_of(3, 3, {{0, 0}, {1, 0}, {1, 1}});
  IsolatedRemoval r = remove_isolated(g);
  CHECK(r.graph.n_left() == 2);
  CHECK(r.graph.n_right() == 2);
  CHECK(r.dropped_left == std::vector<Index>{2});
  CHECK(r.dropped_right == std::vector<Index>{2});

  IsolatedRemoval same = remove_isolated(fig1());
  CHECK(same.graph == fig1());
  CHECK(same.left_origin == std::vector<Index>{0, 1, 2, 3});
  CHECK(same.right_origin == std::vector<Index>{0, 1, 2});
  CHECK(same.dropped_left.empty());
}

TEST_CASE("maximum_matching examples") {
  Matching m = maximum_matching(fig1());
  CHECK(m.size() == 3);
  CHECK(m.is_valid_in(fig1()));
  CHECK(maximum_matching(star3()).size() == 1);
  CHECK(maximum_matching(BipartiteGraph(3, 2, {})).empty());
  CHECK(maximum_matching(fig1()) == m);
}

TEST_CASE("maximum_matching agrees with exhaustive search on 200 small graphs") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Index> size(1, 10);
  std::uniform_real_distribution<double> density(0.05, 0.8);
  for (int i = 0; i < 200; ++i) {
    BipartiteGraph g = random_graph(size(rng), size(rng), density(rng), rng);
    Matching m = maximum_matching(g);
    CHECK(m.is_valid_in(g));
    CHECK(m.size() == brute_matching_size(g));
  }
}

TEST_CASE("Matching rejects reused vertices") {
  CHECK_THROWS_AS(Matching({{0, 0}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Matching({{0, 0}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Matching({{0, 5000000}, {1, 5000000}}), std::invalid_argument);
  Matching m({{2, 1}, {0, 0}});
  CHECK(m.partner(2) == 1);
  CHECK(m.partner(1) == kNoVertex);
}

TEST_CASE("reduce_to_one_sided") {
  SUBCASE("all users matchable") {
    ReductionReport r = reduce_to_one_sided(graph_of(1, 2, {{0, 0}, {0, 1}}));
    CHECK(r.kind == ReductionCase::AllMatchable);
    CHECK(r.rho == 1);
    CHECK(r.witness == Matching({{0, 0}}));
    CHECK(r.kept_right.size() == r.rho);
  }
  SUBCASE("figure 1") {
    ReductionReport r = reduce_to_one_sided(fig1());
    CHECK(r.kind == ReductionCase::Canonical);
    CHECK(r.rho == 3);
    CHECK(r.kept_right == std::vector<Index>{0, 1, 2});
  }
  SUBCASE("figure 2") {
    ReductionReport r = reduce_to_one_sided(fig2());
    CHECK(r.kind == ReductionCase::Canonical);
    CHECK(r.rho == 4);
    CHECK(r.kept_right == std::vector<Index>{0, 1, 2, 3});
  }
}

TEST_CASE("canonical instances: rho = |R| < |L| and every right vertex is coverable") {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    BipartiteGraph g = random_graph(9, 7, 0.25, rng);
    ReductionReport r = reduce_to_one_sided(g);
    CHECK(r.kept_right.size() == r.rho);
    if (r.kind != ReductionCase::Canonical) continue;
    const BipartiteGraph& c = r.canonical->graph;
    CHECK(maximum_matching(c).size() == c.n_right());
    CHECK(c.n_right() < c.n_left());
    for (Index u = 0; u < c.n_left(); ++u) CHECK(c.degree(u) > 0);
    for (Index v = 0; v < c.n_right(); ++v) {
      CHECK(c.right_degree(v) > 0);
    }
    ++checked;
  }
  CHECK(checked > 50);
}
