#include <doctest.h>

#include <map>

#include "fixtures.hpp"
#include "maxmin/maxflow.hpp"

using namespace maxmin;
using namespace fixtures;

namespace {

std::vector<Index> all_lefts(const BipartiteGraph& g) {
  std::vector<Index> out(g.n_left());
  for (Index u = 0; u < g.n_left(); ++u) out[u] = u;
  return out;
}

}  // namespace

TEST_CASE("star with lambda 1/3 is saturated") {
  BipartiteGraph g = star3();
  std::vector<Component> comps{{all_lefts(g), q(1, 3)}};
  FlowNetwork net = build_parametric_network(g, comps);
  CHECK(net.target(0) == 3);
  CutResult cut = min_cut(net);
  CHECK(cut.flow_value[0] == 3);
  CHECK(cut.saturated[0]);
  CHECK(cut.reachable_left.empty());
}

TEST_CASE("star with lambda 1/2 is not saturated") {
  BipartiteGraph g = star3();
  std::vector<Component> comps{{all_lefts(g), q(1, 2)}};
  FlowNetwork net = build_parametric_network(g, comps);
  CHECK(net.target(0) == 3);
  CutResult cut = min_cut(net);
  CHECK(cut.flow_value[0] == 2);
  CHECK_FALSE(cut.saturated[0]);
  CHECK(cut.reachable_left == std::vector<Index>{0, 1, 2});
}

TEST_CASE("lambda 1 uses unit capacities") {
  BipartiteGraph g = graph_of(2, 2, {{0, 0}, {1, 1}});
  FlowNetwork net = build_parametric_network(g, std::vector<Component>{{all_lefts(g), q(1, 1)}});
  CHECK(net.target(0) == 2);
  CHECK(min_cut(net).saturated[0]);
}

TEST_CASE("invalid lambdas are rejected") {
  BipartiteGraph g = star3();
  CHECK_THROWS_AS(build_parametric_network(g, std::vector<Component>{{all_lefts(g), q(0, 1)}}), ParameterError);
  CHECK_THROWS_AS(build_parametric_network(g, std::vector<Component>{{all_lefts(g), q(-1, 2)}}), ParameterError);
  CHECK_THROWS_AS(build_parametric_network(g, std::vector<Component>{{all_lefts(g), q(5, 4)}}), ParameterError);
}

TEST_CASE("figure 2 with the full user set") {
  BipartiteGraph g = fig2();
  for (Rational lambda : {q(5, 7), q(2, 3)}) {
    CutResult cut = min_cut(build_parametric_network(g, std::vector<Component>{{all_lefts(g), lambda}}));
    CHECK_FALSE(cut.saturated[0]);
    CHECK(std::binary_search(cut.reachable_left.begin(), cut.reachable_left.end(), Index{4}));
    CHECK(std::binary_search(cut.reachable_left.begin(), cut.reachable_left.end(), Index{5}));
  }
}

TEST_CASE("figure 2 split into two independent components") {
  BipartiteGraph g = fig2();
  std::vector<Component> comps{{{4, 5}, q(1, 2)}, {{0, 1, 2, 3}, q(3, 4)}};
  FlowNetwork net = build_parametric_network(g, comps);
  CHECK(net.target(0) == 2);
  CHECK(net.target(1) == 12);
  CutResult both = min_cut(net);
  CHECK(both.saturated[0]);
  // {a1,a2,a3} after losing b3 only reaches {b1,b2}: 2 < 3 * 3/4
  CHECK_FALSE(both.saturated[1]);

  std::vector<std::int32_t> owner{1, 1, 1, 0};
  for (std::size_t c = 0; c < comps.size(); ++c) {
    std::vector<Component> alone{comps[c]};
    std::vector<std::int32_t> own_alone(g.n_right(), -1);
    for (Index v = 0; v < g.n_right(); ++v) {
      if (owner[v] == static_cast<std::int32_t>(c)) own_alone[v] = 0;
    }
    CutResult single = min_cut(build_parametric_network(g, alone, own_alone));
    CHECK(single.flow_value[0] == both.flow_value[c]);
    std::vector<Index> expected;
    for (Index u : both.reachable_left) {
      if (std::find(comps[c].members.begin(), comps[c].members.end(), u) != comps[c].members.end()) {
        expected.push_back(u);
      }
    }
    CHECK(single.reachable_left == expected);
  }
}

TEST_CASE("min_cut matches cut enumeration on 200 random networks") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<Index> nl_dist(1, 12);
  std::uniform_int_distribution<Index> nr_dist(1, 10);
  std::uniform_real_distribution<double> dens(0.1, 0.7);
  for (int iter = 0; iter < 200; ++iter) {
    BipartiteGraph g = random_graph(nl_dist(rng), nr_dist(rng), dens(rng), rng);
    auto [comps, owner] = random_components(g, rng);
    FlowNetwork net = build_parametric_network(g, comps);
    CutResult cut = min_cut(net);
    CutResult plain = min_cut(net, {.gap_heuristic = false, .global_relabel = false});
    CutResult gap_only = min_cut(net, {.gap_heuristic = true, .global_relabel = false});
    CHECK(plain.flow_value == cut.flow_value);
    CHECK(plain.reachable_left == cut.reachable_left);
    CHECK(gap_only.flow_value == cut.flow_value);
    CHECK(gap_only.reachable_left == cut.reachable_left);

    for (std::size_t c = 0; c < comps.size(); ++c) {
      BruteCut brute = brute_cut(g, comps[c].members, comps[c].lambda, owner, static_cast<std::int32_t>(c));
      CHECK(cut.flow_value[c] == brute.value);
      CHECK(cut.saturated[c] == (brute.value == net.target(c)));
      std::vector<Index> mine;
      for (Index u : cut.reachable_left) {
        if (std::find(comps[c].members.begin(), comps[c].members.end(), u) != comps[c].members.end()) {
          mine.push_back(u);
        }
      }
      CHECK(mine == brute.minimal_side);
      CHECK(cut.saturated[c] == mine.empty());
    }
  }
}

TEST_CASE("integral_max_flow marginals") {
  SUBCASE("star") {
    BipartiteGraph g = star3();
    auto flows = integral_max_flow(build_parametric_network(g, std::vector<Component>{{all_lefts(g), q(1, 3)}}));
    REQUIRE(flows.size() == 3);
    for (const ArcFlow& f : flows) CHECK(f.flow == 1);
  }
  SUBCASE("figure 1 block {a1,a2,a3}") {
    BipartiteGraph g = fig1();
    std::vector<Component> comps{{{1, 2, 3}, q(2, 3)}};
    std::vector<std::int32_t> owner{-1, 0, 0};
    auto flows = integral_max_flow(build_parametric_network(g, comps, owner));
    std::map<Index, Capacity> row, col;
    for (const ArcFlow& f : flows) {
      row[f.left] += f.flow;
      col[f.right] += f.flow;
      CHECK(g.has_edge(f.left, f.right));
    }
    CHECK(row[1] == 2);
    CHECK(row[2] == 2);
    CHECK(row[3] == 2);
    CHECK(col[1] == 3);
    CHECK(col[2] == 3);
    CHECK(std::find_if(flows.begin(), flows.end(), [](const ArcFlow& f) {
            return f.left == 2 && f.right == 2 && f.flow == 2;
          }) != flows.end());
  }
  SUBCASE("figure 2 block {a4,a5}") {
    BipartiteGraph g = fig2();
    std::vector<Component> comps{{{4, 5}, q(1, 2)}};
    std::vector<std::int32_t> owner{-1, -1, -1, 0};
    auto flows = integral_max_flow(build_parametric_network(g, comps, owner));
    REQUIRE(flows.size() == 2);
    CHECK(flows[0].left == 4);
    CHECK(flows[0].flow == 1);
    CHECK(flows[1].left == 5);
    CHECK(flows[1].flow == 1);
  }
  SUBCASE("unreachable target") {
    BipartiteGraph g = star3();
    CHECK_THROWS_AS(integral_max_flow(build_parametric_network(g, std::vector<Component>{{all_lefts(g), q(1, 2)}})),
                    ConsistencyError);
  }
}

TEST_CASE("flow conservation in integral flows of random saturated networks") {
  std::mt19937_64 rng(4);
  int tested = 0;
  for (int iter = 0; iter < 100; ++iter) {
    BipartiteGraph g = random_graph(8, 6, 0.5, rng);
    std::vector<Component> comps{{all_lefts(g), q(1, 8)}};
    CutResult cut = min_cut(build_parametric_network(g, comps));
    if (!cut.saturated[0]) continue;
    auto flows = integral_max_flow(build_parametric_network(g, comps));
    std::vector<Capacity> row(g.n_left(), 0), col(g.n_right(), 0);
    for (const ArcFlow& f : flows) {
      row[f.left] += f.flow;
      col[f.right] += f.flow;
    }
    for (Capacity r : row) CHECK(r == 1);
    for (Capacity c : col) CHECK(c <= 8);
    ++tested;
  }
  CHECK(tested > 10);
}
