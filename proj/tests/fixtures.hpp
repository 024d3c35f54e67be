#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "maxmin/graph.hpp"
#include "maxmin/maxflow.hpp"
#include "maxmin/rational.hpp"

namespace fixtures {

using maxmin::BipartiteGraph;
using maxmin::Edge;
using maxmin::Index;
using maxmin::Rational;

inline Rational q(long num, long den) { return maxmin::make_rational(num, den); }

inline BipartiteGraph graph_of(Index nl, Index nr, std::vector<std::pair<Index, Index>> edges) {
  std::vector<Edge> e;
  for (auto [u, v] : edges) e.push_back({u, v});
  return BipartiteGraph(nl, nr, std::move(e));
}

// a0b0 a0b1 a1b1 a1b2 a2b2 a3b1 a3b2
inline BipartiteGraph fig1() { return graph_of(4, 3, {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {3, 1}, {3, 2}}); }

// six users, four positions; blocks {a4,a5}, {a1,a2,a3}, {a0}
inline BipartiteGraph fig2() {
  return graph_of(6, 4, {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 1}, {3, 2}, {3, 3}, {4, 3}, {5, 3}});
}

// same picture with a2 attached to b2 instead of b1
inline BipartiteGraph fig2_drawn() {
  return graph_of(6, 4, {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {3, 2}, {3, 3}, {4, 3}, {5, 3}});
}

inline BipartiteGraph star3() { return graph_of(3, 1, {{0, 0}, {1, 0}, {2, 0}}); }

/// Bernoulli random bipartite graph.
inline BipartiteGraph random_graph(Index nl, Index nr, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  std::vector<Edge> e;
  for (Index u = 0; u < nl; ++u) {
    for (Index v = 0; v < nr; ++v) {
      if (coin(rng)) e.push_back({u, v});
    }
  }
  return BipartiteGraph(nl, nr, std::move(e));
}

/// Seeded corpus of canonical one-sided instances with |L| <= 10 and |R| <= 8, cycling through
/// densities 0.2, 0.4 and 0.6.
inline std::vector<BipartiteGraph> canonical_corpus(std::size_t count = 500, std::uint64_t seed = 20240601) {
  std::mt19937_64 rng(seed);
  const double densities[] = {0.2, 0.4, 0.6};
  std::vector<BipartiteGraph> out;
  std::uniform_int_distribution<Index> left_size(2, 10);
  std::uniform_int_distribution<Index> right_size(1, 8);
  while (out.size() < count) {
    double density = densities[out.size() % 3];
    BipartiteGraph g = random_graph(left_size(rng), right_size(rng), density, rng);
    maxmin::ReductionReport red = maxmin::reduce_to_one_sided(g);
    if (red.kind != maxmin::ReductionCase::Canonical) continue;
    out.push_back(red.canonical->graph);
  }
  return out;
}

/// Maximum matching size by exhaustive search over left vertices.
inline std::size_t brute_matching_size(const BipartiteGraph& g) {
  std::vector<char> used(g.n_right(), 0);
  auto rec = [&](auto& self, Index u) -> std::size_t {
    if (u == g.n_left()) return 0;
    std::size_t best = self(self, u + 1);
    for (Index v : g.neighbors(u)) {
      if (used[v]) continue;
      used[v] = 1;
      best = std::max(best, 1 + self(self, u + 1));
      used[v] = 0;
    }
    return best;
  };
  return rec(rec, 0);
}

struct BruteCut {
  maxmin::Capacity value;
  std::vector<Index> minimal_side;  // intersection of all minimizing source sides within T
};

// Enumerates the left part A of the source side; a finite cut puts exactly the kept neighbors
// of A on the source side as well.
inline BruteCut brute_cut(const BipartiteGraph& g, const std::vector<Index>& members, const Rational& lambda,
                          const std::vector<std::int32_t>& owner, std::int32_t comp) {
  maxmin::Capacity p = maxmin::numerator_i64(lambda);
  maxmin::Capacity qd = maxmin::denominator_i64(lambda);
  std::size_t n = members.size();
  maxmin::Capacity best = -1;
  std::uint32_t inter = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<char> hit(g.n_right(), 0);
    maxmin::Capacity cut = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) {
        cut += p;
        continue;
      }
      for (Index v : g.neighbors(members[i])) {
        if (owner[v] == comp && !hit[v]) {
          hit[v] = 1;
          cut += qd;
        }
      }
    }
    if (best < 0 || cut < best) {
      best = cut;
      inter = mask;
    } else if (cut == best) {
      inter &= mask;
    }
  }
  BruteCut r{best, {}};
  for (std::size_t i = 0; i < n; ++i) {
    if (inter >> i & 1) r.minimal_side.push_back(members[i]);
  }
  std::sort(r.minimal_side.begin(), r.minimal_side.end());
  return r;
}

/// Random chain partition of the left side with random lambdas, for min-cut checks. Returns the
/// components and the owner map the convenience network builder would derive.
inline std::pair<std::vector<maxmin::Component>, std::vector<std::int32_t>> random_components(
    const BipartiteGraph& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> parts_dist(1, 3);
  int parts = parts_dist(rng);
  std::uniform_int_distribution<int> pick(0, parts - 1);
  std::vector<maxmin::Component> comps(static_cast<std::size_t>(parts));
  for (Index u = 0; u < g.n_left(); ++u) comps[static_cast<std::size_t>(pick(rng))].members.push_back(u);
  std::erase_if(comps, [](const maxmin::Component& c) { return c.members.empty(); });
  for (maxmin::Component& c : comps) {
    std::uniform_int_distribution<long> den(1, 12);
    long d = den(rng);
    std::uniform_int_distribution<long> num(1, d);
    c.lambda = q(num(rng), d);
  }
  std::vector<std::int32_t> owner(g.n_right(), -1);
  for (std::size_t c = comps.size(); c-- > 0;) {
    for (Index u : comps[c].members) {
      for (Index v : g.neighbors(u)) owner[v] = static_cast<std::int32_t>(c);
    }
  }
  return {std::move(comps), std::move(owner)};
}

}  // namespace fixtures
