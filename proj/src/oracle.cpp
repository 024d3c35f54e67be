#include "maxmin/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

namespace maxmin {

namespace {

void require_size(const BipartiteGraph& graph, Index limit, const char* what) {
  if (graph.n_left() > limit) {
    throw SizeError(std::string(what) + " supports at most " + std::to_string(limit) + " users, got " +
                    std::to_string(graph.n_left()));
  }
}

// |Gamma(S)| for every subset S of L, as bitsets over R.
std::vector<int> neighborhood_sizes(const BipartiteGraph& graph) {
  const Index n = graph.n_left();
  const std::size_t words = (graph.n_right() + 63) / 64;
  const std::uint32_t full = 1u << n;
  std::vector<std::uint64_t> gamma(static_cast<std::size_t>(full) * words, 0);
  std::vector<int> size(full, 0);
  for (std::uint32_t s = 1; s < full; ++s) {
    Index u = static_cast<Index>(std::countr_zero(s));
    std::uint32_t rest = s & (s - 1);
    for (std::size_t w = 0; w < words; ++w) gamma[s * words + w] = gamma[rest * words + w];
    for (Index v : graph.neighbors(u)) gamma[s * words + v / 64] |= std::uint64_t{1} << (v % 64);
    for (std::size_t w = 0; w < words; ++w) size[s] += std::popcount(gamma[s * words + w]);
  }
  return size;
}

std::vector<int> matching_ranks(const BipartiteGraph& graph) {
  const std::uint32_t full = 1u << graph.n_left();
  std::vector<int> rank(full, 0);
  for (std::uint32_t s = 1; s < full; ++s) {
    std::vector<Index> lefts;
    for (Index u = 0; u < graph.n_left(); ++u) {
      if (s >> u & 1) lefts.push_back(u);
    }
    rank[s] = static_cast<int>(random_priority_in_order(graph, lefts).selected.size());
  }
  return rank;
}

std::vector<Index> members_of(std::uint32_t mask) {
  std::vector<Index> out;
  for (Index u = 0; mask; ++u, mask >>= 1) {
    if (mask & 1) out.push_back(u);
  }
  return out;
}

// Peels blocks off with the given set function f: next block = union of minimizers of
// (f(X + S) - f(S)) / |X| over non-empty X disjoint from S.
FairDecomposition peel_blocks(const BipartiteGraph& graph, const std::vector<int>& f) {
  const Index n = graph.n_left();
  const std::uint32_t full = (1u << n) - 1;
  FairDecomposition dec;
  std::uint32_t placed = 0;
  std::vector<char> right_used(graph.n_right(), 0);
  while (placed != full) {
    std::uint32_t free_users = full & ~placed;
    Rational best;
    std::uint32_t block = 0;
    bool first = true;
    for (std::uint32_t x = free_users; x; x = (x - 1) & free_users) {
      Rational ratio(f[x | placed] - f[placed], std::popcount(x));
      ratio.canonicalize();
      if (first || ratio < best) {
        best = ratio;
        block = x;
        first = false;
      } else if (ratio == best) {
        block |= x;
      }
    }
    Block b;
    b.members = members_of(block);
    b.lambda = best;
    for (Index u : b.members) {
      for (Index v : graph.neighbors(u)) {
        if (!right_used[v]) {
          right_used[v] = 1;
          b.reserved_right.push_back(v);
        }
      }
    }
    std::sort(b.reserved_right.begin(), b.reserved_right.end());
    if (!dec.blocks.empty() && !(dec.blocks.back().lambda < b.lambda)) {
      throw std::logic_error("oracle produced non-increasing lambdas");
    }
    dec.blocks.push_back(std::move(b));
    placed |= block;
  }
  assign_probabilities(dec, n);
  return dec;
}

}  // namespace

FairDecomposition brute_force_blocks(const BipartiteGraph& graph) {
  require_size(graph, 15, "brute_force_blocks");
  return peel_blocks(graph, neighborhood_sizes(graph));
}

FairDecomposition brute_force_rank_blocks(const BipartiteGraph& graph) {
  require_size(graph, 15, "brute_force_rank_blocks");
  return peel_blocks(graph, matching_ranks(graph));
}

std::vector<Matching> enumerate_matchings(const BipartiteGraph& graph) {
  require_size(graph, 8, "enumerate_matchings");
  std::vector<Matching> all;
  std::vector<Edge> current;
  std::vector<char> used(graph.n_right(), 0);
  std::size_t best = 0;
  std::function<void(Index)> walk = [&](Index u) {
    if (u == graph.n_left()) {
      if (current.size() > best) {
        best = current.size();
        all.clear();
      }
      if (current.size() == best) all.emplace_back(current);
      return;
    }
    walk(u + 1);
    for (Index v : graph.neighbors(u)) {
      if (used[v]) continue;
      used[v] = 1;
      current.push_back({u, v});
      walk(u + 1);
      current.pop_back();
      used[v] = 0;
    }
  };
  walk(0);
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<Rational> lexicographic_optimum(const BipartiteGraph& graph) {
  require_size(graph, 8, "lexicographic_optimum");
  // rank of a user set = largest overlap with the covered set of some maximum matching
  const std::uint32_t full = 1u << graph.n_left();
  std::vector<std::uint32_t> covered;
  for (const Matching& m : enumerate_matchings(graph)) {
    std::uint32_t mask = 0;
    for (const Edge& e : m.pairs()) mask |= 1u << e.left;
    covered.push_back(mask);
  }
  std::vector<int> rank(full, 0);
  for (std::uint32_t s = 0; s < full; ++s) {
    for (std::uint32_t c : covered) rank[s] = std::max(rank[s], std::popcount(s & c));
  }
  FairDecomposition dec = peel_blocks(graph, rank);
  std::vector<Rational> sorted = dec.probability;
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

Rational min_neighborhood_ratio(const BipartiteGraph& graph) {
  require_size(graph, 20, "min_neighborhood_ratio");
  auto size = neighborhood_sizes(graph);
  Rational best(size[1], 1);
  for (std::uint32_t s = 1; s < size.size(); ++s) {
    Rational r(size[s], std::popcount(s));
    r.canonicalize();
    best = std::min(best, r);
  }
  return best;
}

Rational max_residual_ratio(const BipartiteGraph& graph) {
  require_size(graph, 20, "max_residual_ratio");
  auto size = neighborhood_sizes(graph);
  const std::uint32_t full = static_cast<std::uint32_t>(size.size()) - 1;
  Rational best = -1;
  for (std::uint32_t s = 0; s < full; ++s) {
    Rational r(size[full] - size[s], static_cast<int>(graph.n_left()) - std::popcount(s));
    r.canonicalize();
    best = std::max(best, r);
  }
  return best;
}

CoverageProfile rp_by_permutations(const BipartiteGraph& graph) {
  require_size(graph, 8, "rp_by_permutations");
  std::vector<Index> order(graph.n_left());
  std::iota(order.begin(), order.end(), Index{0});
  std::vector<unsigned long> hits(graph.n_left(), 0);
  unsigned long total = 0;
  do {
    for (Index u : random_priority_in_order(graph, order).selected) ++hits[u];
    ++total;
  } while (std::next_permutation(order.begin(), order.end()));
  CoverageProfile profile(graph.n_left());
  for (Index u = 0; u < graph.n_left(); ++u) {
    profile[u] = Rational(hits[u], total);
    profile[u].canonicalize();
  }
  return profile;
}

}  // namespace maxmin
