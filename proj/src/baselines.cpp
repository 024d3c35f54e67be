#include "maxmin/baselines.hpp"

#include <algorithm>
#include <numeric>

namespace maxmin {

Matching unfair_matching(const BipartiteGraph& graph) { return maximum_matching(graph); }

PsResult probabilistic_serial(const BipartiteGraph& graph) {
  const Index nl = graph.n_left();
  const Index nr = graph.n_right();
  std::vector<char> left_active(nl, 1);
  std::vector<char> right_active(nr, 1);
  std::vector<Rational> out(nl, Rational(0));
  std::vector<Rational> in(nr, Rational(0));
  std::vector<Rational> flow(graph.num_edges(), Rational(0));
  std::vector<std::size_t> edge_base(nl + 1, 0);
  for (Index u = 0; u < nl; ++u) edge_base[u + 1] = edge_base[u] + graph.degree(u);

  PsResult result;
  Rational now = 0;
  std::vector<unsigned long> active_degree(nl);
  std::vector<Rational> rate_in(nr);
  while (true) {
    for (Index u = 0; u < nl; ++u) {
      if (!left_active[u]) continue;
      unsigned long k = 0;
      for (Index v : graph.neighbors(u)) k += right_active[v] ? 1 : 0;
      if (k == 0) {
        left_active[u] = 0;
        result.events.push_back({now, PsEvent::Kind::LeftStalled, u});
      }
      active_degree[u] = k;
    }
    bool any = std::any_of(left_active.begin(), left_active.end(), [](char c) { return c != 0; });
    if (!any) break;

    for (Index v = 0; v < nr; ++v) rate_in[v] = 0;
    for (Index u = 0; u < nl; ++u) {
      if (!left_active[u]) continue;
      Rational share(1UL, active_degree[u]);
      for (Index v : graph.neighbors(u)) {
        if (right_active[v]) rate_in[v] += share;
      }
    }
    bool have_step = false;
    Rational step;
    for (Index u = 0; u < nl; ++u) {
      if (!left_active[u]) continue;
      Rational s = 1 - out[u];
      if (!have_step || s < step) step = s, have_step = true;
    }
    for (Index v = 0; v < nr; ++v) {
      if (!right_active[v] || sgn(rate_in[v]) == 0) continue;
      Rational s = (1 - in[v]) / rate_in[v];
      if (s < step) step = s;
    }

    for (Index u = 0; u < nl; ++u) {
      if (!left_active[u]) continue;
      Rational amount = step / active_degree[u];
      auto nbrs = graph.neighbors(u);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        if (!right_active[nbrs[i]]) continue;
        flow[edge_base[u] + i] += amount;
        in[nbrs[i]] += amount;
      }
      out[u] += step;
    }
    now += step;
    for (Index u = 0; u < nl; ++u) {
      if (left_active[u] && out[u] == 1) {
        left_active[u] = 0;
        result.events.push_back({now, PsEvent::Kind::LeftSaturated, u});
      }
    }
    for (Index v = 0; v < nr; ++v) {
      if (right_active[v] && in[v] == 1) {
        right_active[v] = 0;
        result.events.push_back({now, PsEvent::Kind::RightSaturated, v});
      }
    }
  }

  result.profile = std::move(out);
  for (Index u = 0; u < nl; ++u) {
    auto nbrs = graph.neighbors(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (sgn(flow[edge_base[u] + i]) > 0) result.edge_flow.push_back({{u, nbrs[i]}, flow[edge_base[u] + i]});
    }
  }
  return result;
}

namespace {

// Augmenting path from u against `mate_right`; updates the matching on success.
bool augment_from(const BipartiteGraph& graph, Index root, std::vector<Index>& mate_left,
                  std::vector<Index>& mate_right, std::vector<std::uint32_t>& stamp, std::uint32_t round) {
  struct Frame {
    Index u;
    std::size_t next;
  };
  std::vector<Frame> stack{{root, 0}};
  std::vector<Index> via;  // right vertex chosen at each level
  while (!stack.empty()) {
    Frame& f = stack.back();
    auto nbrs = graph.neighbors(f.u);
    if (f.next == nbrs.size()) {
      stack.pop_back();
      if (!via.empty()) via.pop_back();
      continue;
    }
    Index v = nbrs[f.next++];
    if (stamp[v] == round) continue;
    stamp[v] = round;
    if (mate_right[v] == kNoVertex) {
      via.push_back(v);
      for (std::size_t i = 0; i < stack.size(); ++i) {
        mate_left[stack[i].u] = via[i];
        mate_right[via[i]] = stack[i].u;
      }
      return true;
    }
    via.push_back(v);
    stack.push_back({mate_right[v], 0});
  }
  return false;
}

}  // namespace

RandomPriorityResult random_priority_in_order(const BipartiteGraph& graph, std::vector<Index> order) {
  std::vector<Index> mate_left(graph.n_left(), kNoVertex);
  std::vector<Index> mate_right(graph.n_right(), kNoVertex);
  std::vector<std::uint32_t> stamp(graph.n_right(), 0);
  RandomPriorityResult result;
  std::uint32_t round = 0;
  for (Index u : order) {
    if (augment_from(graph, u, mate_left, mate_right, stamp, ++round)) result.selected.push_back(u);
  }
  std::sort(result.selected.begin(), result.selected.end());
  std::vector<Edge> pairs;
  for (Index u = 0; u < graph.n_left(); ++u) {
    if (mate_left[u] != kNoVertex) pairs.push_back({u, mate_left[u]});
  }
  result.matching = Matching(std::move(pairs));
  result.order = std::move(order);
  return result;
}

RandomPriorityResult random_priority(const BipartiteGraph& graph, std::mt19937_64& rng) {
  std::vector<Index> order(graph.n_left());
  std::iota(order.begin(), order.end(), Index{0});
  std::shuffle(order.begin(), order.end(), rng);
  return random_priority_in_order(graph, std::move(order));
}

CoverageProfile rp_exhaustive(const BipartiteGraph& graph) {
  const Index n = graph.n_left();
  if (n > 10) throw SizeError("exhaustive random priority needs at most 10 users, got " + std::to_string(n));
  const std::uint32_t full = 1u << n;

  // rank[S] via one augmentation per added user: rank(S) = rank(S - u) + [u augments]
  std::vector<int> rank(full, 0);
  for (std::uint32_t s = 1; s < full; ++s) {
    std::vector<Index> lefts;
    for (Index u = 0; u < n; ++u) {
      if (s >> u & 1) lefts.push_back(u);
    }
    rank[s] = static_cast<int>(random_priority_in_order(graph, lefts).selected.size());
  }

  std::vector<mpz_class> factorial(n + 1, 1);
  for (Index i = 1; i <= n; ++i) factorial[i] = factorial[i - 1] * i;
  CoverageProfile profile(n, Rational(0));
  for (Index u = 0; u < n; ++u) {
    mpz_class count = 0;
    for (std::uint32_t s = 0; s < full; ++s) {
      if (s >> u & 1) continue;
      if (rank[s | (1u << u)] > rank[s]) {
        int k = std::popcount(s);
        count += factorial[k] * factorial[n - 1 - k];
      }
    }
    profile[u] = Rational(count, factorial[n]);
    profile[u].canonicalize();
  }
  return profile;
}

CoverageProfile rp_monte_carlo(const BipartiteGraph& graph, std::uint64_t runs, std::uint64_t seed) {
  if (runs == 0) throw std::invalid_argument("monte carlo needs at least one run");
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> hits(graph.n_left(), 0);
  for (std::uint64_t t = 0; t < runs; ++t) {
    for (Index u : random_priority(graph, rng).selected) ++hits[u];
  }
  CoverageProfile profile(graph.n_left());
  for (Index u = 0; u < graph.n_left(); ++u) {
    profile[u] = Rational(static_cast<unsigned long>(hits[u]), static_cast<unsigned long>(runs));
    profile[u].canonicalize();
  }
  return profile;
}

}  // namespace maxmin
