#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "maxmin/distribution.hpp"
#include "maxmin/graph.hpp"
#include "maxmin/rational.hpp"

namespace maxmin {

/// Exhaustive computation requested on an instance that is too large.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Deterministic maximum matching (ascending tie-break).
Matching unfair_matching(const BipartiteGraph& graph);

struct PsEvent {
  enum class Kind : std::uint8_t { LeftSaturated, RightSaturated, LeftStalled };
  Rational time;
  Kind kind;
  Index vertex;
};

struct PsResult {
  CoverageProfile profile;  // total outflow of each left vertex
  std::vector<std::pair<Edge, Rational>> edge_flow;  // positive flows, sorted by edge
  std::vector<PsEvent> events;
};

/// Simultaneous eating: every active left vertex sends flow at unit rate, split equally among
/// its active neighbors. Left vertices stop at outflow 1 (saturated) or when no neighbor is
/// left (stalled); right vertices stop at inflow 1. Exact event times.
PsResult probabilistic_serial(const BipartiteGraph& graph);

struct RandomPriorityResult {
  Matching matching;
  std::vector<Index> order;
  std::vector<Index> selected;  // sorted
};

/// Uniformly random order; each user is kept if an augmenting path from it exists.
RandomPriorityResult random_priority(const BipartiteGraph& graph, std::mt19937_64& rng);

/// Random priority for a fixed order.
RandomPriorityResult random_priority_in_order(const BipartiteGraph& graph, std::vector<Index> order);

/// Exact average over all orders (|L| <= 10, else SizeError). Computed from the matching rank of
/// every user subset: u is selected under an order iff it raises the rank of its predecessors.
CoverageProfile rp_exhaustive(const BipartiteGraph& graph);

/// Empirical selection frequencies over `runs` random orders from a generator seeded with `seed`.
CoverageProfile rp_monte_carlo(const BipartiteGraph& graph, std::uint64_t runs, std::uint64_t seed);

}  // namespace maxmin
