#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "maxmin/graph.hpp"
#include "maxmin/rational.hpp"

namespace maxmin {

using Capacity = std::int64_t;

/// Invalid satisfaction parameter handed to the network builder.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A flow that should exist does not; signals an inconsistent decomposition upstream.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// One set T_i of the partition together with its guessed probability lambda'_i.
struct Component {
  std::vector<Index> members;  // left vertices of the graph
  Rational lambda;
};

struct MinCutOptions {
  bool gap_heuristic = true;
  bool global_relabel = true;
};

struct CutResult {
  std::vector<Capacity> flow_value;  // per component
  std::vector<bool> saturated;       // flow_value == target
  std::vector<Index> reachable_left; // sorted graph left vertices on the minimal source side
};

struct ArcFlow {
  Index left;
  Index right;
  Capacity flow;
};

/// Source s, sink t, one node per participating left and right vertex.
///
/// Arcs are stored in CSR order so all arcs leaving a node are contiguous. Each component i is
/// scaled by the denominator q of its lambda = p/q: s->u carries p, v->t carries q and the middle
/// arcs carry p*|T_i| + 1, which exceeds the component's total supply.
class FlowNetwork {
 public:
  static constexpr std::uint32_t kSource = 0;
  static constexpr std::uint32_t kSink = 1;

  std::uint32_t num_nodes() const noexcept { return static_cast<std::uint32_t>(first_arc_.size() - 1); }
  std::size_t num_arcs() const noexcept { return head_.size(); }
  std::size_t num_components() const noexcept { return targets_.size(); }

  /// num(lambda_i) * |T_i|
  Capacity target(std::size_t component) const { return targets_[component]; }

  /// Graph vertex behind a network node, or kNoVertex for s and t.
  Index left_vertex(std::uint32_t node) const;
  Index right_vertex(std::uint32_t node) const;

 private:
  friend FlowNetwork build_parametric_network(const BipartiteGraph&, std::span<const Component>,
                                              std::span<const std::int32_t>);
  friend class PushRelabel;
  friend CutResult min_cut(const FlowNetwork&, const MinCutOptions&);
  friend std::vector<ArcFlow> integral_max_flow(const FlowNetwork&, const MinCutOptions&);

  std::uint32_t n_left_nodes_ = 0;  // nodes 2 .. 2+n_left_nodes_-1 are left vertices
  std::vector<Index> node_vertex_;  // node -> graph vertex on its side
  std::vector<std::int32_t> node_component_;

  std::vector<std::size_t> first_arc_;
  std::vector<std::uint32_t> head_;
  std::vector<std::size_t> reverse_;
  std::vector<Capacity> capacity_;  // original capacity; 0 on reverse arcs

  std::vector<Capacity> targets_;
};

/// Builds G(lambda'_1..lambda'_t; T_1..T_t).
///
/// `right_owner[v]` names the component whose current neighborhood contains v, or -1 when v
/// takes no part. Only edges (u, v) with owner(v) == component(u) are kept, which is exactly the
/// graph after deleting edges from higher sets into the neighborhoods of lower ones.
/// Throws ParameterError for lambda outside (0, 1] or overflowing capacities.
FlowNetwork build_parametric_network(const BipartiteGraph& graph, std::span<const Component> components,
                                     std::span<const std::int32_t> right_owner);

/// Convenience overload for a partition of L listed in chain order (lowest first): each right
/// vertex is owned by the first component with a neighbor of it.
FlowNetwork build_parametric_network(const BipartiteGraph& graph, std::span<const Component> components);

/// Maximum preflow followed by the minimal source side of the minimum cut.
CutResult min_cut(const FlowNetwork& network, const MinCutOptions& options = {});

/// Integral maximum flow for a network whose every component must reach its target.
/// Returns the positive middle-arc flows sorted by (left, right).
/// Throws ConsistencyError if some component cannot be saturated.
std::vector<ArcFlow> integral_max_flow(const FlowNetwork& network, const MinCutOptions& options = {});

}  // namespace maxmin
