#include "maxmin/maxflow.hpp"

#include <algorithm>
#include <limits>

namespace maxmin {

Index FlowNetwork::left_vertex(std::uint32_t node) const {
  return (node >= 2 && node < 2 + n_left_nodes_) ? node_vertex_[node] : kNoVertex;
}

Index FlowNetwork::right_vertex(std::uint32_t node) const {
  return (node >= 2 + n_left_nodes_ && node < num_nodes()) ? node_vertex_[node] : kNoVertex;
}

FlowNetwork build_parametric_network(const BipartiteGraph& graph, std::span<const Component> components,
                                     std::span<const std::int32_t> right_owner) {
  if (right_owner.size() != graph.n_right()) throw std::invalid_argument("right_owner size mismatch");

  std::vector<Capacity> supply(components.size());
  std::vector<Capacity> sink_cap(components.size());
  std::vector<Capacity> middle_cap(components.size());
  std::vector<Capacity> targets(components.size());
  __int128 total_supply = 0;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const Rational& lambda = components[c].lambda;
    if (sgn(lambda) <= 0 || lambda > 1) {
      throw ParameterError("component " + std::to_string(c) + ": lambda " + to_string(lambda) +
                           " outside (0, 1]");
    }
    supply[c] = numerator_i64(lambda);
    sink_cap[c] = denominator_i64(lambda);
    __int128 target = static_cast<__int128>(supply[c]) * static_cast<__int128>(components[c].members.size());
    total_supply += target;
    if (target + 1 > std::numeric_limits<Capacity>::max() || total_supply > std::numeric_limits<Capacity>::max()) {
      throw ParameterError("capacities overflow the 64-bit flow type");
    }
    targets[c] = static_cast<Capacity>(target);
    middle_cap[c] = targets[c] + 1;
  }

  FlowNetwork net;
  std::vector<std::int32_t> left_component(graph.n_left(), -1);
  std::vector<std::uint32_t> left_node(graph.n_left(), 0);
  std::vector<std::uint32_t> right_node(graph.n_right(), 0);
  net.node_vertex_ = {kNoVertex, kNoVertex};
  net.node_component_ = {-1, -1};
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (Index u : components[c].members) {
      if (u >= graph.n_left()) throw std::out_of_range("component member outside the graph");
      if (left_component[u] != -1) throw std::invalid_argument("left vertex in two components");
      left_component[u] = static_cast<std::int32_t>(c);
      left_node[u] = static_cast<std::uint32_t>(net.node_vertex_.size());
      net.node_vertex_.push_back(u);
      net.node_component_.push_back(static_cast<std::int32_t>(c));
    }
  }
  net.n_left_nodes_ = static_cast<std::uint32_t>(net.node_vertex_.size() - 2);
  for (Index v = 0; v < graph.n_right(); ++v) {
    std::int32_t c = right_owner[v];
    if (c < 0) continue;
    if (static_cast<std::size_t>(c) >= components.size()) throw std::out_of_range("right owner out of range");
    right_node[v] = static_cast<std::uint32_t>(net.node_vertex_.size());
    net.node_vertex_.push_back(v);
    net.node_component_.push_back(c);
  }

  const std::size_t n = net.node_vertex_.size();
  auto kept = [&](Index u, Index v) { return right_owner[v] >= 0 && right_owner[v] == left_component[u]; };

  std::vector<std::size_t> degree(n + 1, 0);
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (Index u : components[c].members) {
      ++degree[FlowNetwork::kSource];
      ++degree[left_node[u]];
      for (Index v : graph.neighbors(u)) {
        if (kept(u, v)) {
          ++degree[left_node[u]];
          ++degree[right_node[v]];
        }
      }
    }
  }
  for (std::size_t node = 2 + net.n_left_nodes_; node < n; ++node) {
    ++degree[node];
    ++degree[FlowNetwork::kSink];
  }

  net.first_arc_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) net.first_arc_[i + 1] = net.first_arc_[i] + degree[i];
  const std::size_t m = net.first_arc_[n];
  net.head_.resize(m);
  net.reverse_.resize(m);
  net.capacity_.assign(m, 0);
  std::vector<std::size_t> fill(net.first_arc_.begin(), net.first_arc_.end() - 1);
  auto add_pair = [&](std::uint32_t from, std::uint32_t to, Capacity cap) {
    std::size_t a = fill[from]++;
    std::size_t b = fill[to]++;
    net.head_[a] = to;
    net.head_[b] = from;
    net.reverse_[a] = b;
    net.reverse_[b] = a;
    net.capacity_[a] = cap;
  };

  for (std::size_t c = 0; c < components.size(); ++c) {
    for (Index u : components[c].members) {
      add_pair(FlowNetwork::kSource, left_node[u], supply[c]);
      for (Index v : graph.neighbors(u)) {
        if (kept(u, v)) add_pair(left_node[u], right_node[v], middle_cap[c]);
      }
    }
  }
  for (std::uint32_t node = 2 + net.n_left_nodes_; node < n; ++node) {
    add_pair(node, FlowNetwork::kSink, sink_cap[static_cast<std::size_t>(net.node_component_[node])]);
  }
  net.targets_ = std::move(targets);
  return net;
}

FlowNetwork build_parametric_network(const BipartiteGraph& graph, std::span<const Component> components) {
  std::vector<std::int32_t> left_component(graph.n_left(), -1);
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (Index u : components[c].members) {
      if (u < graph.n_left()) left_component[u] = static_cast<std::int32_t>(c);
    }
  }
  std::vector<std::int32_t> owner(graph.n_right(), -1);
  for (Index v = 0; v < graph.n_right(); ++v) {
    for (Index u : graph.left_neighbors(v)) {
      std::int32_t c = left_component[u];
      if (c >= 0 && (owner[v] < 0 || c < owner[v])) owner[v] = c;
    }
  }
  return build_parametric_network(graph, components, owner);
}

/// First phase of highest-label push-relabel: computes a maximum preflow. Nodes whose label
/// reaches n can no longer reach the sink and are left holding their excess.
class PushRelabel {
 public:
  PushRelabel(const FlowNetwork& net, const MinCutOptions& options)
      : net_(net), options_(options), n_(net.num_nodes()), residual_(net.capacity_), excess_(n_, 0),
        label_(n_, 0), current_(n_), bucket_active_(n_ + 1, kNil), next_active_(n_, kNil), bucket_all_(n_ + 1, kNil),
        next_all_(n_, kNil), prev_all_(n_, kNil) {}

  void run() {
    const std::uint32_t s = FlowNetwork::kSource;
    for (std::size_t a = net_.first_arc_[s]; a < net_.first_arc_[s + 1]; ++a) {
      Capacity cap = residual_[a];
      if (cap == 0) continue;
      residual_[a] = 0;
      residual_[net_.reverse_[a]] += cap;
      excess_[net_.head_[a]] += cap;
    }
    global_relabel();
    const std::size_t relabel_threshold = 6 * static_cast<std::size_t>(n_) + net_.num_arcs() / 2;
    while (max_active_ >= 0) {
      std::uint32_t label = static_cast<std::uint32_t>(max_active_);
      std::uint32_t v = bucket_active_[label];
      if (v == kNil) {
        --max_active_;
        continue;
      }
      bucket_active_[label] = next_active_[v];
      discharge(v);
      if (options_.global_relabel && work_ > relabel_threshold) global_relabel();
    }
  }

  Capacity residual(std::size_t arc) const { return residual_[arc]; }
  Capacity excess(std::uint32_t node) const { return excess_[node]; }

 private:
  static constexpr std::uint32_t kNil = static_cast<std::uint32_t>(-1);

  bool is_terminal(std::uint32_t v) const { return v == FlowNetwork::kSource || v == FlowNetwork::kSink; }

  void activate(std::uint32_t v) {
    std::uint32_t d = label_[v];
    next_active_[v] = bucket_active_[d];
    bucket_active_[d] = v;
    max_active_ = std::max<std::int64_t>(max_active_, d);
  }

  void link_all(std::uint32_t v) {
    std::uint32_t d = label_[v];
    prev_all_[v] = kNil;
    next_all_[v] = bucket_all_[d];
    if (bucket_all_[d] != kNil) prev_all_[bucket_all_[d]] = v;
    bucket_all_[d] = v;
    max_label_ = std::max<std::int64_t>(max_label_, d);
  }

  void unlink_all(std::uint32_t v) {
    std::uint32_t d = label_[v];
    if (prev_all_[v] != kNil) {
      next_all_[prev_all_[v]] = next_all_[v];
    } else {
      bucket_all_[d] = next_all_[v];
    }
    if (next_all_[v] != kNil) prev_all_[next_all_[v]] = prev_all_[v];
  }

  void discharge(std::uint32_t v) {
    const std::size_t end = net_.first_arc_[v + 1];
    while (true) {
      const std::uint32_t d = label_[v];
      for (std::size_t a = current_[v]; a < end; ++a) {
        if (residual_[a] == 0) continue;
        std::uint32_t w = net_.head_[a];
        if (label_[w] + 1 != d) continue;
        Capacity delta = std::min(excess_[v], residual_[a]);
        residual_[a] -= delta;
        residual_[net_.reverse_[a]] += delta;
        excess_[v] -= delta;
        bool was_idle = excess_[w] == 0;
        excess_[w] += delta;
        if (was_idle && !is_terminal(w)) activate(w);
        if (excess_[v] == 0) {
          current_[v] = a;
          return;
        }
      }

      // relabel
      std::uint32_t lowest = n_;
      const std::size_t begin = net_.first_arc_[v];
      for (std::size_t a = begin; a < end; ++a) {
        if (residual_[a] > 0) lowest = std::min(lowest, label_[net_.head_[a]] + 1);
      }
      work_ += 12 + (end - begin);
      if (options_.gap_heuristic && bucket_all_[d] == v && next_all_[v] == kNil) {
        gap(d);
        return;
      }
      unlink_all(v);
      if (lowest >= n_) {
        label_[v] = n_;
        return;
      }
      label_[v] = lowest;
      current_[v] = begin;
      link_all(v);
    }
  }

  // no node is left with label d: everything above it is cut off from the sink
  void gap(std::uint32_t d) {
    for (std::int64_t level = d; level <= max_label_; ++level) {
      for (std::uint32_t w = bucket_all_[level]; w != kNil; w = next_all_[w]) label_[w] = n_;
      bucket_all_[level] = kNil;
    }
    max_label_ = static_cast<std::int64_t>(d) - 1;
  }

  void global_relabel() {
    work_ = 0;
    std::fill(label_.begin(), label_.end(), n_);
    std::fill(bucket_active_.begin(), bucket_active_.end(), kNil);
    std::fill(bucket_all_.begin(), bucket_all_.end(), kNil);
    max_active_ = -1;
    max_label_ = -1;

    std::vector<std::uint32_t> queue;
    queue.reserve(n_);
    label_[FlowNetwork::kSink] = 0;
    queue.push_back(FlowNetwork::kSink);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::uint32_t x = queue[head];
      for (std::size_t a = net_.first_arc_[x]; a < net_.first_arc_[x + 1]; ++a) {
        std::uint32_t y = net_.head_[a];
        if (y == FlowNetwork::kSource || label_[y] != n_ || residual_[net_.reverse_[a]] == 0) continue;
        label_[y] = label_[x] + 1;
        queue.push_back(y);
      }
    }
    for (std::uint32_t v = 2; v < n_; ++v) {
      current_[v] = net_.first_arc_[v];
      if (label_[v] >= n_) continue;
      link_all(v);
      if (excess_[v] > 0) activate(v);
    }
  }

  const FlowNetwork& net_;
  MinCutOptions options_;
  std::uint32_t n_;
  std::vector<Capacity> residual_;
  std::vector<Capacity> excess_;
  std::vector<std::uint32_t> label_;
  std::vector<std::size_t> current_;
  std::vector<std::uint32_t> bucket_active_;
  std::vector<std::uint32_t> next_active_;
  std::vector<std::uint32_t> bucket_all_;
  std::vector<std::uint32_t> next_all_;
  std::vector<std::uint32_t> prev_all_;
  std::int64_t max_active_ = -1;
  std::int64_t max_label_ = -1;
  std::size_t work_ = 0;

  friend CutResult min_cut(const FlowNetwork&, const MinCutOptions&);
  friend std::vector<ArcFlow> integral_max_flow(const FlowNetwork&, const MinCutOptions&);

  std::vector<Capacity> component_flows() const {
    std::vector<Capacity> flow(net_.num_components(), 0);
    const std::uint32_t t = FlowNetwork::kSink;
    for (std::size_t a = net_.first_arc_[t]; a < net_.first_arc_[t + 1]; ++a) {
      std::uint32_t v = net_.head_[a];
      // arc t->v is the reverse of v->t; its residual equals the flow on v->t
      flow[static_cast<std::size_t>(net_.node_component_[v])] += residual_[a];
    }
    return flow;
  }
};

CutResult min_cut(const FlowNetwork& network, const MinCutOptions& options) {
  PushRelabel solver(network, options);
  solver.run();

  CutResult result;
  result.flow_value = solver.component_flows();
  result.saturated.resize(network.num_components());
  for (std::size_t c = 0; c < network.num_components(); ++c) {
    result.saturated[c] = result.flow_value[c] == network.target(c);
  }

  // The minimal source side of a minimum cut: everything reachable in the residual graph from s
  // or from a node still holding excess (that excess is routed back to s in a full flow).
  const std::uint32_t n = network.num_nodes();
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> queue;
  seen[FlowNetwork::kSource] = 1;
  queue.push_back(FlowNetwork::kSource);
  for (std::uint32_t v = 2; v < n; ++v) {
    if (solver.excess(v) > 0) {
      seen[v] = 1;
      queue.push_back(v);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::uint32_t x = queue[head];
    for (std::size_t a = network.first_arc_[x]; a < network.first_arc_[x + 1]; ++a) {
      std::uint32_t y = network.head_[a];
      if (seen[y] || solver.residual(a) == 0) continue;
      seen[y] = 1;
      queue.push_back(y);
    }
  }
  for (std::uint32_t v = 2; v < 2 + network.n_left_nodes_; ++v) {
    if (seen[v]) result.reachable_left.push_back(network.node_vertex_[v]);
  }
  std::sort(result.reachable_left.begin(), result.reachable_left.end());
  return result;
}

std::vector<ArcFlow> integral_max_flow(const FlowNetwork& network, const MinCutOptions& options) {
  PushRelabel solver(network, options);
  solver.run();
  std::vector<Capacity> flows = solver.component_flows();
  for (std::size_t c = 0; c < network.num_components(); ++c) {
    if (flows[c] != network.target(c)) {
      throw ConsistencyError("component " + std::to_string(c) + " carries " + std::to_string(flows[c]) +
                             " of its target " + std::to_string(network.target(c)));
    }
  }
  // every unit leaving s reached t, so the preflow is a flow
  std::vector<ArcFlow> out;
  for (std::uint32_t v = 2; v < 2 + network.n_left_nodes_; ++v) {
    for (std::size_t a = network.first_arc_[v]; a < network.first_arc_[v + 1]; ++a) {
      if (network.capacity_[a] == 0) continue;  // reverse of s->v
      Capacity f = network.capacity_[a] - solver.residual(a);
      if (f > 0) out.push_back({network.node_vertex_[v], network.node_vertex_[network.head_[a]], f});
    }
  }
  std::sort(out.begin(), out.end(), [](const ArcFlow& x, const ArcFlow& y) {
    return x.left != y.left ? x.left < y.left : x.right < y.right;
  });
  return out;
}

}  // namespace maxmin
