#include "maxmin/block_distribution.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "maxmin/maxflow.hpp"

namespace maxmin {

namespace {

constexpr std::uint32_t kNil = std::numeric_limits<std::uint32_t>::max();

void check_block_sizes(const Block& block) {
  if (block.members.empty() || block.reserved_right.empty()) {
    throw ConsistencyError("block with no members or no reserved vertices");
  }
  Rational expected(static_cast<unsigned long>(block.reserved_right.size()),
                    static_cast<unsigned long>(block.members.size()));
  expected.canonicalize();
  if (expected != block.lambda) {
    throw ConsistencyError("block lambda " + to_string(block.lambda) + " differs from |reserved|/|members| = " +
                           to_string(expected));
  }
}

EdgeAssignment empty_assignment(const Block& block, std::size_t block_id) {
  EdgeAssignment a;
  a.block = block_id;
  a.members = block.members;
  a.reserved = block.reserved_right;
  a.g = std::gcd<std::uint64_t>(block.members.size(), block.reserved_right.size());
  a.l = block.members.size() / a.g;
  a.r = block.reserved_right.size() / a.g;
  return a;
}

/// Multigraph with parallel-edge counts that is repeatedly stripped of matchings covering every
/// right vertex and every left vertex of maximum residual degree. Right degrees must all equal the
/// number of remaining rounds and left degrees may not exceed it; removing such a matching keeps
/// that shape, so the peel succeeds in every round.
class MatchingPeeler {
 public:
  MatchingPeeler(std::size_t n_left, std::size_t n_right, std::uint64_t rounds)
      : n_left_(n_left), n_right_(n_right), remaining_(rounds) {}

  void add_arc(Index left, Index right, std::uint64_t count) {
    if (count == 0) return;
    arc_left_.push_back(left);
    arc_right_.push_back(right);
    count_.push_back(count);
  }

  /// Runs the peel, calling emit(arc ids of the matching, repetition count) per distinct round.
  /// Returns false if some round fails to produce a valid matching.
  template <class Emit>
  bool run(Emit&& emit, std::size_t& rounds) {
    index_arcs();
    left_degree_.assign(n_left_, 0);
    right_degree_.assign(n_right_, 0);
    for (std::size_t a = 0; a < count_.size(); ++a) {
      left_degree_[arc_left_[a]] += count_[a];
      right_degree_[arc_right_[a]] += count_[a];
    }
    if (!shape_ok()) return false;
    mate_left_.assign(n_left_, kNil);
    mate_right_.assign(n_right_, kNil);
    dist_left_.assign(n_left_, kNil);
    dist_right_.assign(n_right_, kNil);
    cursor_left_.assign(n_left_, 0);
    cursor_right_.assign(n_right_, 0);

    while (remaining_ > 0) {
      ++rounds;
      if (!peel_once()) return false;
      std::uint64_t repeat = remaining_;
      std::vector<std::uint32_t> arcs;  // in left order
      arcs.reserve(n_right_);
      for (std::size_t u = 0; u < n_left_; ++u) {
        std::uint32_t a = mate_left_[u];
        if (a == kNil) {
          repeat = std::min(repeat, remaining_ - left_degree_[u]);
        } else {
          arcs.push_back(a);
          repeat = std::min(repeat, count_[a]);
        }
      }
      if (repeat == 0) return false;
      for (std::uint32_t a : arcs) {
        count_[a] -= repeat;
        left_degree_[arc_left_[a]] -= repeat;
        right_degree_[arc_right_[a]] -= repeat;
      }
      remaining_ -= repeat;
      if (!shape_ok()) return false;
      emit(arcs, repeat);
    }
    return true;
  }

  Index arc_left(std::uint32_t a) const { return arc_left_[a]; }
  Index arc_right(std::uint32_t a) const { return arc_right_[a]; }

 private:
  struct Csr {
    std::vector<std::size_t> offsets;
    std::vector<std::uint32_t> arcs;
  };

  void index_arcs() {
    auto build = [&](std::size_t n, const std::vector<Index>& end, Csr& csr) {
      csr.offsets.assign(n + 1, 0);
      for (Index x : end) ++csr.offsets[x + 1];
      for (std::size_t i = 0; i < n; ++i) csr.offsets[i + 1] += csr.offsets[i];
      csr.arcs.resize(end.size());
      std::vector<std::size_t> fill(csr.offsets.begin(), csr.offsets.end() - 1);
      for (std::uint32_t a = 0; a < end.size(); ++a) csr.arcs[fill[end[a]]++] = a;
    };
    build(n_left_, arc_left_, by_left_);
    build(n_right_, arc_right_, by_right_);
  }

  // peeling safety: right degrees equal the remaining rounds, left degrees do not exceed them
  bool shape_ok() const {
    for (std::uint64_t d : right_degree_) {
      if (d != remaining_) return false;
    }
    for (std::uint64_t d : left_degree_) {
      if (d > remaining_) return false;
    }
    return true;
  }

  bool peel_once() {
    // warm start: keep last round's pairs whose arcs survive, but only those on tight lefts
    std::vector<std::uint32_t> parked;
    std::vector<Index> sources;
    for (std::size_t u = 0; u < n_left_; ++u) {
      std::uint32_t a = mate_left_[u];
      bool tight = left_degree_[u] == remaining_;
      if (a != kNil && (count_[a] == 0 || !tight)) {
        mate_left_[u] = kNil;
        mate_right_[arc_right_[a]] = kNil;
        if (count_[a] > 0) parked.push_back(a);
      }
      if (tight && mate_left_[u] == kNil) sources.push_back(static_cast<Index>(u));
    }
    augment(sources, by_left_, arc_left_, arc_right_, mate_left_, mate_right_, dist_left_, cursor_left_);
    for (Index u : sources) {
      if (mate_left_[u] == kNil) return false;
    }

    for (std::uint32_t a : parked) {
      if (mate_left_[arc_left_[a]] == kNil && mate_right_[arc_right_[a]] == kNil) {
        mate_left_[arc_left_[a]] = a;
        mate_right_[arc_right_[a]] = a;
      }
    }
    sources.clear();
    for (std::size_t v = 0; v < n_right_; ++v) {
      if (mate_right_[v] == kNil) sources.push_back(static_cast<Index>(v));
    }
    augment(sources, by_right_, arc_right_, arc_left_, mate_right_, mate_left_, dist_right_, cursor_right_);
    for (Index v : sources) {
      if (mate_right_[v] == kNil) return false;
    }
    return true;
  }

  // Hopcroft-Karp from the given free vertices of side A. Matched A vertices stay matched.
  // `dist` must hold kNil everywhere on entry and is restored on exit; each phase only touches
  // the vertices its search reaches.
  void augment(const std::vector<Index>& sources, const Csr& adj, const std::vector<Index>& end_a,
               const std::vector<Index>& end_b, std::vector<std::uint32_t>& mate_a,
               std::vector<std::uint32_t>& mate_b, std::vector<std::uint32_t>& dist,
               std::vector<std::size_t>& cursor) {
    constexpr std::uint32_t kInf = kNil;
    std::vector<Index> queue;
    std::vector<Index> stack;
    while (true) {
      queue.clear();
      for (Index x : sources) {
        if (mate_a[x] == kNil) {
          dist[x] = 0;
          cursor[x] = adj.offsets[x];
          queue.push_back(x);
        }
      }
      if (queue.empty()) return;
      bool found = false;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        Index x = queue[head];
        for (std::size_t i = adj.offsets[x]; i < adj.offsets[x + 1]; ++i) {
          std::uint32_t a = adj.arcs[i];
          if (count_[a] == 0) continue;
          std::uint32_t m = mate_b[end_b[a]];
          if (m == kNil) {
            found = true;
          } else if (dist[end_a[m]] == kInf) {
            Index y = end_a[m];
            dist[y] = dist[x] + 1;
            cursor[y] = adj.offsets[y];
            queue.push_back(y);
          }
        }
      }

      if (found) {
        for (Index root : sources) {
          if (mate_a[root] != kNil || dist[root] != 0) continue;
          stack.assign(1, root);
          while (!stack.empty()) {
            Index x = stack.back();
            if (cursor[x] == adj.offsets[x + 1]) {
              dist[x] = kInf - 1;  // dead for the rest of this phase
              stack.pop_back();
              if (!stack.empty()) ++cursor[stack.back()];
              continue;
            }
            std::uint32_t a = adj.arcs[cursor[x]];
            if (count_[a] == 0) {
              ++cursor[x];
              continue;
            }
            std::uint32_t m = mate_b[end_b[a]];
            if (m == kNil) {
              for (Index y : stack) {
                std::uint32_t arc = adj.arcs[cursor[y]];
                mate_a[y] = arc;
                mate_b[end_b[arc]] = arc;
              }
              break;
            }
            Index y = end_a[m];
            if (dist[y] < kInf - 1 && dist[y] == dist[x] + 1) {
              stack.push_back(y);
            } else {
              ++cursor[x];
            }
          }
        }
      }
      for (Index x : queue) dist[x] = kInf;
      if (!found) return;
    }
  }

  std::size_t n_left_;
  std::size_t n_right_;
  std::uint64_t remaining_;
  std::vector<Index> arc_left_;
  std::vector<Index> arc_right_;
  std::vector<std::uint64_t> count_;
  Csr by_left_;
  Csr by_right_;
  std::vector<std::uint64_t> left_degree_;
  std::vector<std::uint64_t> right_degree_;
  std::vector<std::uint32_t> mate_left_;
  std::vector<std::uint32_t> mate_right_;
  std::vector<std::uint32_t> dist_left_;
  std::vector<std::uint32_t> dist_right_;
  std::vector<std::size_t> cursor_left_;
  std::vector<std::size_t> cursor_right_;
};

// Runs the peel and converts arc ids into graph matchings, dropping rights with no graph vertex.
bool peel_into(MatchingPeeler& peeler, const std::vector<Index>& left_vertex, const std::vector<Index>& right_vertex,
               BlockDistribution& dist, std::size_t& rounds) {
  auto emit = [&](const std::vector<std::uint32_t>& arcs, std::uint64_t repeat) {
    std::vector<Edge> pairs;
    pairs.reserve(right_vertex.size());
    for (std::uint32_t a : arcs) {
      Index v = peeler.arc_right(a);
      if (v < right_vertex.size()) pairs.push_back({left_vertex[peeler.arc_left(a)], right_vertex[v]});
    }
    Matching m(std::move(pairs));
    if (!dist.matchings.empty() && dist.matchings.back() == m) {
      dist.multiplicity.back() += repeat;
    } else {
      dist.matchings.push_back(std::move(m));
      dist.multiplicity.push_back(repeat);
    }
  };
  return peeler.run(emit, rounds);
}

std::size_t position(const std::vector<Index>& sorted, Index x) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
}

}  // namespace

std::vector<EdgeAssignment> edge_assignments(const BipartiteGraph& graph, const FairDecomposition& decomposition) {
  std::vector<Component> components;
  std::vector<std::int32_t> owner(graph.n_right(), -1);
  std::vector<std::int32_t> block_of(graph.n_left(), -1);
  std::vector<EdgeAssignment> out;
  for (std::size_t b = 0; b < decomposition.blocks.size(); ++b) {
    const Block& block = decomposition.blocks[b];
    check_block_sizes(block);
    for (Index v : block.reserved_right) {
      if (v >= graph.n_right() || owner[v] != -1) throw ConsistencyError("reserved vertex invalid or shared");
      owner[v] = static_cast<std::int32_t>(b);
    }
    for (Index u : block.members) {
      if (u >= graph.n_left()) throw ConsistencyError("block member outside the graph");
      block_of[u] = static_cast<std::int32_t>(b);
    }
    components.push_back({block.members, block.lambda});
    out.push_back(empty_assignment(block, b));
  }
  if (components.empty()) return out;
  FlowNetwork network = build_parametric_network(graph, components, owner);
  for (const ArcFlow& f : integral_max_flow(network)) {
    out[static_cast<std::size_t>(block_of[f.left])].entries.push_back(
        {f.left, f.right, static_cast<std::uint64_t>(f.flow)});
  }
  return out;
}

EdgeAssignment edge_assignment(const BipartiteGraph& graph, const Block& block, std::size_t block_id) {
  FairDecomposition single;
  single.blocks.push_back(block);
  EdgeAssignment a = std::move(edge_assignments(graph, single).front());
  a.block = block_id;
  return a;
}

RegularMultigraph build_regular_multigraph(const EdgeAssignment& assignment) {
  RegularMultigraph mg;
  mg.degree = assignment.l;
  mg.left_vertex = assignment.members;
  mg.right_vertex = assignment.reserved;
  mg.n_fictitious = assignment.members.size() - assignment.reserved.size();
  mg.adjacency.resize(assignment.members.size());
  for (const auto& e : assignment.entries) {
    mg.adjacency[position(assignment.members, e.left)].push_back({static_cast<Index>(position(assignment.reserved, e.right)), e.count});
  }
  const std::size_t real = assignment.reserved.size();
  for (std::size_t i = 0; i < mg.n_left(); ++i) {
    for (std::size_t j = i % assignment.g; j < mg.n_fictitious; j += assignment.g) {
      mg.adjacency[i].push_back({static_cast<Index>(real + j), 1});
    }
  }

  std::vector<std::uint64_t> right_degree(mg.n_right(), 0);
  for (const auto& arcs : mg.adjacency) {
    std::uint64_t d = 0;
    for (const auto& arc : arcs) {
      d += arc.count;
      right_degree[arc.right] += arc.count;
    }
    if (d != mg.degree) throw ConsistencyError("multigraph left degree differs from l");
  }
  for (std::uint64_t d : right_degree) {
    if (d != mg.degree) throw ConsistencyError("multigraph right degree differs from l");
  }
  return mg;
}

BlockDistribution extract_matchings(const RegularMultigraph& multigraph) {
  MatchingPeeler peeler(multigraph.n_left(), multigraph.n_right(), multigraph.degree);
  for (std::size_t i = 0; i < multigraph.n_left(); ++i) {
    for (const auto& arc : multigraph.adjacency[i]) peeler.add_arc(static_cast<Index>(i), arc.right, arc.count);
  }
  BlockDistribution dist;
  dist.l = multigraph.degree;
  std::size_t rounds = 0;
  if (!peel_into(peeler, multigraph.left_vertex, multigraph.right_vertex, dist, rounds)) {
    throw ConsistencyError("no perfect matching in a regular multigraph");
  }
  return dist;
}

BlockDistribution single_block_distribution(const EdgeAssignment& assignment, PeelStats* stats) {
  PeelStats local;
  MatchingPeeler peeler(assignment.members.size(), assignment.reserved.size(), assignment.l);
  for (const auto& e : assignment.entries) {
    peeler.add_arc(static_cast<Index>(position(assignment.members, e.left)),
                   static_cast<Index>(position(assignment.reserved, e.right)), e.count);
  }
  BlockDistribution dist;
  dist.l = assignment.l;
  if (!peel_into(peeler, assignment.members, assignment.reserved, dist, local.peel_rounds)) {
    local.used_fallback = true;
    dist = extract_matchings(build_regular_multigraph(assignment));
  }
  dist.block = assignment.block;
  if (stats) *stats = local;
  return dist;
}

std::vector<BlockDistribution> block_distributions(const BipartiteGraph& graph, const FairDecomposition& decomposition) {
  std::vector<BlockDistribution> out;
  for (const EdgeAssignment& a : edge_assignments(graph, decomposition)) out.push_back(single_block_distribution(a));
  return out;
}

}  // namespace maxmin
