#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxmin {

using Index = std::uint32_t;
inline constexpr Index kNoVertex = static_cast<Index>(-1);

enum class Side : std::uint8_t { Left, Right };

struct VertexId {
  Side side;
  Index index;
  auto operator<=>(const VertexId&) const = default;
};

struct Edge {
  Index left;
  Index right;
  auto operator<=>(const Edge&) const = default;
};

/// Malformed text input; carries the 1-based line number where parsing stopped.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A vertex index in text input that is zero, negative, or too large.
class RangeError : public std::out_of_range {
 public:
  RangeError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Compact immutable bipartite graph. Left vertices are users, right vertices positions.
/// Both adjacency directions are stored in CSR form, sorted and duplicate free.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  /// Duplicate edges are collapsed. Throws std::out_of_range for endpoints outside the sides.
  BipartiteGraph(Index n_left, Index n_right, std::vector<Edge> edges);

  Index n_left() const noexcept { return n_left_; }
  Index n_right() const noexcept { return n_right_; }
  std::size_t num_edges() const noexcept { return left_adj_.size(); }

  std::span<const Index> neighbors(Index u) const {
    return {left_adj_.data() + left_offsets_[u], left_adj_.data() + left_offsets_[u + 1]};
  }
  std::span<const Index> left_neighbors(Index v) const {
    return {right_adj_.data() + right_offsets_[v], right_adj_.data() + right_offsets_[v + 1]};
  }
  Index degree(Index u) const { return static_cast<Index>(left_offsets_[u + 1] - left_offsets_[u]); }
  Index right_degree(Index v) const { return static_cast<Index>(right_offsets_[v + 1] - right_offsets_[v]); }

  bool has_edge(Index u, Index v) const;
  std::vector<Edge> edges() const;

  /// Subgraph on the given left/right vertices (sorted original indices), renumbered 0..k-1
  /// in the order given.
  BipartiteGraph induced(std::span<const Index> lefts, std::span<const Index> rights) const;

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.n_left_ == b.n_left_ && a.n_right_ == b.n_right_ && a.left_offsets_ == b.left_offsets_ &&
           a.left_adj_ == b.left_adj_;
  }

 private:
  Index n_left_ = 0;
  Index n_right_ = 0;
  std::vector<std::size_t> left_offsets_{0};
  std::vector<Index> left_adj_;
  std::vector<std::size_t> right_offsets_{0};
  std::vector<Index> right_adj_;
};

/// Set of vertex-disjoint edges, kept sorted by left endpoint.
class Matching {
 public:
  Matching() = default;
  /// Throws std::invalid_argument if a vertex on either side appears twice.
  explicit Matching(std::vector<Edge> pairs);

  std::span<const Edge> pairs() const noexcept { return pairs_; }
  /// Hands over the sorted pair storage, leaving the matching empty.
  std::vector<Edge> release() && { return std::move(pairs_); }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }

  /// Right partner of u, or kNoVertex.
  Index partner(Index u) const;
  bool covers_left(Index u) const { return partner(u) != kNoVertex; }

  /// Every pair is an edge of the graph.
  bool is_valid_in(const BipartiteGraph& graph) const;

  friend bool operator==(const Matching&, const Matching&) = default;
  friend auto operator<=>(const Matching& a, const Matching& b) { return a.pairs_ <=> b.pairs_; }

 private:
  std::vector<Edge> pairs_;
};

/// Reads the whitespace separated "u v" edge list format (1-based, '%' comment lines).
BipartiteGraph load_edge_list(std::istream& in);
BipartiteGraph load_edge_list_file(const std::string& path);

/// Canonical form: sorted "u v" lines, 1-based.
void write_edge_list(std::ostream& out, const BipartiteGraph& graph);

struct IsolatedRemoval {
  BipartiteGraph graph;
  std::vector<Index> left_origin;   // new left index -> original
  std::vector<Index> right_origin;  // new right index -> original
  std::vector<Index> dropped_left;
  std::vector<Index> dropped_right;
};

IsolatedRemoval remove_isolated(const BipartiteGraph& graph);

/// Hopcroft-Karp. Deterministic: free vertices and adjacency scanned in ascending index order.
Matching maximum_matching(const BipartiteGraph& graph);

enum class ReductionCase : std::uint8_t { AllMatchable, Canonical };

/// One-sided canonical instance extracted from an arbitrary bipartite graph, with the index
/// maps back to the input graph.
struct CanonicalInstance {
  BipartiteGraph graph;
  std::vector<Index> left_origin;
  std::vector<Index> right_origin;
  std::vector<Index> isolated_left;  // users that can never be matched
};

struct ReductionReport {
  std::vector<Index> kept_right;  // original indices covered by the witness matching
  std::size_t rho = 0;
  ReductionCase kind = ReductionCase::AllMatchable;
  std::optional<CanonicalInstance> canonical;  // only in the Canonical case
  Matching witness;
};

ReductionReport reduce_to_one_sided(const BipartiteGraph& graph);

/// Erdos-Renyi style G(n_left, n_right, m): m distinct edges drawn uniformly without replacement.
BipartiteGraph random_bipartite(Index n_left, Index n_right, std::uint64_t m, std::uint64_t seed);

}  // namespace maxmin
