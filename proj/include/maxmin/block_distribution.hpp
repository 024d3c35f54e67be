#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "maxmin/decomposition.hpp"
#include "maxmin/graph.hpp"
#include "maxmin/rational.hpp"

namespace maxmin {

/// Edge saturation probabilities of one block, stored as integer counts over the common
/// denominator l: x_uv = count / l.
struct EdgeAssignment {
  struct Entry {
    Index left;
    Index right;
    std::uint64_t count;
  };

  std::size_t block = 0;
  std::vector<Index> members;   // sorted
  std::vector<Index> reserved;  // sorted
  std::uint64_t g = 1;          // gcd(|members|, |reserved|)
  std::uint64_t l = 1;          // |members| / g
  std::uint64_t r = 1;          // |reserved| / g
  std::vector<Entry> entries;   // positive counts, sorted by (left, right)

  Rational probability(const Entry& e) const {
    Rational q(static_cast<unsigned long>(e.count), static_cast<unsigned long>(l));
    q.canonicalize();
    return q;
  }
};

/// Integral flow for one block: members send r units each, reserved vertices absorb l each.
/// Throws ConsistencyError when the block's lambda disagrees with its sizes or the flow fails.
EdgeAssignment edge_assignment(const BipartiteGraph& graph, const Block& block, std::size_t block_id = 0);

/// All blocks from a single max-flow computation.
std::vector<EdgeAssignment> edge_assignments(const BipartiteGraph& graph, const FairDecomposition& decomposition);

/// Bipartite multigraph with parallel edges stored as multiplicities. Right vertices at index
/// >= n_real_right are fictitious.
struct RegularMultigraph {
  struct Arc {
    Index right;
    std::uint64_t count;
  };

  std::uint64_t degree = 0;
  std::vector<Index> left_vertex;   // local left -> graph vertex
  std::vector<Index> right_vertex;  // local real right -> graph vertex
  std::size_t n_fictitious = 0;
  std::vector<std::vector<Arc>> adjacency;  // per local left

  std::size_t n_left() const { return left_vertex.size(); }
  std::size_t n_real_right() const { return right_vertex.size(); }
  std::size_t n_right() const { return right_vertex.size() + n_fictitious; }
};

/// count parallel edges per real pair plus |B| - |R'| fictitious right vertices; the i-th
/// member is joined to the j-th fictitious vertex iff i = j (mod g). The result is l-regular.
/// Throws ConsistencyError when a degree comes out wrong.
RegularMultigraph build_regular_multigraph(const EdgeAssignment& assignment);

/// Uniform distribution over l matchings, kept as distinct matchings with multiplicities
/// summing to l.
struct BlockDistribution {
  std::size_t block = 0;
  std::uint64_t l = 1;
  std::vector<Matching> matchings;
  std::vector<std::uint64_t> multiplicity;

  std::size_t distinct() const { return matchings.size(); }
};

/// Peels l perfect matchings off an l-regular multigraph and drops the fictitious edges.
/// Throws ConsistencyError if the graph is not regular or a peel fails.
BlockDistribution extract_matchings(const RegularMultigraph& multigraph);

struct PeelStats {
  bool used_fallback = false;
  std::size_t peel_rounds = 0;  // distinct matchings found before run-length repetition
};

/// Direct peel on the real multigraph (left degree r, right degree l) without fictitious
/// vertices; falls back to the full regular construction if a peel fails.
BlockDistribution single_block_distribution(const EdgeAssignment& assignment, PeelStats* stats = nullptr);

std::vector<BlockDistribution> block_distributions(const BipartiteGraph& graph, const FairDecomposition& decomposition);

}  // namespace maxmin
