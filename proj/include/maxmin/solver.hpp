#pragma once

#include <vector>

#include "maxmin/block_distribution.hpp"
#include "maxmin/certificate.hpp"
#include "maxmin/decomposition.hpp"
#include "maxmin/graph.hpp"

namespace maxmin {

/// Fair decomposition of an arbitrary bipartite graph, in the graph's own indices.
struct Solution {
  ReductionCase kind = ReductionCase::AllMatchable;
  std::size_t rho = 0;
  FairDecomposition decomposition;  // probability sized n_left; users in no block get 0
  std::vector<Index> unmatchable;   // isolated users
  DecompositionStats stats;
};

/// Reduces to the one-sided canonical form, decomposes and maps back. When every user can be
/// matched the result is a single block with lambda 1 reserving the witness matching's rights.
Solution solve(const BipartiteGraph& graph);

/// Graph with the same index space keeping only edges into reserved right vertices.
BipartiteGraph restrict_to_reserved(const BipartiteGraph& graph, const FairDecomposition& decomposition);

/// Certificate check against the original graph: the reserved vertices must number rho(L), and
/// the decomposition must certify the graph restricted to them.
CertificateReport verify_solution(const BipartiteGraph& graph, const FairDecomposition& decomposition);

/// Per-block uniform matching distributions of a solution.
std::vector<BlockDistribution> solution_distributions(const BipartiteGraph& graph, const Solution& solution);

}  // namespace maxmin
