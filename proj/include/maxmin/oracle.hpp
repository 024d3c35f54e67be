#pragma once

#include <vector>

#include "maxmin/baselines.hpp"
#include "maxmin/decomposition.hpp"
#include "maxmin/graph.hpp"

namespace maxmin {

/// Subset enumeration: with S the users already placed, the next block is the union of all
/// non-empty X minimizing (|Gamma(X + S)| - |Gamma(S)|) / |X|. Meant for canonical instances;
/// SizeError above 15 users.
FairDecomposition brute_force_blocks(const BipartiteGraph& graph);

/// Same peeling rule with the matching rank of a user set in place of its neighborhood size.
/// Valid on any bipartite graph (isolated users end up in a block with lambda 0, reported with
/// probability 0). SizeError above 15 users.
FairDecomposition brute_force_rank_blocks(const BipartiteGraph& graph);

/// Every maximum matching of the graph. SizeError above 8 users.
std::vector<Matching> enumerate_matchings(const BipartiteGraph& graph);

/// Lexicographically largest ascending coverage vector over all distributions on maximum
/// matchings, from the matroid rank of enumerated matchings. SizeError above 8 users.
std::vector<Rational> lexicographic_optimum(const BipartiteGraph& graph);

/// min over non-empty S of |Gamma(S)| / |S|.
Rational min_neighborhood_ratio(const BipartiteGraph& graph);

/// max over proper subsets S of (|Gamma(L)| - |Gamma(S)|) / |L \ S|.
Rational max_residual_ratio(const BipartiteGraph& graph);

/// Random priority averaged over every permutation, literally. SizeError above 8 users.
CoverageProfile rp_by_permutations(const BipartiteGraph& graph);

}  // namespace maxmin
