#include "maxmin/solver.hpp"

#include <algorithm>

namespace maxmin {

Solution solve(const BipartiteGraph& graph) {
  Solution sol;
  ReductionReport red = reduce_to_one_sided(graph);
  sol.kind = red.kind;
  sol.rho = red.rho;
  for (Index u = 0; u < graph.n_left(); ++u) {
    if (graph.degree(u) == 0) sol.unmatchable.push_back(u);
  }

  if (red.kind == ReductionCase::AllMatchable) {
    if (red.rho > 0) {
      Block block;
      for (Index u = 0; u < graph.n_left(); ++u) {
        if (graph.degree(u) > 0) block.members.push_back(u);
      }
      block.lambda = 1;
      block.reserved_right = red.kept_right;
      sol.decomposition.blocks.push_back(std::move(block));
    }
  } else {
    const CanonicalInstance& inst = *red.canonical;
    FairDecomposition local = fair_decomposition(inst.graph, &sol.stats);
    for (Block& block : local.blocks) {
      for (Index& u : block.members) u = inst.left_origin[u];
      for (Index& v : block.reserved_right) v = inst.right_origin[v];
      std::sort(block.members.begin(), block.members.end());
      std::sort(block.reserved_right.begin(), block.reserved_right.end());
      sol.decomposition.blocks.push_back(std::move(block));
    }
  }
  assign_probabilities(sol.decomposition, graph.n_left());
  return sol;
}

BipartiteGraph restrict_to_reserved(const BipartiteGraph& graph, const FairDecomposition& decomposition) {
  std::vector<char> keep(graph.n_right(), 0);
  for (const Block& block : decomposition.blocks) {
    for (Index v : block.reserved_right) {
      if (v < graph.n_right()) keep[v] = 1;
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : graph.edges()) {
    if (keep[e.right]) edges.push_back(e);
  }
  return BipartiteGraph(graph.n_left(), graph.n_right(), std::move(edges));
}

CertificateReport verify_solution(const BipartiteGraph& graph, const FairDecomposition& decomposition) {
  CertificateReport report;
  std::size_t reserved = 0;
  for (const Block& block : decomposition.blocks) reserved += block.reserved_right.size();
  std::size_t rho = maximum_matching(graph).size();
  if (reserved != rho) {
    report.violations.push_back({ViolationKind::Structure, 0,
                                 std::to_string(reserved) + " reserved vertices but the maximum matching has " +
                                     std::to_string(rho) + " edges"});
    return report;
  }
  for (const Block& block : decomposition.blocks) {
    for (Index u : block.members) {
      if (u < graph.n_left() && graph.degree(u) == 0) {
        report.violations.push_back(
            {ViolationKind::Structure, 0, "isolated user " + std::to_string(u + 1) + " placed in a block"});
        return report;
      }
    }
  }
  return verify_certificate(restrict_to_reserved(graph, decomposition), decomposition);
}

std::vector<BlockDistribution> solution_distributions(const BipartiteGraph& graph, const Solution& solution) {
  return block_distributions(graph, solution.decomposition);
}

}  // namespace maxmin
