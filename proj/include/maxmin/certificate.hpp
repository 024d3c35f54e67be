#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "maxmin/block_distribution.hpp"
#include "maxmin/decomposition.hpp"
#include "maxmin/graph.hpp"

namespace maxmin {

enum class ViolationKind : std::uint8_t {
  Structure,    // blocks do not partition L, lambda out of range or not increasing
  Tightness,    // sum of lambdas over a prefix differs from the size of its neighborhood
  Reserved,     // reserved set is not the new neighborhood of the block, or lambda != |reserved|/|members|
  Feasibility,  // no edge assignment realizes the lambdas
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::size_t block;  // 0-based block (or prefix length - 1)
  std::string detail;
};

struct CertificateReport {
  std::vector<Violation> violations;

  bool valid() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  /// Kind of the first violation found; checks run in declaration order of ViolationKind.
  ViolationKind primary() const { return violations.front().kind; }
};

/// Checks a claimed decomposition of `graph`. Every left vertex of positive degree must belong to
/// a block.
/// When `assignments` is empty, feasibility is decided with one max-flow; otherwise the supplied
/// per-block assignments are checked for marginals and support.
CertificateReport verify_certificate(const BipartiteGraph& graph, const FairDecomposition& decomposition,
                                     std::span<const EdgeAssignment> assignments = {});

}  // namespace maxmin
