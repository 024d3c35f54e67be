#include "maxmin/certificate.hpp"

#include <algorithm>
#include <map>

#include "maxmin/maxflow.hpp"

namespace maxmin {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Structure: return "structure";
    case ViolationKind::Tightness: return "tightness";
    case ViolationKind::Reserved: return "reserved";
    case ViolationKind::Feasibility: return "feasibility";
  }
  return "unknown";
}

bool CertificateReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

namespace {

// Returns false when some index lies outside the graph, which rules out the later checks.
bool check_structure(const BipartiteGraph& graph, const FairDecomposition& dec, CertificateReport& report) {
  bool in_range = true;
  std::vector<int> seen_left(graph.n_left(), 0);
  std::vector<int> seen_right(graph.n_right(), 0);
  auto fail = [&](std::size_t b, std::string detail) {
    report.violations.push_back({ViolationKind::Structure, b, std::move(detail)});
  };
  for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
    const Block& block = dec.blocks[b];
    if (block.members.empty()) fail(b, "empty block");
    if (sgn(block.lambda) <= 0 || block.lambda > 1) fail(b, "lambda " + to_string(block.lambda) + " outside (0, 1]");
    if (b > 0 && !(dec.blocks[b - 1].lambda < block.lambda)) fail(b, "lambdas not strictly increasing");
    for (Index u : block.members) {
      if (u >= graph.n_left()) {
        fail(b, "member " + std::to_string(u + 1) + " outside the graph");
        in_range = false;
      } else if (seen_left[u]++) {
        fail(b, "member " + std::to_string(u + 1) + " appears twice");
      }
    }
    for (Index v : block.reserved_right) {
      if (v >= graph.n_right()) {
        fail(b, "reserved vertex " + std::to_string(v + 1) + " outside the graph");
        in_range = false;
      } else if (seen_right[v]++) {
        fail(b, "reserved vertex " + std::to_string(v + 1) + " appears twice");
      }
    }
  }
  for (Index u = 0; u < graph.n_left(); ++u) {
    if (!seen_left[u] && graph.degree(u) > 0) fail(dec.blocks.size(), "left vertex " + std::to_string(u + 1) + " in no block");
  }
  return in_range;
}

// Neighborhoods of each block after removing those of earlier blocks.
std::vector<std::vector<Index>> new_neighborhoods(const BipartiteGraph& graph, const FairDecomposition& dec) {
  std::vector<char> covered(graph.n_right(), 0);
  std::vector<std::vector<Index>> out;
  for (const Block& block : dec.blocks) {
    std::vector<Index> fresh;
    for (Index u : block.members) {
      for (Index v : graph.neighbors(u)) {
        if (!covered[v]) {
          covered[v] = 1;
          fresh.push_back(v);
        }
      }
    }
    std::sort(fresh.begin(), fresh.end());
    out.push_back(std::move(fresh));
  }
  return out;
}

void check_tightness(const FairDecomposition& dec, const std::vector<std::vector<Index>>& fresh,
                     CertificateReport& report) {
  Rational sum = 0;
  std::size_t gamma = 0;
  for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
    sum += dec.blocks[b].lambda * static_cast<unsigned long>(dec.blocks[b].members.size());
    gamma += fresh[b].size();
    if (sum != static_cast<unsigned long>(gamma)) {
      report.violations.push_back({ViolationKind::Tightness, b,
                                   "prefix " + std::to_string(b + 1) + ": sum of lambdas " + to_string(sum) +
                                       " but neighborhood size " + std::to_string(gamma)});
    }
  }
}

void check_reserved(const FairDecomposition& dec, const std::vector<std::vector<Index>>& fresh,
                    CertificateReport& report) {
  for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
    const Block& block = dec.blocks[b];
    if (block.reserved_right != fresh[b]) {
      report.violations.push_back({ViolationKind::Reserved, b,
                                   "reserved set of block " + std::to_string(b + 1) + " has " +
                                       std::to_string(block.reserved_right.size()) + " vertices, new neighborhood has " +
                                       std::to_string(fresh[b].size())});
      continue;
    }
    Rational ratio(static_cast<unsigned long>(block.reserved_right.size()),
                   static_cast<unsigned long>(block.members.size()));
    ratio.canonicalize();
    if (ratio != block.lambda) {
      report.violations.push_back({ViolationKind::Reserved, b,
                                   "lambda " + to_string(block.lambda) + " differs from |reserved|/|members| = " +
                                       to_string(ratio)});
    }
  }
}

void check_flow(const BipartiteGraph& graph, const FairDecomposition& dec, CertificateReport& report) {
  std::vector<Component> components;
  std::vector<std::int32_t> owner(graph.n_right(), -1);
  for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
    components.push_back({dec.blocks[b].members, dec.blocks[b].lambda});
    for (Index v : dec.blocks[b].reserved_right) owner[v] = static_cast<std::int32_t>(b);
  }
  CutResult cut = min_cut(build_parametric_network(graph, components, owner));
  for (std::size_t b = 0; b < cut.saturated.size(); ++b) {
    if (!cut.saturated[b]) {
      report.violations.push_back({ViolationKind::Feasibility, b,
                                   "block " + std::to_string(b + 1) + " cannot reach lambda " +
                                       to_string(dec.blocks[b].lambda)});
    }
  }
}

void check_assignments(const BipartiteGraph& graph, const FairDecomposition& dec,
                       std::span<const EdgeAssignment> assignments, CertificateReport& report) {
  auto fail = [&](std::size_t b, std::string detail) {
    report.violations.push_back({ViolationKind::Feasibility, b, std::move(detail)});
  };
  if (assignments.size() != dec.blocks.size()) {
    fail(0, "expected one assignment per block");
    return;
  }
  for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
    const Block& block = dec.blocks[b];
    const EdgeAssignment& a = assignments[b];
    std::map<Index, Rational> row;
    std::map<Index, Rational> column;
    bool ok = true;
    for (const auto& e : a.entries) {
      bool member = std::binary_search(block.members.begin(), block.members.end(), e.left);
      bool reserved = std::binary_search(block.reserved_right.begin(), block.reserved_right.end(), e.right);
      if (!member || !reserved || !graph.has_edge(e.left, e.right)) {
        fail(b, "assignment uses pair (" + std::to_string(e.left + 1) + ", " + std::to_string(e.right + 1) +
                    ") outside the block");
        ok = false;
        continue;
      }
      Rational x(static_cast<unsigned long>(e.count), static_cast<unsigned long>(a.l));
      x.canonicalize();
      row[e.left] += x;
      column[e.right] += x;
    }
    if (!ok) continue;
    for (Index u : block.members) {
      if (row[u] != block.lambda) fail(b, "row sum of " + std::to_string(u + 1) + " is " + to_string(row[u]));
    }
    for (Index v : block.reserved_right) {
      if (column[v] != 1) fail(b, "column sum of " + std::to_string(v + 1) + " is " + to_string(column[v]));
    }
  }
}

}  // namespace

CertificateReport verify_certificate(const BipartiteGraph& graph, const FairDecomposition& decomposition,
                                     std::span<const EdgeAssignment> assignments) {
  CertificateReport report;
  if (!check_structure(graph, decomposition, report)) return report;
  auto fresh = new_neighborhoods(graph, decomposition);
  check_tightness(decomposition, fresh, report);
  check_reserved(decomposition, fresh, report);
  if (!report.valid()) return report;
  if (assignments.empty()) {
    check_flow(graph, decomposition, report);
  } else {
    check_assignments(graph, decomposition, assignments, report);
  }
  return report;
}

}  // namespace maxmin
