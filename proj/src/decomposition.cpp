#include "maxmin/decomposition.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "maxmin/maxflow.hpp"

namespace maxmin {

namespace {

void check_canonical(const BipartiteGraph& graph) {
  for (Index u = 0; u < graph.n_left(); ++u) {
    if (graph.degree(u) == 0) throw InstanceError("left vertex " + std::to_string(u + 1) + " is isolated");
  }
  for (Index v = 0; v < graph.n_right(); ++v) {
    if (graph.right_degree(v) == 0) throw InstanceError("right vertex " + std::to_string(v + 1) + " is isolated");
  }
  if (graph.n_right() >= graph.n_left()) {
    throw InstanceError("expected |R| < |L|; reduce the graph with reduce_to_one_sided first");
  }
  if (maximum_matching(graph).size() != graph.n_right()) {
    throw InstanceError("right side is not matchable; reduce the graph with reduce_to_one_sided first");
  }
}

struct ChainSet {
  std::vector<Index> members;
  bool confirmed = false;
  Rational lambda;
  std::vector<Index> owned;  // right vertices in Gamma(T) after edge deletions
};

}  // namespace

FairDecomposition fair_decomposition(const BipartiteGraph& graph, DecompositionStats* stats) {
  check_canonical(graph);
  DecompositionStats local;

  std::vector<ChainSet> chain(1);
  chain[0].members.resize(graph.n_left());
  for (Index u = 0; u < graph.n_left(); ++u) chain[0].members[u] = u;

  std::vector<std::int32_t> rank_of(graph.n_left());
  std::vector<std::int32_t> owner(graph.n_right());
  std::vector<std::int32_t> component_of_rank;
  std::vector<std::int32_t> right_component(graph.n_right());

  while (true) {
    // A right vertex belongs to the lowest set containing one of its neighbors; edges from higher
    // sets into it count as deleted.
    for (std::size_t i = 0; i < chain.size(); ++i) {
      for (Index u : chain[i].members) rank_of[u] = static_cast<std::int32_t>(i);
      chain[i].owned.clear();
    }
    for (Index v = 0; v < graph.n_right(); ++v) {
      std::int32_t best = static_cast<std::int32_t>(chain.size());
      for (Index u : graph.left_neighbors(v)) best = std::min(best, rank_of[u]);
      owner[v] = best;
      chain[static_cast<std::size_t>(best)].owned.push_back(v);
    }

    std::vector<Component> components;
    component_of_rank.assign(chain.size(), -1);
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (chain[i].confirmed) continue;
      component_of_rank[i] = static_cast<std::int32_t>(components.size());
      Rational guess(static_cast<unsigned long>(chain[i].owned.size()),
                     static_cast<unsigned long>(chain[i].members.size()));
      guess.canonicalize();
      components.push_back({chain[i].members, guess});
    }
    if (components.empty()) break;
    for (Index v = 0; v < graph.n_right(); ++v) right_component[v] = component_of_rank[static_cast<std::size_t>(owner[v])];

    FlowNetwork network = build_parametric_network(graph, components, right_component);
    CutResult cut = min_cut(network);
    ++local.rounds;

    std::vector<char> reachable(graph.n_left(), 0);
    for (Index u : cut.reachable_left) reachable[u] = 1;

    std::vector<ChainSet> next;
    next.reserve(chain.size() * 2);
    for (std::size_t i = 0; i < chain.size(); ++i) {
      ChainSet& set = chain[i];
      if (set.confirmed) {
        next.push_back(std::move(set));
        continue;
      }
      auto c = static_cast<std::size_t>(component_of_rank[i]);
      if (cut.saturated[c]) {
        set.confirmed = true;
        set.lambda = components[c].lambda;
        next.push_back(std::move(set));
        continue;
      }
      ChainSet lower;
      ChainSet upper;
      for (Index u : set.members) (reachable[u] ? lower : upper).members.push_back(u);
      if (lower.members.empty() || upper.members.empty()) {
        throw ConsistencyError("unsaturated set did not split; input violates the canonical form");
      }
      ++local.splits;
      next.push_back(std::move(lower));
      next.push_back(std::move(upper));
    }
    chain = std::move(next);
  }

  FairDecomposition result;
  for (ChainSet& set : chain) {
    if (!result.blocks.empty() && !(result.blocks.back().lambda < set.lambda)) {
      throw ConsistencyError("block probabilities are not strictly increasing");
    }
    result.blocks.push_back({std::move(set.members), set.lambda, std::move(set.owned)});
  }
  assign_probabilities(result, graph.n_left());
  if (stats) *stats = local;
  return result;
}

void assign_probabilities(FairDecomposition& decomposition, Index n_left) {
  decomposition.probability.assign(n_left, Rational(0));
  for (const Block& block : decomposition.blocks) {
    for (Index u : block.members) {
      if (u < n_left) decomposition.probability[u] = block.lambda;
    }
  }
}

std::vector<std::pair<Index, Rational>> satisfaction_vector(const FairDecomposition& decomposition) {
  std::vector<std::pair<Index, Rational>> out;
  out.reserve(decomposition.probability.size());
  for (Index u = 0; u < decomposition.probability.size(); ++u) out.emplace_back(u, decomposition.probability[u]);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

void write_decomposition(std::ostream& out, const FairDecomposition& decomposition) {
  out << "blocks " << decomposition.blocks.size() << '\n';
  for (const Block& block : decomposition.blocks) {
    out << "lambda " << to_string(block.lambda) << " members";
    for (Index u : block.members) out << ' ' << (u + 1);
    out << "\nreserved";
    for (Index v : block.reserved_right) out << ' ' << (v + 1);
    out << '\n';
  }
}

namespace {

std::vector<Index> read_indices(std::istringstream& in, std::size_t line_no) {
  std::vector<Index> out;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(token, &used);
    } catch (const std::exception&) {
      throw ParseError(line_no, "malformed vertex index '" + token + "'");
    }
    if (used != token.size()) throw ParseError(line_no, "malformed vertex index '" + token + "'");
    if (value <= 0 || value >= static_cast<long long>(kNoVertex)) {
      throw RangeError(line_no, "vertex index " + token + " out of range");
    }
    out.push_back(static_cast<Index>(value - 1));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

FairDecomposition read_decomposition(std::istream& in) {
  FairDecomposition result;
  std::string line;
  std::size_t line_no = 0;
  if (!next_content_line(in, line, line_no)) throw ParseError(line_no, "empty decomposition");
  std::istringstream header(line);
  std::string word;
  std::size_t count = 0;
  if (!(header >> word >> count) || word != "blocks") throw ParseError(line_no, "expected 'blocks <k>'");

  Index max_member = 0;
  for (std::size_t b = 0; b < count; ++b) {
    if (!next_content_line(in, line, line_no)) throw ParseError(line_no, "missing block line");
    std::istringstream row(line);
    std::string lambda_text;
    std::string members_word;
    if (!(row >> word >> lambda_text >> members_word) || word != "lambda" || members_word != "members") {
      throw ParseError(line_no, "expected 'lambda p/q members ...'");
    }
    Block block;
    try {
      block.lambda = parse_rational(lambda_text);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    block.members = read_indices(row, line_no);
    for (Index u : block.members) max_member = std::max(max_member, u + 1);

    if (!next_content_line(in, line, line_no)) throw ParseError(line_no, "missing reserved line");
    std::istringstream reserved(line);
    if (!(reserved >> word) || word != "reserved") throw ParseError(line_no, "expected 'reserved ...'");
    block.reserved_right = read_indices(reserved, line_no);
    result.blocks.push_back(std::move(block));
  }
  if (next_content_line(in, line, line_no)) throw ParseError(line_no, "trailing content after last block");
  assign_probabilities(result, max_member);
  return result;
}

}  // namespace maxmin
