#include "maxmin/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <unordered_set>

namespace maxmin {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

RangeError::RangeError(std::size_t line, const std::string& message)
    : std::out_of_range("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

void build_csr(std::size_t n, const std::vector<Edge>& edges, bool by_left, std::vector<std::size_t>& offsets,
               std::vector<Index>& adj) {
  offsets.assign(n + 1, 0);
  for (const Edge& e : edges) ++offsets[(by_left ? e.left : e.right) + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  adj.resize(edges.size());
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  // edges are sorted by (left, right), so both directions come out sorted
  for (const Edge& e : edges) {
    if (by_left) {
      adj[fill[e.left]++] = e.right;
    } else {
      adj[fill[e.right]++] = e.left;
    }
  }
}

}  // namespace

BipartiteGraph::BipartiteGraph(Index n_left, Index n_right, std::vector<Edge> edges)
    : n_left_(n_left), n_right_(n_right) {
  for (const Edge& e : edges) {
    if (e.left >= n_left || e.right >= n_right) {
      throw std::out_of_range("edge (" + std::to_string(e.left) + ", " + std::to_string(e.right) +
                              ") outside a " + std::to_string(n_left) + "x" + std::to_string(n_right) + " graph");
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  build_csr(n_left, edges, true, left_offsets_, left_adj_);
  build_csr(n_right, edges, false, right_offsets_, right_adj_);
}

bool BipartiteGraph::has_edge(Index u, Index v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> BipartiteGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Index u = 0; u < n_left_; ++u) {
    for (Index v : neighbors(u)) out.push_back({u, v});
  }
  return out;
}

BipartiteGraph BipartiteGraph::induced(std::span<const Index> lefts, std::span<const Index> rights) const {
  std::vector<Index> right_pos(n_right_, kNoVertex);
  for (Index i = 0; i < rights.size(); ++i) right_pos[rights[i]] = i;
  std::vector<Edge> sub;
  for (Index i = 0; i < lefts.size(); ++i) {
    for (Index v : neighbors(lefts[i])) {
      if (right_pos[v] != kNoVertex) sub.push_back({i, right_pos[v]});
    }
  }
  return BipartiteGraph(static_cast<Index>(lefts.size()), static_cast<Index>(rights.size()), std::move(sub));
}

Matching::Matching(std::vector<Edge> pairs) : pairs_(std::move(pairs)) {
  if (!std::is_sorted(pairs_.begin(), pairs_.end())) std::sort(pairs_.begin(), pairs_.end());
  Index max_right = 0;
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (i > 0 && pairs_[i].left == pairs_[i - 1].left) throw std::invalid_argument("left vertex matched twice");
    max_right = std::max(max_right, pairs_[i].right);
  }
  if (pairs_.empty()) return;
  if (max_right <= 8 * pairs_.size() + 4096) {
    std::vector<char> seen(static_cast<std::size_t>(max_right) + 1, 0);
    for (const Edge& e : pairs_) {
      if (seen[e.right]++) throw std::invalid_argument("right vertex matched twice");
    }
    return;
  }
  std::vector<Index> rights;
  rights.reserve(pairs_.size());
  for (const Edge& e : pairs_) rights.push_back(e.right);
  std::sort(rights.begin(), rights.end());
  if (std::adjacent_find(rights.begin(), rights.end()) != rights.end()) {
    throw std::invalid_argument("right vertex matched twice");
  }
}

Index Matching::partner(Index u) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), Edge{u, 0});
  return (it != pairs_.end() && it->left == u) ? it->right : kNoVertex;
}

bool Matching::is_valid_in(const BipartiteGraph& graph) const {
  return std::all_of(pairs_.begin(), pairs_.end(), [&](const Edge& e) {
    return e.left < graph.n_left() && e.right < graph.n_right() && graph.has_edge(e.left, e.right);
  });
}

BipartiteGraph load_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  Index n_left = 0;
  Index n_right = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '%') continue;

    Index ends[2];
    for (Index& end : ends) {
      pos = line.find_first_not_of(" \t\r", pos);
      if (pos == std::string::npos) throw ParseError(line_no, "expected two vertex indices");
      std::size_t stop = line.find_first_of(" \t\r", pos);
      if (stop == std::string::npos) stop = line.size();
      std::int64_t value = 0;
      auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + stop, value);
      if (ec == std::errc::result_out_of_range) throw RangeError(line_no, "vertex index out of range");
      if (ec != std::errc() || ptr != line.data() + stop) {
        throw ParseError(line_no, "malformed vertex index '" + line.substr(pos, stop - pos) + "'");
      }
      if (value <= 0) throw RangeError(line_no, "vertex indices are 1-based, got " + std::to_string(value));
      if (value > static_cast<std::int64_t>(kNoVertex) - 1) throw RangeError(line_no, "vertex index too large");
      end = static_cast<Index>(value - 1);
      pos = stop;
    }
    // trailing columns (weights, timestamps in KONECT files) are ignored
    edges.push_back({ends[0], ends[1]});
    n_left = std::max(n_left, ends[0] + 1);
    n_right = std::max(n_right, ends[1] + 1);
  }
  return BipartiteGraph(n_left, n_right, std::move(edges));
}

BipartiteGraph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const BipartiteGraph& graph) {
  for (Index u = 0; u < graph.n_left(); ++u) {
    for (Index v : graph.neighbors(u)) out << (u + 1) << ' ' << (v + 1) << '\n';
  }
}

IsolatedRemoval remove_isolated(const BipartiteGraph& graph) {
  IsolatedRemoval r;
  for (Index u = 0; u < graph.n_left(); ++u) {
    (graph.degree(u) > 0 ? r.left_origin : r.dropped_left).push_back(u);
  }
  for (Index v = 0; v < graph.n_right(); ++v) {
    (graph.right_degree(v) > 0 ? r.right_origin : r.dropped_right).push_back(v);
  }
  if (r.dropped_left.empty() && r.dropped_right.empty()) {
    r.graph = graph;
  } else {
    r.graph = graph.induced(r.left_origin, r.right_origin);
  }
  return r;
}

namespace {

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteGraph& g)
      : g_(g), mate_left_(g.n_left(), kNoVertex), mate_right_(g.n_right(), kNoVertex), dist_(g.n_left()),
        cursor_(g.n_left()) {}

  Matching run() {
    greedy_start();
    while (layer()) {
      for (Index u = 0; u < g_.n_left(); ++u) {
        cursor_[u] = 0;
      }
      for (Index u = 0; u < g_.n_left(); ++u) {
        if (mate_left_[u] == kNoVertex) augment_from(u);
      }
    }
    std::vector<Edge> pairs;
    for (Index u = 0; u < g_.n_left(); ++u) {
      if (mate_left_[u] != kNoVertex) pairs.push_back({u, mate_left_[u]});
    }
    return Matching(std::move(pairs));
  }

 private:
  static constexpr Index kInf = kNoVertex;

  void greedy_start() {
    for (Index u = 0; u < g_.n_left(); ++u) {
      for (Index v : g_.neighbors(u)) {
        if (mate_right_[v] == kNoVertex) {
          mate_left_[u] = v;
          mate_right_[v] = u;
          break;
        }
      }
    }
  }

  bool layer() {
    std::vector<Index> queue;
    for (Index u = 0; u < g_.n_left(); ++u) {
      if (mate_left_[u] == kNoVertex) {
        dist_[u] = 0;
        queue.push_back(u);
      } else {
        dist_[u] = kInf;
      }
    }
    bool found = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Index u = queue[head];
      for (Index v : g_.neighbors(u)) {
        Index w = mate_right_[v];
        if (w == kNoVertex) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return found;
  }

  bool augment_from(Index root) {
    stack_.clear();
    stack_.push_back(root);
    while (!stack_.empty()) {
      Index u = stack_.back();
      auto nb = g_.neighbors(u);
      if (cursor_[u] == nb.size()) {
        dist_[u] = kInf;
        stack_.pop_back();
        if (!stack_.empty()) ++cursor_[stack_.back()];
        continue;
      }
      Index v = nb[cursor_[u]];
      Index w = mate_right_[v];
      if (w == kNoVertex) {
        for (Index x : stack_) {
          Index y = g_.neighbors(x)[cursor_[x]];
          mate_left_[x] = y;
          mate_right_[y] = x;
        }
        return true;
      }
      if (dist_[w] == dist_[u] + 1) {
        stack_.push_back(w);
      } else {
        ++cursor_[u];
      }
    }
    return false;
  }

  const BipartiteGraph& g_;
  std::vector<Index> mate_left_;
  std::vector<Index> mate_right_;
  std::vector<Index> dist_;
  std::vector<std::size_t> cursor_;
  std::vector<Index> stack_;
};

}  // namespace

Matching maximum_matching(const BipartiteGraph& graph) { return HopcroftKarp(graph).run(); }

ReductionReport reduce_to_one_sided(const BipartiteGraph& graph) {
  ReductionReport report;
  report.witness = maximum_matching(graph);
  report.rho = report.witness.size();
  for (const Edge& e : report.witness.pairs()) report.kept_right.push_back(e.right);
  std::sort(report.kept_right.begin(), report.kept_right.end());

  std::size_t matchable_users = 0;
  for (Index u = 0; u < graph.n_left(); ++u) {
    if (graph.degree(u) > 0) ++matchable_users;
  }
  if (report.rho == matchable_users) {
    report.kind = ReductionCase::AllMatchable;
    return report;
  }

  report.kind = ReductionCase::Canonical;
  std::vector<Index> all_left(graph.n_left());
  for (Index u = 0; u < graph.n_left(); ++u) all_left[u] = u;
  IsolatedRemoval trimmed = remove_isolated(graph.induced(all_left, report.kept_right));

  CanonicalInstance inst;
  inst.graph = std::move(trimmed.graph);
  inst.left_origin = std::move(trimmed.left_origin);
  inst.isolated_left = std::move(trimmed.dropped_left);
  inst.right_origin.reserve(trimmed.right_origin.size());
  for (Index v : trimmed.right_origin) inst.right_origin.push_back(report.kept_right[v]);
  report.canonical = std::move(inst);
  return report;
}

BipartiteGraph random_bipartite(Index n_left, Index n_right, std::uint64_t m, std::uint64_t seed) {
  const std::uint64_t total = static_cast<std::uint64_t>(n_left) * n_right;
  if (m > total) throw std::invalid_argument("more edges requested than vertex pairs");
  std::mt19937_64 rng(seed);
  // Floyd's sampling: m distinct codes from [0, total)
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(m);
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t j = total - m; j < total; ++j) {
    std::uint64_t t = std::uniform_int_distribution<std::uint64_t>(0, j)(rng);
    std::uint64_t code = chosen.insert(t).second ? t : (chosen.insert(j), j);
    edges.push_back({static_cast<Index>(code / n_right), static_cast<Index>(code % n_right)});
  }
  return BipartiteGraph(n_left, n_right, std::move(edges));
}

}  // namespace maxmin
