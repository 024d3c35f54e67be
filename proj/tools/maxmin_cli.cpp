#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "maxmin/baselines.hpp"
#include "maxmin/distribution.hpp"
#include "maxmin/metrics.hpp"
#include "maxmin/oracle.hpp"
#include "maxmin/solver.hpp"

using namespace maxmin;

namespace {

constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file.open(path);
      if (!file) throw InputError("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file.is_open() ? static_cast<std::ostream&>(file) : std::cout; }
  std::ofstream file;
};

BipartiteGraph load_graph(const std::string& path) {
  try {
    return load_edge_list_file(path);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ": " + e.what());
  } catch (const RangeError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// Baselines run on the graph restricted to the rights of the witness matching: the one-sided
// instance in the input's own indices.
BipartiteGraph one_sided_view(const BipartiteGraph& graph) {
  ReductionReport red = reduce_to_one_sided(graph);
  std::vector<char> keep(graph.n_right(), 0);
  for (Index v : red.kept_right) keep[v] = 1;
  std::vector<Edge> edges;
  for (const Edge& e : graph.edges()) {
    if (keep[e.right]) edges.push_back(e);
  }
  return BipartiteGraph(graph.n_left(), graph.n_right(), std::move(edges));
}

struct Mechanism {
  std::string name;
  std::uint64_t runs = 0;  // rp-mc only
};

Mechanism parse_mechanism(const std::string& text) {
  if (text == "mf" || text == "ps" || text == "rp-exhaustive") return {text, 0};
  if (text.rfind("rp-mc:", 0) == 0) {
    std::string count = text.substr(6);
    std::size_t used = 0;
    unsigned long long runs = 0;
    try {
      runs = std::stoull(count, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != count.size() || runs == 0) throw InputError("bad run count in '" + text + "'");
    return {text, runs};
  }
  throw InputError("unknown mechanism '" + text + "' (expected mf, ps, rp-exhaustive or rp-mc:T)");
}

CoverageProfile mechanism_profile(const BipartiteGraph& graph, const Mechanism& m, std::uint64_t seed) {
  if (m.name == "mf") return solve(graph).decomposition.probability;
  BipartiteGraph view = one_sided_view(graph);
  if (m.name == "ps") return probabilistic_serial(view).profile;
  if (m.name == "rp-exhaustive") {
    try {
      return rp_exhaustive(view);
    } catch (const SizeError& e) {
      throw InputError(e.what());
    }
  }
  return rp_monte_carlo(view, m.runs, seed);
}

int cmd_decompose(const std::string& input, const std::string& output) {
  BipartiteGraph graph = load_graph(input);
  Solution sol = solve(graph);
  Output out(output);
  write_decomposition(out.stream(), sol.decomposition);
  return 0;
}

int cmd_probabilities(const std::string& input, const std::string& mechanism, std::optional<std::uint64_t> seed,
                      const std::string& output) {
  Mechanism m = parse_mechanism(mechanism);
  BipartiteGraph graph = load_graph(input);
  CoverageProfile profile = mechanism_profile(graph, m, resolve_seed(seed));
  Output out(output);
  write_coverage(out.stream(), profile);
  return 0;
}

int cmd_distribution(const std::string& input, const std::string& output) {
  BipartiteGraph graph = load_graph(input);
  Solution sol = solve(graph);
  auto blocks = solution_distributions(graph, sol);
  MatchingDistribution dist = merge_small_support(std::move(blocks));
  Output out(output);
  write_distribution(out.stream(), dist);
  return 0;
}

int cmd_sample(const std::string& input, std::optional<std::uint64_t> seed, std::uint64_t count,
               const std::string& output) {
  BipartiteGraph graph = load_graph(input);
  Solution sol = solve(graph);
  auto blocks = solution_distributions(graph, sol);
  std::mt19937_64 rng(resolve_seed(seed));
  Output out(output);
  for (std::uint64_t i = 0; i < count; ++i) {
    Matching m = sample_product(blocks, rng);
    out.stream() << "matching " << (i + 1) << '\n';
    for (const Edge& e : m.pairs()) out.stream() << (e.left + 1) << ' ' << (e.right + 1) << '\n';
  }
  return 0;
}

std::vector<double> parse_p_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item == "-inf") {
      out.push_back(-std::numeric_limits<double>::infinity());
      continue;
    }
    try {
      out.push_back(to_double(parse_number(item)));
    } catch (const std::invalid_argument&) {
      throw InputError("bad p value '" + item + "'");
    }
  }
  return out;
}

std::vector<Rational> parse_t_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    Rational t;
    try {
      t = parse_number(item);
    } catch (const std::invalid_argument&) {
      throw InputError("bad t value '" + item + "'");
    }
    if (sgn(t) <= 0 || t > 100) throw InputError("t value " + item + " outside (0, 100]");
    out.push_back(t);
  }
  return out;
}

int cmd_compare(const std::string& input, const std::string& mechanisms, const std::string& p_text,
                const std::string& t_text, std::optional<std::uint64_t> seed, const std::string& output) {
  std::vector<double> p_list = parse_p_list(p_text);
  std::vector<Rational> t_list = parse_t_list(t_text);
  BipartiteGraph graph = load_graph(input);
  std::vector<Mechanism> list;
  if (mechanisms.empty()) {
    list = {{"mf", 0}, {"ps", 0}};
    list.push_back(graph.n_left() <= 10 ? Mechanism{"rp-exhaustive", 0} : Mechanism{"rp-mc:1000", 1000});
  } else {
    std::stringstream in(mechanisms);
    std::string item;
    while (std::getline(in, item, ',')) list.push_back(parse_mechanism(item));
  }
  std::uint64_t s = resolve_seed(seed);
  std::vector<MetricsReport> reports;
  for (const Mechanism& m : list) {
    CoverageProfile profile = mechanism_profile(graph, m, s);
    if (m.runs > 0) profile = apply_empirical_floor(profile, m.runs);
    reports.push_back(metrics_report(m.name, profile, p_list, t_list));
  }
  Output out(output);
  write_metrics_tsv(out.stream(), reports);
  return 0;
}

// Read once so that pipes work as claim files.
std::string read_whole_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool starts_with_keyword(const std::string& text, const std::string& keyword) {
  std::istringstream in(text);
  std::string token;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    if (row >> token) return token == keyword;
  }
  return false;
}

int report_violations(const CertificateReport& report) {
  for (const Violation& v : report.violations) {
    std::cerr << "violation\t" << to_string(v.kind) << "\tblock " << (v.block + 1) << "\t" << v.detail << '\n';
  }
  return report.valid() ? 0 : kVerifyFailed;
}

int verify_decomposition_file(const BipartiteGraph& graph, const std::string& path, const std::string& text,
                       bool oracle) {
  std::istringstream in(text);
  FairDecomposition dec;
  try {
    dec = read_decomposition(in);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ": " + e.what());
  } catch (const RangeError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ": " + e.what());
  }
  CertificateReport report = verify_solution(graph, dec);
  int status = report_violations(report);
  if (status == 0 && oracle) {
    assign_probabilities(dec, graph.n_left());
    FairDecomposition truth = brute_force_rank_blocks(graph);
    for (Index u = 0; u < graph.n_left(); ++u) {
      if (truth.probability[u] != dec.probability[u]) {
        std::cerr << "oracle\tuser " << (u + 1) << " has " << to_string(dec.probability[u]) << ", expected "
                  << to_string(truth.probability[u]) << '\n';
        status = kVerifyFailed;
      }
    }
  }
  if (status == 0) std::cout << "valid\n";
  return status;
}

int verify_distribution_file(const BipartiteGraph& graph, const std::string& path, const std::string& text,
                       bool oracle) {
  std::istringstream in(text);
  MatchingDistribution dist;
  try {
    dist = read_distribution(in);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ": " + e.what());
  } catch (const RangeError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ": " + e.what());
  }
  int status = 0;
  std::size_t rho = maximum_matching(graph).size();
  for (std::size_t i = 0; i < dist.entries.size(); ++i) {
    const Matching& m = dist.entries[i].matching;
    if (!m.is_valid_in(graph)) {
      std::cerr << "violation\tentry " << (i + 1) << " uses a pair that is not an edge\n";
      status = kVerifyFailed;
    } else if (m.size() != rho) {
      std::cerr << "violation\tentry " << (i + 1) << " has " << m.size() << " pairs, maximum is " << rho << '\n';
      status = kVerifyFailed;
    }
  }
  if (status != 0) return status;
  CoverageProfile cov = coverage(dist, graph.n_left());
  CoverageProfile expected =
      oracle ? brute_force_rank_blocks(graph).probability : solve(graph).decomposition.probability;
  for (Index u = 0; u < graph.n_left(); ++u) {
    if (cov[u] != expected[u]) {
      std::cerr << "violation\tuser " << (u + 1) << " covered with " << to_string(cov[u]) << ", fair value is "
                << to_string(expected[u]) << '\n';
      status = kVerifyFailed;
    }
  }
  if (status == 0) std::cout << "valid\n";
  return status;
}

int cmd_verify(const std::string& input, const std::string& claim, bool oracle) {
  BipartiteGraph graph = load_graph(input);
  if (oracle && graph.n_left() > 15) throw InputError("--oracle supports at most 15 users");
  std::string text = read_whole_file(claim);
  if (starts_with_keyword(text, "blocks")) return verify_decomposition_file(graph, claim, text, oracle);
  if (starts_with_keyword(text, "entry")) return verify_distribution_file(graph, claim, text, oracle);
  throw InputError(claim + ": neither a decomposition nor a distribution");
}

std::size_t peak_rss_kib() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return static_cast<std::size_t>(usage.ru_maxrss);
}

int cmd_bench(const std::string& shape, std::uint64_t seed, const std::string& output) {
  std::vector<std::uint64_t> parts;
  std::stringstream in(shape);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad --synthetic value '" + shape + "' (expected nL,nR,m)");
    }
  }
  if (parts.size() != 3 || parts[0] == 0 || parts[1] == 0 || parts[0] >= kNoVertex || parts[1] >= kNoVertex ||
      parts[2] > parts[0] * parts[1]) {
    throw InputError("bad --synthetic value '" + shape + "' (expected nL,nR,m with m <= nL*nR)");
  }
  using Clock = std::chrono::steady_clock;
  auto t0 = Clock::now();
  BipartiteGraph graph =
      random_bipartite(static_cast<Index>(parts[0]), static_cast<Index>(parts[1]), parts[2], seed);
  auto t1 = Clock::now();
  Solution sol = solve(graph);
  auto t2 = Clock::now();
  auto blocks = solution_distributions(graph, sol);
  MatchingDistribution dist = merge_small_support(std::move(blocks));
  auto t3 = Clock::now();
  auto secs = [](auto a, auto b) { return std::chrono::duration<double>(b - a).count(); };

  Output out(output);
  out.stream() << "n_left\tn_right\tedges\trho\tblocks\trounds\tgenerate_s\tdecompose_s\tdistribution_s\tsupport\tpeak_rss_mib\n"
               << graph.n_left() << '\t' << graph.n_right() << '\t' << graph.num_edges() << '\t' << sol.rho << '\t'
               << sol.decomposition.blocks.size() << '\t' << sol.stats.rounds << '\t' << secs(t0, t1) << '\t'
               << secs(t1, t2) << '\t' << secs(t2, t3) << '\t' << dist.support() << '\t'
               << static_cast<double>(peak_rss_kib()) / 1024.0 << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maxmin-fair bipartite matching"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  std::string claim;
  std::string mechanism = "mf";
  std::string mechanisms;
  std::string p_list = "1,0,-1,-2,-5";
  std::string t_list = "1,5,10,25";
  std::string synthetic;
  std::optional<std::uint64_t> seed;
  std::uint64_t bench_seed = 1;
  std::uint64_t count = 1;
  bool oracle = false;

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("graph", input, "edge list (1-based 'u v' lines, '%' comments)")->required();
    sub->add_option("-o,--output", output, "output file (default stdout)");
  };

  auto* decompose = app.add_subcommand("decompose", "print the fair decomposition");
  add_io(decompose);

  auto* probabilities = app.add_subcommand("probabilities", "print satisfaction probabilities as TSV");
  add_io(probabilities);
  probabilities->add_option("--mechanism", mechanism, "mf, ps, rp-exhaustive or rp-mc:T");
  probabilities->add_option("--seed", seed, "seed for rp-mc");

  auto* distribution = app.add_subcommand("distribution", "print a small-support fair distribution");
  add_io(distribution);

  auto* sample = app.add_subcommand("sample", "draw matchings from the fair distribution");
  add_io(sample);
  sample->add_option("--seed", seed, "random seed (default: from the system)");
  sample->add_option("-n", count, "number of matchings")->check(CLI::PositiveNumber);

  auto* compare = app.add_subcommand("compare", "fairness metrics per mechanism as TSV");
  add_io(compare);
  compare->add_option("--mechanisms", mechanisms, "comma separated (default mf,ps,rp-exhaustive or rp-mc:1000)");
  compare->add_option("--p-list", p_list, "exponents for N_p; -inf allowed");
  compare->add_option("--t-list", t_list, "bottom percentages");
  compare->add_option("--seed", seed, "seed for rp-mc");

  auto* verify = app.add_subcommand("verify", "check a decomposition or distribution file");
  verify->add_option("graph", input, "edge list")->required();
  verify->add_option("claim", claim, "decomposition or distribution file")->required();
  verify->add_flag("--oracle", oracle, "also compare with brute force (at most 15 users)");

  auto* bench = app.add_subcommand("bench", "time the pipeline on a random graph");
  bench->add_option("--synthetic", synthetic, "nL,nR,m")->required();
  bench->add_option("--seed", bench_seed, "generator seed");
  bench->add_option("-o,--output", output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*decompose) return cmd_decompose(input, output);
    if (*probabilities) return cmd_probabilities(input, mechanism, seed, output);
    if (*distribution) return cmd_distribution(input, output);
    if (*sample) return cmd_sample(input, seed, count, output);
    if (*compare) return cmd_compare(input, mechanisms, p_list, t_list, seed, output);
    if (*verify) return cmd_verify(input, claim, oracle);
    if (*bench) return cmd_bench(synthetic, bench_seed, output);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
