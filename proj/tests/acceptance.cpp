// One PASS/FAIL line per acceptance criterion. Exit status is non-zero if any criterion fails.
#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "maxmin/baselines.hpp"
#include "maxmin/certificate.hpp"
#include "maxmin/distribution.hpp"
#include "maxmin/metrics.hpp"
#include "maxmin/oracle.hpp"
#include "maxmin/solver.hpp"

using namespace maxmin;
using namespace fixtures;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double peak_rss_mib() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return usage.ru_maxrss / 1024.0;
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = "first failure: " + what;
    pass = pass && ok;
  }
};

Rational sum(std::span<const Rational> p) {
  Rational s = 0;
  for (const Rational& x : p) s += x;
  return s;
}

const std::vector<BipartiteGraph>& corpus() {
  static const std::vector<BipartiteGraph> graphs = canonical_corpus();
  return graphs;
}

Outcome worked_examples() {
  Outcome o;
  auto start = Clock::now();
  FairDecomposition f1 = solve(fig1()).decomposition;
  double t1 = seconds_since(start);
  o.require(f1.probability == std::vector<Rational>{q(1, 1), q(2, 3), q(2, 3), q(2, 3)}, "figure 1 probabilities");
  start = Clock::now();
  FairDecomposition f2 = solve(fig2()).decomposition;
  double t2 = seconds_since(start);
  bool blocks_ok = f2.blocks.size() == 3 && f2.blocks[0].members == std::vector<Index>{4, 5} &&
                   f2.blocks[0].lambda == q(1, 2) && f2.blocks[1].members == std::vector<Index>{1, 2, 3} &&
                   f2.blocks[1].lambda == q(2, 3) && f2.blocks[2].members == std::vector<Index>{0} &&
                   f2.blocks[2].lambda == 1;
  o.require(blocks_ok, "figure 2 blocks");
  o.require(t1 < 1.0 && t2 < 1.0, "runtime");
  if (o.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "fig1 %.4fs, fig2 %.4fs (limit 1s each)", t1, t2);
    o.detail = buf;
  }
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  auto start = Clock::now();
  std::size_t i = 0;
  for (const BipartiteGraph& g : corpus()) {
    o.require(fair_decomposition(g) == brute_force_blocks(g), "instance " + std::to_string(i));
    ++i;
  }
  double t = seconds_since(start);
  o.require(t < 30.0, "runtime");
  if (o.pass) o.detail = std::to_string(i) + " instances in " + std::to_string(t) + "s (limit 30s)";
  return o;
}

Outcome distribution_realization() {
  Outcome o;
  std::size_t max_support = 0;
  for (const BipartiteGraph& g : corpus()) {
    Solution s = solve(g);
    std::size_t k = s.decomposition.blocks.size();
    MatchingDistribution d = merge_small_support(solution_distributions(g, s));
    o.require(coverage(d, g.n_left()) == s.decomposition.probability, "coverage");
    for (const auto& e : d.entries) o.require(e.matching.size() == s.rho && e.matching.is_valid_in(g), "size rho");
    o.require(d.support() <= g.n_left() + 1 - k, "support bound");
    max_support = std::max(max_support, d.support());
  }
  if (o.pass) o.detail = "exact coverage on " + std::to_string(corpus().size()) + " instances";
  return o;
}

Outcome lexicographic_dominance() {
  Outcome o;
  const double ps[] = {1, 0, -1, -2, -5};
  std::size_t strict_ps = 0;
  for (const BipartiteGraph& g : corpus()) {
    CoverageProfile mf = fair_decomposition(g).probability;
    CoverageProfile ps_profile = probabilistic_serial(g).profile;
    CoverageProfile rp = rp_exhaustive(g);
    auto vs_ps = lexicographic_compare(mf, ps_profile);
    o.require(vs_ps != std::strong_ordering::less, "MF vs PS order");
    o.require(lexicographic_compare(mf, rp) != std::strong_ordering::less, "MF vs RP order");
    strict_ps += vs_ps == std::strong_ordering::greater;
    for (double p : ps) {
      double a = nash_welfare(mf, p);
      double b = nash_welfare(ps_profile, p);
      o.require(a >= b * (1 - 1e-12), "N_p(MF) >= N_p(PS) at p=" + std::to_string(p));
    }
  }
  if (o.pass) o.detail = "MF strictly above PS on " + std::to_string(strict_ps) + " instances; N_p tolerance 1e-12 rel";
  return o;
}

Outcome pareto_identities() {
  Outcome o;
  std::size_t strict = 0;
  for (const BipartiteGraph& g : corpus()) {
    Rational target(static_cast<unsigned long>(g.n_right()), static_cast<unsigned long>(g.n_left()));
    target.canonicalize();
    CoverageProfile mf = fair_decomposition(g).probability;
    CoverageProfile rp = rp_exhaustive(g);
    CoverageProfile ps_profile = probabilistic_serial(g).profile;
    Rational n = g.n_left();
    o.require(sum(mf) / n == target, "N_1(MF)");
    o.require(sum(rp) / n == target, "N_1(RP)");
    Rational ps_mean = sum(ps_profile) / n;
    o.require(ps_mean <= target, "N_1(PS) bound");
    strict += ps_mean < target;
  }
  Rational fig1_ps = sum(probabilistic_serial(fig1()).profile) / 4;
  o.require(fig1_ps < q(3, 4), "figure 1 strict");
  o.require(strict > 0, "a strict instance");
  if (o.pass) {
    o.detail = "N_1(PS) < rho/|L| on " + std::to_string(strict) + " instances; figure 1 PS mean " + to_string(fig1_ps);
  }
  return o;
}

Outcome certificate_round_trip() {
  Outcome o;
  std::size_t perturbed = 0, moved = 0, dropped = 0;
  for (const BipartiteGraph& g : corpus()) {
    FairDecomposition d = fair_decomposition(g);
    o.require(verify_certificate(g, d).valid(), "accept");
    o.require(verify_certificate(g, d, edge_assignments(g, d)).valid(), "accept with assignment");

    FairDecomposition bumped = d;
    Block& first = bumped.blocks.front();
    first.lambda -= Rational(1, static_cast<unsigned long>(4 * first.members.size() + 4));
    assign_probabilities(bumped, g.n_left());
    CertificateReport r = verify_certificate(g, bumped);
    o.require(!r.valid() && r.primary() == ViolationKind::Tightness, "lambda perturbed");
    ++perturbed;

    for (std::size_t b = 0; b + 1 < d.blocks.size(); ++b) {
      if (d.blocks[b].members.size() < 2) continue;
      FairDecomposition m = d;
      Index u = m.blocks[b].members.back();
      m.blocks[b].members.pop_back();
      auto& dst = m.blocks[b + 1].members;
      dst.insert(std::lower_bound(dst.begin(), dst.end(), u), u);
      assign_probabilities(m, g.n_left());
      CertificateReport mr = verify_certificate(g, m);
      o.require(!mr.valid() && mr.primary() == ViolationKind::Tightness, "member moved");
      ++moved;
      break;
    }

    FairDecomposition x = d;
    x.blocks.back().reserved_right.pop_back();
    CertificateReport xr = verify_certificate(g, x);
    o.require(!xr.valid() && xr.primary() == ViolationKind::Reserved, "reserved dropped");
    ++dropped;
  }
  if (o.pass) {
    o.detail = "corruptions rejected: lambda " + std::to_string(perturbed) + ", member " + std::to_string(moved) +
               ", reserved " + std::to_string(dropped);
  }
  return o;
}

Outcome sampling_fidelity() {
  Outcome o;
  BipartiteGraph g = fig1();
  Solution s = solve(g);
  std::vector<BlockDistribution> blocks = solution_distributions(g, s);
  std::mt19937_64 rng(20240601);
  const int draws = 100000;
  std::vector<int> hits(g.n_left(), 0);
  for (int i = 0; i < draws; ++i) {
    Matching m = sample_product(blocks, rng);
    for (const Edge& e : m.pairs()) ++hits[e.left];
  }
  double worst = 0;
  for (Index u = 0; u < g.n_left(); ++u) {
    worst = std::max(worst, std::abs(hits[u] / double(draws) - to_double(s.decomposition.probability[u])));
  }
  o.require(worst <= 0.01, "deviation");
  char buf[96];
  std::snprintf(buf, sizeof buf, "max deviation %.5f over %d draws (limit 0.01)", worst, draws);
  if (o.pass) o.detail = buf;
  return o;
}

Outcome scale() {
  Outcome o;
  const std::uint64_t ms[] = {100000, 1000000, 5000000};
  std::vector<double> times;
  double rss_at_1e6 = 0;
  std::ostringstream detail;
  for (std::uint64_t m : ms) {
    BipartiteGraph g = random_bipartite(100000, 50000, m, 1);
    auto start = Clock::now();
    Solution s = solve(g);
    MatchingDistribution d = merge_small_support(solution_distributions(g, s));
    double t = seconds_since(start);
    times.push_back(t);
    if (m == 1000000) {
      rss_at_1e6 = peak_rss_mib();
      o.require(t < 60.0, "1e6 runtime");
      o.require(rss_at_1e6 < 2048.0, "1e6 memory");
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "m=%.0e %.2fs support %zu; ", double(m), t, d.support());
    detail << buf;
  }
  // least squares slope of log(time) against log(m)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    double x = std::log(double(ms[i])), y = std::log(times[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = double(times.size());
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  o.require(slope < 1.6, "log-log slope");
  char buf[96];
  std::snprintf(buf, sizeof buf, "peak RSS after 1e6 %.0f MiB (limit 2048); slope %.2f (limit 1.6)", rss_at_1e6, slope);
  detail << buf;
  o.detail = (o.pass ? "" : o.detail + "; ") + detail.str();
  return o;
}

Outcome maxflow_correctness() {
  Outcome o;
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<Index> nl_dist(1, 12);
  std::uniform_int_distribution<Index> nr_dist(1, 10);
  std::uniform_real_distribution<double> dens(0.1, 0.7);
  std::size_t components = 0;
  for (int iter = 0; iter < 200; ++iter) {
    BipartiteGraph g = random_graph(nl_dist(rng), nr_dist(rng), dens(rng), rng);
    auto [comps, owner] = random_components(g, rng);
    CutResult cut = min_cut(build_parametric_network(g, comps));
    for (std::size_t c = 0; c < comps.size(); ++c) {
      BruteCut brute = brute_cut(g, comps[c].members, comps[c].lambda, owner, static_cast<std::int32_t>(c));
      o.require(cut.flow_value[c] == brute.value, "network " + std::to_string(iter));
      ++components;
    }
  }
  if (o.pass) o.detail = "200 networks, " + std::to_string(components) + " components, exact";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"worked-example exactness", worked_examples},
      {"oracle equivalence", oracle_equivalence},
      {"distribution realization", distribution_realization},
      {"lexicographic dominance", lexicographic_dominance},
      {"pareto identities", pareto_identities},
      {"certificate round-trip", certificate_round_trip},
      {"sampling fidelity", sampling_fidelity},
      {"scale", scale},
      {"max-flow correctness", maxflow_correctness},
  };
  int failures = 0;
  int id = 1;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, c.name, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
    ++id;
  }
  return failures == 0 ? 0 : 1;
}
