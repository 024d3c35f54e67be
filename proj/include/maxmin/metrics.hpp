#pragma once

#include <compare>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxmin/rational.hpp"

namespace maxmin {

class MetricError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Power mean N_p of the profile. p = 1 is the mean, p = 0 the geometric mean and
/// p = -infinity the minimum. A zero probability makes N_p zero for every p <= 0.
double nash_welfare(std::span<const Rational> profile, double p);

/// Replaces every probability q by max(q, 1/runs); used for empirical profiles before taking
/// logarithms.
std::vector<Rational> apply_empirical_floor(std::span<const Rational> profile, std::uint64_t runs);

/// Population variance of natural logarithms; empty when some probability is zero.
std::optional<double> inequality_variance(std::span<const Rational> profile);

/// Mean over the ceil(t% * n) lowest probabilities. Throws MetricError unless 0 < t <= 100.
Rational bottom_fraction(std::span<const Rational> profile, const Rational& t_percent);

/// Lower empirical quantile: element ceil(q * n) - 1 of the ascending sort (q in (0, 1]).
Rational quantile(std::span<const Rational> profile, const Rational& q);

/// Share of users with probability exactly 1.
Rational fraction_at_one(std::span<const Rational> profile);

/// Lexicographic order of the ascending sorted vectors. Throws MetricError on size mismatch.
std::strong_ordering lexicographic_compare(std::span<const Rational> a, std::span<const Rational> b);

struct MetricsReport {
  std::string mechanism;
  Rational min, q25, q50, q75, per1;
  double n0 = 0;
  std::vector<double> p_list;
  std::vector<double> np;
  std::optional<double> varlog;
  std::vector<Rational> t_list;
  std::vector<Rational> bottom;
};

MetricsReport metrics_report(std::string mechanism, std::span<const Rational> profile, std::span<const double> p_list,
                             std::span<const Rational> t_list);

/// Header row then one row per report:
/// mechanism, min, q25, q50, q75, per1, N0, N_p..., varlog, bottom_t...
void write_metrics_tsv(std::ostream& out, std::span<const MetricsReport> reports);

}  // namespace maxmin
