#include "maxmin/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace maxmin {

namespace {

std::vector<Rational> sorted_copy(std::span<const Rational> profile) {
  std::vector<Rational> v(profile.begin(), profile.end());
  std::sort(v.begin(), v.end());
  return v;
}

// ceil(q * n) for rational q >= 0
std::size_t ceil_times(const Rational& q, std::size_t n) {
  Rational x = q * static_cast<unsigned long>(n);
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return c.get_ui();
}

std::string format_double(double x) {
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

double nash_welfare(std::span<const Rational> profile, double p) {
  if (profile.empty()) throw MetricError("empty profile");
  if (std::isinf(p)) {
    auto [lo, hi] = std::minmax_element(profile.begin(), profile.end());
    return to_double(p < 0 ? *lo : *hi);
  }
  const double n = static_cast<double>(profile.size());
  if (p == 1) {
    Rational sum = 0;
    for (const Rational& q : profile) sum += q;
    return to_double(sum / static_cast<unsigned long>(profile.size()));
  }
  bool has_zero = std::any_of(profile.begin(), profile.end(), [](const Rational& q) { return sgn(q) == 0; });
  if (p <= 0 && has_zero) return 0.0;
  if (p == 0) {
    double s = 0;
    for (const Rational& q : profile) s += std::log(to_double(q));
    return std::exp(s / n);
  }
  double s = 0;
  for (const Rational& q : profile) s += std::pow(to_double(q), p);
  return std::pow(s / n, 1.0 / p);
}

std::vector<Rational> apply_empirical_floor(std::span<const Rational> profile, std::uint64_t runs) {
  if (runs == 0) throw MetricError("floor needs a positive run count");
  Rational floor(1UL, static_cast<unsigned long>(runs));
  std::vector<Rational> out(profile.begin(), profile.end());
  for (Rational& q : out) q = std::max(q, floor);
  return out;
}

std::optional<double> inequality_variance(std::span<const Rational> profile) {
  if (profile.empty()) throw MetricError("empty profile");
  std::vector<double> logs;
  for (const Rational& q : profile) {
    if (sgn(q) <= 0) return std::nullopt;
    logs.push_back(std::log(to_double(q)));
  }
  double mean = 0;
  for (double x : logs) mean += x;
  mean /= static_cast<double>(logs.size());
  double var = 0;
  for (double x : logs) var += (x - mean) * (x - mean);
  return var / static_cast<double>(logs.size());
}

Rational bottom_fraction(std::span<const Rational> profile, const Rational& t_percent) {
  if (sgn(t_percent) <= 0 || t_percent > 100) {
    throw MetricError("bottom fraction percentage " + to_string(t_percent) + " outside (0, 100]");
  }
  if (profile.empty()) throw MetricError("empty profile");
  auto sorted = sorted_copy(profile);
  std::size_t k = std::max<std::size_t>(1, ceil_times(t_percent / 100, sorted.size()));
  Rational sum = 0;
  for (std::size_t i = 0; i < k; ++i) sum += sorted[i];
  return sum / static_cast<unsigned long>(k);
}

Rational quantile(std::span<const Rational> profile, const Rational& q) {
  if (sgn(q) <= 0 || q > 1) throw MetricError("quantile " + to_string(q) + " outside (0, 1]");
  if (profile.empty()) throw MetricError("empty profile");
  auto sorted = sorted_copy(profile);
  return sorted[std::max<std::size_t>(1, ceil_times(q, sorted.size())) - 1];
}

Rational fraction_at_one(std::span<const Rational> profile) {
  if (profile.empty()) throw MetricError("empty profile");
  unsigned long ones = static_cast<unsigned long>(std::count(profile.begin(), profile.end(), Rational(1)));
  Rational r(ones, static_cast<unsigned long>(profile.size()));
  r.canonicalize();
  return r;
}

std::strong_ordering lexicographic_compare(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw MetricError("profiles have different sizes");
  auto sa = sorted_copy(a);
  auto sb = sorted_copy(b);
  for (std::size_t i = 0; i < sa.size(); ++i) {
    int c = cmp(sa[i], sb[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

MetricsReport metrics_report(std::string mechanism, std::span<const Rational> profile, std::span<const double> p_list,
                             std::span<const Rational> t_list) {
  MetricsReport r;
  r.mechanism = std::move(mechanism);
  r.min = *std::min_element(profile.begin(), profile.end());
  r.q25 = quantile(profile, Rational(1, 4));
  r.q50 = quantile(profile, Rational(1, 2));
  r.q75 = quantile(profile, Rational(3, 4));
  r.per1 = fraction_at_one(profile);
  r.n0 = nash_welfare(profile, 0);
  r.p_list.assign(p_list.begin(), p_list.end());
  for (double p : p_list) r.np.push_back(nash_welfare(profile, p));
  r.varlog = inequality_variance(profile);
  r.t_list.assign(t_list.begin(), t_list.end());
  for (const Rational& t : t_list) r.bottom.push_back(bottom_fraction(profile, t));
  return r;
}

void write_metrics_tsv(std::ostream& out, std::span<const MetricsReport> reports) {
  if (reports.empty()) return;
  const MetricsReport& first = reports.front();
  out << "mechanism\tmin\tq25\tq50\tq75\tper1\tN0";
  for (double p : first.p_list) out << "\tN" << format_double(p);
  out << "\tvarlog";
  for (const Rational& t : first.t_list) out << "\tbottom" << to_decimal(t);
  out << '\n';
  for (const MetricsReport& r : reports) {
    out << r.mechanism << '\t' << to_decimal(r.min) << '\t' << to_decimal(r.q25) << '\t' << to_decimal(r.q50) << '\t'
        << to_decimal(r.q75) << '\t' << to_decimal(r.per1) << '\t' << format_double(r.n0);
    for (double x : r.np) out << '\t' << format_double(x);
    out << '\t' << (r.varlog ? format_double(*r.varlog) : std::string("undefined"));
    for (const Rational& b : r.bottom) out << '\t' << to_decimal(b);
    out << '\n';
  }
}

}  // namespace maxmin
