#pragma once

#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "maxmin/block_distribution.hpp"
#include "maxmin/graph.hpp"
#include "maxmin/rational.hpp"

namespace maxmin {

/// Satisfaction probability per left vertex.
using CoverageProfile = std::vector<Rational>;

struct DistributionEntry {
  Rational weight;
  Matching matching;

  DistributionEntry() = default;
  DistributionEntry(Rational w, Matching m) : weight(std::move(w)), matching(std::move(m)) {}
  DistributionEntry(const DistributionEntry&) = default;
  DistributionEntry& operator=(const DistributionEntry&) = default;
  // mpq_class moves are not noexcept, which would make vectors of entries copy on growth
  DistributionEntry(DistributionEntry&& other) noexcept : matching(std::move(other.matching)) {
    mpq_swap(weight.get_mpq_t(), other.weight.get_mpq_t());
  }
  DistributionEntry& operator=(DistributionEntry&& other) noexcept {
    mpq_swap(weight.get_mpq_t(), other.weight.get_mpq_t());
    matching = std::move(other.matching);
    return *this;
  }

  friend bool operator==(const DistributionEntry&, const DistributionEntry&) = default;
};

/// Weighted list of matchings; weights positive, summing to 1, matchings distinct.
struct MatchingDistribution {
  std::vector<DistributionEntry> entries;

  std::size_t support() const { return entries.size(); }
  friend bool operator==(const MatchingDistribution&, const MatchingDistribution&) = default;
};

/// Throws std::invalid_argument when weights are not positive, do not sum to 1, or a matching
/// repeats.
void validate(const MatchingDistribution& distribution);

/// Sums the weights of equal matchings into their first occurrence, keeping the order.
void coalesce(MatchingDistribution& distribution);

/// Independent draw from every block distribution; the union is a maximum matching.
Matching sample_product(std::span<const BlockDistribution> blocks, std::mt19937_64& rng);

/// Two-pointer merge over cumulative weights, folded over the blocks. Coverage equals that of the
/// product distribution and the support has at most sum(distinct_i) - (k - 1) entries.
/// Consumes the block distributions to keep peak memory near the size of the result.
MatchingDistribution merge_small_support(std::vector<BlockDistribution> blocks);

/// Exact coverage of every left vertex 0..n_left-1.
CoverageProfile coverage(const MatchingDistribution& distribution, Index n_left);

/// Per entry: "entry p/q" followed by one "u v" line per pair (1-based).
void write_distribution(std::ostream& out, const MatchingDistribution& distribution);

/// Inverse of write_distribution; validates the result. Throws ParseError with a line number.
MatchingDistribution read_distribution(std::istream& in);

/// "vertex<TAB>p/q<TAB>decimal" per left vertex, 1-based.
void write_coverage(std::ostream& out, const CoverageProfile& profile);

}  // namespace maxmin
