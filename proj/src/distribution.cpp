#include "maxmin/distribution.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace maxmin {

namespace {

std::uint64_t fingerprint(const Matching& m) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ m.size();
  for (const Edge& e : m.pairs()) {
    std::uint64_t x = (static_cast<std::uint64_t>(e.left) << 32) | e.right;
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    h = (h ^ x) * 0x100000001b3ULL + 0x632be59bd9b4e019ULL;
  }
  return h;
}

// Index of the first earlier entry with the same matching, for every entry (or npos).
std::vector<std::size_t> first_occurrence(const std::vector<DistributionEntry>& entries) {
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::unordered_multimap<std::uint64_t, std::size_t> seen;
  seen.reserve(entries.size());
  std::vector<std::size_t> out(entries.size(), npos);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::uint64_t h = fingerprint(entries[i].matching);
    auto [lo, hi] = seen.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
      if (entries[it->second].matching == entries[i].matching) {
        out[i] = it->second;
        break;
      }
    }
    if (out[i] == npos) seen.emplace(h, i);
  }
  return out;
}

}  // namespace

void validate(const MatchingDistribution& distribution) {
  if (distribution.entries.empty()) throw std::invalid_argument("distribution has no entries");
  Rational total = 0;
  for (const auto& e : distribution.entries) {
    if (sgn(e.weight) <= 0) throw std::invalid_argument("non-positive weight " + to_string(e.weight));
    total += e.weight;
  }
  if (total != 1) throw std::invalid_argument("weights sum to " + to_string(total));
  auto first = first_occurrence(distribution.entries);
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (first[i] != static_cast<std::size_t>(-1)) {
      throw std::invalid_argument("entry " + std::to_string(i + 1) + " repeats entry " + std::to_string(first[i] + 1));
    }
  }
}

void coalesce(MatchingDistribution& distribution) {
  auto& entries = distribution.entries;
  auto first = first_occurrence(entries);
  std::vector<std::size_t> slot(entries.size());
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (first[i] != static_cast<std::size_t>(-1)) {
      entries[slot[first[i]]].weight += entries[i].weight;
      continue;
    }
    slot[i] = out;
    if (out != i) entries[out] = std::move(entries[i]);
    ++out;
  }
  entries.resize(out);
}

Matching sample_product(std::span<const BlockDistribution> blocks, std::mt19937_64& rng) {
  std::vector<Edge> pairs;
  for (const BlockDistribution& block : blocks) {
    std::uniform_int_distribution<std::uint64_t> pick(0, block.l - 1);
    std::uint64_t slot = pick(rng);
    std::size_t i = 0;
    while (slot >= block.multiplicity[i]) slot -= block.multiplicity[i++];
    auto chosen = block.matchings[i].pairs();
    pairs.insert(pairs.end(), chosen.begin(), chosen.end());
  }
  return Matching(std::move(pairs));
}

namespace {

MatchingDistribution as_distribution(BlockDistribution&& block) {
  MatchingDistribution d;
  d.entries.reserve(block.matchings.size());
  for (std::size_t i = 0; i < block.matchings.size(); ++i) {
    Rational w(static_cast<unsigned long>(block.multiplicity[i]), static_cast<unsigned long>(block.l));
    w.canonicalize();
    d.entries.emplace_back(std::move(w), std::move(block.matchings[i]));
  }
  block.matchings.clear();
  coalesce(d);
  return d;
}

}  // namespace

MatchingDistribution merge_small_support(std::vector<BlockDistribution> blocks) {
  // Folding the two-pointer merge over the blocks cuts [0, 1) at every cumulative weight of every
  // block; the pieces of that common refinement are the merged entries. Each piece is built once
  // instead of re-copying partial unions at every fold step.
  std::vector<MatchingDistribution> parts;
  parts.reserve(blocks.size());
  std::vector<Rational> cuts;
  for (BlockDistribution& block : blocks) {
    parts.push_back(as_distribution(std::move(block)));
    Rational cumulative = 0;
    for (const auto& e : parts.back().entries) {
      cumulative += e.weight;
      if (cumulative < 1) cuts.push_back(cumulative);
    }
  }
  blocks.clear();
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(Rational(1));

  std::vector<std::size_t> at(parts.size(), 0);
  std::vector<Rational> end_of(parts.size());
  for (std::size_t b = 0; b < parts.size(); ++b) end_of[b] = parts[b].entries[0].weight;

  MatchingDistribution merged;
  merged.entries.reserve(cuts.size());
  Rational start = 0;
  for (const Rational& cut : cuts) {
    std::vector<Edge> pairs;
    bool stolen = false;
    for (std::size_t b = 0; b < parts.size(); ++b) {
      Matching& m = parts[b].entries[at[b]].matching;
      bool last_use = end_of[b] == cut;
      if (last_use && !stolen) {
        std::vector<Edge> own = std::move(m).release();
        own.insert(own.end(), pairs.begin(), pairs.end());
        pairs = std::move(own);
        stolen = true;
      } else {
        pairs.insert(pairs.end(), m.pairs().begin(), m.pairs().end());
        if (last_use) m = Matching();
      }
      if (last_use && at[b] + 1 < parts[b].entries.size()) end_of[b] += parts[b].entries[++at[b]].weight;
    }
    merged.entries.emplace_back(cut - start, Matching(std::move(pairs)));
    start = cut;
  }
  coalesce(merged);
  return merged;
}

CoverageProfile coverage(const MatchingDistribution& distribution, Index n_left) {
  CoverageProfile profile(n_left, Rational(0));
  for (const auto& e : distribution.entries) {
    for (const Edge& p : e.matching.pairs()) {
      if (p.left >= n_left) throw std::out_of_range("matching covers a vertex outside the profile");
      profile[p.left] += e.weight;
    }
  }
  return profile;
}

void write_distribution(std::ostream& out, const MatchingDistribution& distribution) {
  for (const auto& e : distribution.entries) {
    out << "entry " << to_string(e.weight) << '\n';
    for (const Edge& p : e.matching.pairs()) out << (p.left + 1) << ' ' << (p.right + 1) << '\n';
  }
}

MatchingDistribution read_distribution(std::istream& in) {
  MatchingDistribution d;
  std::string line;
  std::size_t line_no = 0;
  std::vector<Edge> pairs;
  Rational weight;
  bool open = false;
  std::size_t entry_line = 0;
  auto close = [&]() {
    if (!open) return;
    try {
      d.entries.push_back({weight, Matching(std::move(pairs))});
    } catch (const std::invalid_argument& e) {
      throw ParseError(entry_line, e.what());
    }
    pairs.clear();
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream row(line);
    std::string first;
    if (!(row >> first)) continue;
    if (first == "entry") {
      close();
      std::string w;
      if (!(row >> w)) throw ParseError(line_no, "entry without weight");
      try {
        weight = parse_rational(w);
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
      }
      open = true;
      entry_line = line_no;
      continue;
    }
    if (!open) throw ParseError(line_no, "pair before the first entry line");
    std::string second;
    std::string extra;
    if (!(row >> second) || (row >> extra)) throw ParseError(line_no, "expected 'u v'");
    long long u = 0;
    long long v = 0;
    try {
      std::size_t a = 0;
      std::size_t b = 0;
      u = std::stoll(first, &a);
      v = std::stoll(second, &b);
      if (a != first.size() || b != second.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ParseError(line_no, "malformed pair '" + line + "'");
    }
    if (u <= 0 || v <= 0 || u >= static_cast<long long>(kNoVertex) || v >= static_cast<long long>(kNoVertex)) {
      throw RangeError(line_no, "vertex index out of range");
    }
    pairs.push_back({static_cast<Index>(u - 1), static_cast<Index>(v - 1)});
  }
  close();
  try {
    validate(d);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, e.what());
  }
  return d;
}

void write_coverage(std::ostream& out, const CoverageProfile& profile) {
  for (std::size_t u = 0; u < profile.size(); ++u) {
    out << (u + 1) << '\t' << to_string(profile[u]) << '\t' << to_decimal(profile[u]) << '\n';
  }
}

}  // namespace maxmin
