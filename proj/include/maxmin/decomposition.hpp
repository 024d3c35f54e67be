#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <utility>
#include <vector>

#include "maxmin/graph.hpp"
#include "maxmin/rational.hpp"

namespace maxmin {

/// Users sharing one satisfaction probability, plus the right vertices they use exclusively.
struct Block {
  std::vector<Index> members;         // sorted left vertices
  Rational lambda;                    // |reserved_right| / |members|
  std::vector<Index> reserved_right;  // sorted; Gamma(B_i) minus Gamma(S_{i-1})

  friend bool operator==(const Block&, const Block&) = default;
};

/// Blocks in strictly increasing lambda order; `probability[u]` is the maxmin-fair satisfaction
/// probability of left vertex u (0 for users in no block).
struct FairDecomposition {
  std::vector<Block> blocks;
  std::vector<Rational> probability;

  friend bool operator==(const FairDecomposition&, const FairDecomposition&) = default;
};

/// Input is not a canonical one-sided instance; run reduce_to_one_sided first.
class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DecompositionStats {
  std::size_t rounds = 0;  // one merged min-cut per round
  std::size_t splits = 0;
};

/// Fair decomposition of a canonical instance (rho(L) = |R| < |L|, no isolated vertices).
///
/// Keeps a chain T_1 < ... < T_t of left sets. Every round guesses lambda'_i = |Gamma(T_i)|/|T_i|
/// for each unconfirmed set (Gamma taken after removing edges into lower sets' neighborhoods),
/// solves one min cut over all of them, confirms the saturated sets as blocks and splits each
/// unsaturated set into its s-reachable part (lower) and the rest (higher).
FairDecomposition fair_decomposition(const BipartiteGraph& graph, DecompositionStats* stats = nullptr);

/// Fills `probability` (sized n_left) from the blocks.
void assign_probabilities(FairDecomposition& decomposition, Index n_left);

/// All users sorted by (probability, index).
std::vector<std::pair<Index, Rational>> satisfaction_vector(const FairDecomposition& decomposition);

/// "blocks k", then per block "lambda p/q members u..." and "reserved v...", 1-based.
void write_decomposition(std::ostream& out, const FairDecomposition& decomposition);

/// Inverse of write_decomposition. `probability` is sized to the largest member index + 1.
/// Throws ParseError on malformed text.
FairDecomposition read_decomposition(std::istream& in);

}  // namespace maxmin
