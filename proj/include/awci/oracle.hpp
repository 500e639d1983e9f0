#pragma once

// Literal, unoptimized evaluation of the definitions. These functions are
// the ground truth the fast path is differentially tested against; most of
// them are exponential or polynomial of high degree and meant for small
// inputs only.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "awci/model.hpp"

namespace awci {

struct PairVerdict {
  bool is_wci = false;
  bool is_awci = false;
  CharSet common_set;
  std::vector<int> indel_positions_left;
  std::vector<int> indel_positions_right;
  int indel_total = 0;
};

/// Throws UnsupportedError if both intervals lie on the same string and
/// std::out_of_range if either is not a valid interval.
PairVerdict judge_pair(const Dataset& data, const AnchoredInterval& a,
                       const AnchoredInterval& b, int delta);

/// True iff every unordered pair of members is a delta-AWCI pair.
bool is_awci_set(const Dataset& data, std::span<const AnchoredInterval> set,
                 int delta);

/// True iff no member [i,j]_S has a neighbour p in {i-1, j+1}, inside S and
/// inside the member's contig, with S[p] meeting the character set of every
/// other member.
bool is_closed_set(const Dataset& data, std::span<const AnchoredInterval> set);

/// The pair as it would be reported: an AWCI pair whose four endpoint
/// positions meet the common set and whose intervals both span at least
/// `min_size` positions. `a` and `b` may be given in either order.
std::optional<AwciPair> admissible_pair(const Dataset& data,
                                        const AnchoredInterval& a,
                                        const AnchoredInterval& b,
                                        const SearchParams& params);

/// Every admissible pair across distinct strings, canonically sorted. With
/// `quorum_grouping`, a pair is kept only if its left interval has
/// admissible partners in at least quorum - 1 distinct other strings.
std::vector<AwciPair> brute_force_pairs(const Dataset& data,
                                        const SearchParams& params,
                                        bool quorum_grouping);

/// Builds the reported form of a member set (sorted members, closedness,
/// pairwise common sets and indel counts).
AwciSet describe_set(const Dataset& data, std::vector<AnchoredInterval> members,
                     int delta);

struct OracleLimits {
  int max_total_length = 64;
  std::size_t max_cliques = 5'000'000;
};

/// All sets with members in at least `quorum` strings that are pairwise
/// admissible, closed, and inclusion-maximal among closed such sets.
/// Throws ResourceError if the input exceeds `limits`.
std::vector<AwciSet> brute_force_maximal_closed_sets(
    const Dataset& data, const SearchParams& params,
    const OracleLimits& limits = {});

}  // namespace awci
