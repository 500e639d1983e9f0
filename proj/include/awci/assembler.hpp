#pragma once

// AWCI graph construction and maximal closed set enumeration.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "awci/index.hpp"
#include "awci/model.hpp"

namespace awci {

/// Vertices are distinct intervals (sorted), edges are reported pairs.
/// Adjacency lists are sorted vertex indices; no edge joins two vertices of
/// one string.
struct AwciGraph {
  std::vector<AnchoredInterval> vertices;
  std::vector<std::vector<std::uint32_t>> adjacency;

  std::size_t size() const { return vertices.size(); }
  std::size_t edge_count() const;
  /// Number of distinct strings among the neighbours of v.
  std::size_t neighbour_strings(std::size_t v) const;
  /// Index of `interval`, or size() if absent.
  std::size_t find(const AnchoredInterval& interval) const;
  bool adjacent(std::size_t a, std::size_t b) const;
};

/// Builds the graph and iteratively drops vertices whose neighbours span
/// fewer than quorum - 1 strings.
AwciGraph build_graph(std::span<const AwciPair> pairs, int quorum);

/// Keeps only the vertices for which keep[v] is true, then repeats the
/// quorum pruning of build_graph.
AwciGraph induced_subgraph(const AwciGraph& graph,
                           const std::vector<bool>& keep, int quorum);

/// Removes every vertex v dominated by a vertex u on the same string:
/// I_v is a proper subinterval of I_u extending it by at most one position
/// per side, N(v) is non-empty and contained in N(u), and one of those
/// extension positions meets the character set of every neighbour of v.
/// Such a v can never belong to a closed set. All tests run against the
/// input graph, so the result does not depend on vertex order.
AwciGraph prune_dominated_vertices(const AwciGraph& graph, const Dataset& data,
                                   const IntersectionIndex& index, int quorum);

struct AssembleOptions {
  /// Non-closed maximal cliques are searched for closed sub-cliques that
  /// miss at most this many members.
  int descent_budget = 2;
  /// Maximal cliques visited per connected component before giving up.
  std::uint64_t max_cliques = 20'000'000;
  int threads = 1;
};

struct AssembleResult {
  std::vector<AwciSet> sets;  // sorted by members
  std::uint64_t maximal_cliques = 0;
  std::uint64_t non_closed_cliques = 0;
  std::uint64_t descended_sets = 0;
  /// Non-closed cliques with sub-cliques beyond the descent budget.
  std::uint64_t truncated_descents = 0;
};

/// Maximal cliques spanning at least `params.quorum` strings, reported when
/// closed. Throws ResourceError when a component exceeds max_cliques.
AssembleResult maximal_closed_sets(const AwciGraph& graph, const Dataset& data,
                                   const SearchParams& params,
                                   const AssembleOptions& options = {});

struct PipelineOptions {
  bool use_filter = true;
  bool prune = true;
  int threads = 1;
  AssembleOptions assemble;
};

/// Pairs (quorum grouped), graph, pruning and clique enumeration.
AssembleResult find_maximal_closed_sets(const Dataset& data,
                                        const SearchParams& params,
                                        const PipelineOptions& options = {});

}  // namespace awci
