#include "doctest.h"

#include <algorithm>
#include <string>

#include "awci/assembler.hpp"
#include "awci/errors.hpp"
#include "awci/generate.hpp"
#include "awci/index.hpp"
#include "awci/macsi.hpp"
#include "awci/oracle.hpp"
#include "fixtures.hpp"

using namespace awci;
using awci::testing::worked_example;
using awci::testing::letters;

namespace {

AwciPair edge(AnchoredInterval a, AnchoredInterval b) {
  AwciPair p;
  p.left = a;
  p.right = b;
  return p;
}

const AnchoredInterval s1_1_8{0, 1, 8};
const AnchoredInterval s2_2_7{1, 2, 7};
const AnchoredInterval s3_1_8{2, 1, 8};

}  // namespace

TEST_CASE("graph construction") {
  SearchParams params;
  params.delta = 1;
  params.quorum = 3;
  params.min_size = 6;
  const auto data = worked_example();
  const auto graph = build_graph(enumerate_pairs(data, params), 3);
  const auto a = graph.find(s1_1_8);
  const auto b = graph.find(s2_2_7);
  const auto c = graph.find(s3_1_8);
  REQUIRE(a < graph.size());
  REQUIRE(b < graph.size());
  REQUIRE(c < graph.size());
  CHECK(graph.adjacent(a, b));
  CHECK(graph.adjacent(a, c));
  CHECK(graph.adjacent(b, c));
  for (std::size_t v = 0; v < graph.size(); ++v) {
    CHECK(graph.neighbour_strings(v) >= 2);
    for (auto u : graph.adjacency[v])
      CHECK(graph.vertices[u].string != graph.vertices[v].string);
  }

  // A vertex adjacent to a single other string cannot reach quorum 3.
  const std::vector<AwciPair> pairs{edge({0, 1, 1}, {1, 1, 1}),
                                    edge({0, 1, 1}, {2, 1, 1}),
                                    edge({1, 1, 1}, {2, 1, 1}),
                                    edge({0, 2, 2}, {1, 1, 1})};
  const auto pruned = build_graph(pairs, 3);
  CHECK(pruned.size() == 3);
  CHECK(pruned.find({0, 2, 2}) == pruned.size());
  CHECK(pruned.edge_count() == 3);

  CHECK(build_graph(std::vector<AwciPair>{}, 2).size() == 0);
}

TEST_CASE("dominated vertex pruning") {
  // S = a x9 then z; T = [a]; U = [a].
  const auto data = letters({{"a", "a", "a", "a", "a", "a", "a", "a", "a", "z"},
                             {"a"},
                             {"a"}});
  const auto index = IntersectionIndex::build(data);
  const AnchoredInterval t{1, 1, 1};
  const AnchoredInterval u_only{2, 1, 1};

  SUBCASE("one-position extension sharing characters removes v") {
    const std::vector<AwciPair> pairs{edge({0, 1, 8}, t), edge({0, 1, 9}, t)};
    const auto graph = build_graph(pairs, 2);
    const auto pruned = prune_dominated_vertices(graph, data, index, 2);
    CHECK(pruned.find({0, 1, 8}) == pruned.size());
    CHECK(pruned.find({0, 1, 9}) < pruned.size());
  }
  SUBCASE("a private neighbour keeps v") {
    const std::vector<AwciPair> pairs{edge({0, 1, 8}, t), edge({0, 1, 8}, u_only),
                                      edge({0, 1, 9}, t)};
    const auto graph = build_graph(pairs, 2);
    const auto pruned = prune_dominated_vertices(graph, data, index, 2);
    CHECK(pruned.find({0, 1, 8}) < pruned.size());
  }
  SUBCASE("an extension by two positions keeps v") {
    const std::vector<AwciPair> pairs{edge({0, 1, 8}, t), edge({0, 1, 10}, t)};
    const auto graph = build_graph(pairs, 2);
    const auto pruned = prune_dominated_vertices(graph, data, index, 2);
    CHECK(pruned.find({0, 1, 8}) < pruned.size());
  }
  SUBCASE("an extension sharing nothing keeps v") {
    const std::vector<AwciPair> pairs{edge({0, 2, 9}, t), edge({0, 2, 10}, t)};
    const auto graph = build_graph(pairs, 2);
    const auto pruned = prune_dominated_vertices(graph, data, index, 2);
    CHECK(pruned.find({0, 2, 9}) < pruned.size());
  }
}

TEST_CASE("maximal closed sets on the worked example") {
  SearchParams params;
  params.delta = 1;
  params.quorum = 3;
  params.min_size = 6;
  const auto data = worked_example();
  const auto result = find_maximal_closed_sets(data, params);
  const std::vector<AnchoredInterval> expected{s1_1_8, s2_2_7, s3_1_8};
  const auto it = std::find_if(result.sets.begin(), result.sets.end(),
                               [&](const AwciSet& s) { return s.members == expected; });
  REQUIRE(it != result.sets.end());
  CHECK(it->closed);
  CHECK(it->pair_indels == std::vector<int>{1, 1, 1});
  CHECK(result.sets == brute_force_maximal_closed_sets(data, params));
}

TEST_CASE("a single edge does not reach quorum 3") {
  const auto data = letters({{"a"}, {"a"}, {"b"}});
  const std::vector<AwciPair> pairs{edge({0, 1, 1}, {1, 1, 1})};
  SearchParams params;
  params.quorum = 3;
  const auto graph = build_graph(pairs, 3);
  CHECK(maximal_closed_sets(graph, data, params).sets.empty());
}

TEST_CASE("non-closed maximal cliques give way to their extension") {
  // {S1[1,1], S2, S3, S4} is a maximal clique but S1 position 2 meets every
  // other member; its closed counterpart uses S1[1,2].
  const auto data = letters({{"a", "a"}, {"a"}, {"a"}, {"a"}});
  SearchParams params;
  params.quorum = 3;
  params.min_size = 1;
  const auto expected = brute_force_maximal_closed_sets(data, params);
  REQUIRE(expected.size() == 1);
  CHECK(expected[0].members == std::vector<AnchoredInterval>{
                                   {0, 1, 2}, {1, 1, 1}, {2, 1, 1}, {3, 1, 1}});
  PipelineOptions options;
  options.prune = false;
  const auto result = find_maximal_closed_sets(data, params, options);
  CHECK(result.sets == expected);
  CHECK(result.non_closed_cliques >= 1);
  CHECK(result.descended_sets == 0);
  options.prune = true;
  CHECK(find_maximal_closed_sets(data, params, options).sets == expected);
}

TEST_CASE("non-hereditary witness through the pipeline") {
  const auto data = letters({{"b", "a"}, {"ab"}, {"a"}});
  SearchParams params;
  params.quorum = 3;
  params.min_size = 1;
  const auto expected = brute_force_maximal_closed_sets(data, params);
  const std::vector<AnchoredInterval> triple{{0, 2, 2}, {1, 1, 1}, {2, 1, 1}};
  CHECK(std::any_of(expected.begin(), expected.end(),
                    [&](const AwciSet& s) { return s.members == triple; }));
  CHECK(find_maximal_closed_sets(data, params).sets == expected);
}

TEST_CASE("pipeline equals the oracle with and without pruning") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    RandomSpec spec;
    spec.max_n = 9;
    const auto data = random_instance(seed, spec);
    SearchParams params;
    params.delta = static_cast<int>(seed % 3);
    params.min_size = 1 + static_cast<int>(seed % 3);
    params.quorum = 2 + static_cast<int>(seed % (data.size() - 1));
    const auto expected = brute_force_maximal_closed_sets(data, params);
    for (bool prune : {true, false}) {
      PipelineOptions options;
      options.prune = prune;
      const auto result = find_maximal_closed_sets(data, params, options);
      INFO("seed " << seed << " prune " << prune);
      CHECK(result.sets == expected);
      for (const auto& s : result.sets) {
        CHECK(s.closed);
        CHECK(s.members.size() >= static_cast<std::size_t>(params.quorum));
        CHECK(is_awci_set(data, s.members, params.delta));
        CHECK(is_closed_set(data, s.members));
      }
    }
  }
}

TEST_CASE("clique guard names the component") {
  SearchParams params;
  params.delta = 1;
  params.quorum = 3;
  params.min_size = 6;
  PipelineOptions options;
  options.assemble.max_cliques = 0;
  try {
    find_maximal_closed_sets(worked_example(), params, options);
    FAIL("expected a resource error");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("component of S") != std::string::npos);
  }
}

TEST_CASE("set assembly does not depend on the thread count") {
  PlantedSpec spec;
  spec.m = 5;
  spec.n = 150;
  spec.background_sharing = 0.5;
  spec.alphabet_size = 30;
  const auto data = generate_planted(spec).data;
  SearchParams params;
  params.delta = 1;
  params.quorum = 3;
  params.min_size = 4;
  const auto one = find_maximal_closed_sets(data, params);
  CHECK(std::is_sorted(one.sets.begin(), one.sets.end()));
  for (int threads : {2, 5}) {
    PipelineOptions options;
    options.threads = threads;
    CHECK(find_maximal_closed_sets(data, params, options).sets == one.sets);
  }
}
