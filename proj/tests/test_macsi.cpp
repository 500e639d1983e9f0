#include "doctest.h"

#include <algorithm>
#include <map>

#include "awci/generate.hpp"
#include "awci/index.hpp"
#include "awci/macsi.hpp"
#include "awci/oracle.hpp"
#include "awci/ridge_filter.hpp"
#include "fixtures.hpp"

using namespace awci;
using awci::testing::worked_example;
using awci::testing::letters;

namespace {

bool contains_pair(const std::vector<AwciPair>& pairs, AnchoredInterval a,
                   AnchoredInterval b) {
  return std::any_of(pairs.begin(), pairs.end(), [&](const AwciPair& p) {
    return p.left == a && p.right == b;
  });
}

}  // namespace

TEST_CASE("incremental acceptance equals judge_pair") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    RandomSpec spec;
    spec.max_m = 3;
    spec.max_n = 12;
    const auto data = random_instance(seed, spec);
    const auto index = IntersectionIndex::build(data);
    SweepState sweep;
    for (std::size_t x = 0; x < data.size(); ++x)
      for (std::size_t y = 0; y < data.size(); ++y) {
        if (x == y) continue;
        const auto& sx = data[x];
        const auto& sy = data[y];
        for (int i = 1; i <= sx.length(); ++i)
          for (int j = i; j <= sx.contig_end(i); ++j) {
            sweep.retarget(index.pos(y, x), i, j);
            for (int k = 1; k <= sy.length(); ++k) {
              sweep.start(k);
              for (int l = k; l <= sy.contig_end(k); ++l) {
                sweep.extend();
                CHECK(sweep.l() == l);
                const auto v = judge_pair(data, {x, i, j}, {y, k, l}, 0);
                CHECK(sweep.reference_indels() + sweep.trans_indels() ==
                      v.indel_total);
                for (int d = 0; d <= 2; ++d)
                  CHECK(sweep.accepts(d) ==
                        judge_pair(data, {x, i, j}, {y, k, l}, d).is_awci);
              }
            }
          }
      }
  }
}

TEST_CASE("collect_anchors on the worked example") {
  const auto data = worked_example();
  const auto index = IntersectionIndex::build(data);
  CHECK(collect_anchors(data[0], index.pos(0, 2), 1, 0) == std::vector<int>{2});
  CHECK(collect_anchors(data[0], index.pos(0, 2), 1, 1) ==
        std::vector<int>{2, 4, 6});
  CHECK(collect_anchors(data[0], index.pos(0, 2), 3, 0).empty());
}

TEST_CASE("candidate right bounds") {
  Alphabet a;
  const auto s = build_string(
      a, "T", {{"a"}, {"a"}, {"a"}, {"a"}, {"a"}, {"a"}, {"a"}}, {5});
  CHECK(candidate_right_bound(s, 3, nullptr) == 5);
  CHECK(candidate_right_bound(s, 6, nullptr) == 7);

  // q > m: the filter never accepts.
  const auto data = worked_example();
  const auto index = IntersectionIndex::build(data);
  const auto tables = RidgeTables::build(data, index, 1);
  RidgeFilter filter(data, index, tables, 0, 4);
  for (int i = 1; i <= 12; ++i)
    CHECK(candidate_right_bound(data[0], i, &filter) == i - 1);
}

TEST_CASE("quorum right bound") {
  CHECK(quorum_right_bound({9, 7}, 3, 1) == 7);
  CHECK(quorum_right_bound({9, 7}, 2, 1) == 9);
  CHECK(quorum_right_bound({2, 3}, 2, 5) == 4);
  CHECK(quorum_right_bound({9}, 3, 1) == 0);
}

TEST_CASE("refinement never drops a reported right bound") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    RandomSpec spec;
    spec.max_n = 14;
    const auto data = random_instance(seed, spec);
    SearchParams params;
    params.delta = static_cast<int>(seed % 3);
    params.min_size = static_cast<int>(seed % 2);
    params.quorum = 2 + static_cast<int>(seed % (data.size() - 1));
    const auto index = IntersectionIndex::build(data);
    EnumerateOptions options;
    options.use_filter = false;
    PairEnumerator enumerator(data, index, nullptr, params, options);

    std::map<std::pair<std::size_t, int>, int> furthest;
    for (const auto& p : brute_force_pairs(data, params, true)) {
      auto& f = furthest[{p.left.string, p.left.i}];
      f = std::max(f, p.left.j);
    }
    for (const auto& [key, j] : furthest) {
      const auto& sx = data[key.first];
      INFO("seed " << seed << " x " << key.first << " i " << key.second);
      CHECK(enumerator.refine_right_bound(key.first, key.second,
                                          sx.contig_end(key.second)) >= j);
    }
  }
}

TEST_CASE("trans intervals on the worked example") {
  const auto data = worked_example();
  SearchParams params;
  params.delta = 1;
  params.quorum = 3;
  params.min_size = 6;
  const auto index = IntersectionIndex::build(data);
  EnumerateOptions options;
  options.use_filter = false;
  PairEnumerator enumerator(data, index, nullptr, params, options);
  for (std::size_t y : {std::size_t{1}, std::size_t{2}}) {
    const auto anchors = collect_anchors(data[0], index.pos(0, y), 1, 1);
    const auto found = enumerator.trans_intervals(0, 1, 8, y, anchors);
    const AnchoredInterval expected =
        y == 1 ? AnchoredInterval{1, 2, 7} : AnchoredInterval{2, 1, 8};
    CHECK(std::any_of(found.begin(), found.end(), [&](const AwciPair& p) {
      return p.right == expected;
    }));
    CHECK(std::is_sorted(found.begin(), found.end(),
                         [](const AwciPair& a, const AwciPair& b) {
                           return a.right < b.right;
                         }));
  }
  const auto disjoint = letters({{"a", "b"}, {"c", "d"}});
  const auto dindex = IntersectionIndex::build(disjoint);
  PairEnumerator none(disjoint, dindex, nullptr, SearchParams{}, options);
  const auto anchors = collect_anchors(disjoint[0], dindex.pos(0, 1), 1, 0);
  CHECK(anchors.empty());
  CHECK(none.trans_intervals(0, 1, 2, 1, anchors).empty());
}

TEST_CASE("enumerate_pairs examples") {
  SearchParams params;
  params.delta = 1;
  params.quorum = 3;
  params.min_size = 6;
  const auto fig = enumerate_pairs(worked_example(), params);
  CHECK(contains_pair(fig, {0, 1, 8}, {1, 2, 7}));
  CHECK(contains_pair(fig, {0, 1, 8}, {2, 1, 8}));
  CHECK(contains_pair(fig, {1, 2, 7}, {2, 1, 8}));
  CHECK(fig == brute_force_pairs(worked_example(), params, true));

  params = {};
  const auto twins = letters({{"a", "b", "c", "d"}, {"a", "b", "c", "d"}});
  CHECK(contains_pair(enumerate_pairs(twins, params), {0, 1, 4}, {1, 1, 4}));

  params.quorum = 3;
  CHECK(enumerate_pairs(twins, params).empty());
}

TEST_CASE("enumerator rejects inconsistent tables") {
  const auto data = worked_example();
  const auto index = IntersectionIndex::build(data);
  const auto tables = RidgeTables::build(data, index, 0);
  SearchParams params;
  params.delta = 1;
  CHECK_THROWS_AS(PairEnumerator(data, index, &tables, params, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PairEnumerator(data, index, nullptr, params, {}),
                  std::invalid_argument);
}

TEST_CASE("enumerator matches brute force on random instances") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const auto data = random_instance(seed);
    SearchParams params;
    params.delta = static_cast<int>(seed % 3);
    params.min_size = seed % 2 ? 1 : 3;
    for (bool grouping : {false, true}) {
      params.quorum = grouping ? 3 : 2;
      EnumerateOptions options;
      options.quorum_grouping = grouping;
      const auto fast = enumerate_pairs(data, params, options);
      const auto slow = brute_force_pairs(data, params, grouping);
      INFO("seed " << seed << " grouping " << grouping);
      CHECK(fast == slow);
      options.use_filter = false;
      options.refine = false;
      CHECK(enumerate_pairs(data, params, options) == slow);
    }
  }
}

TEST_CASE("enumeration order does not depend on the thread count") {
  PlantedSpec spec;
  spec.m = 4;
  spec.n = 120;
  spec.background_sharing = 0.6;
  spec.alphabet_size = 20;
  const auto data = generate_planted(spec).data;
  SearchParams params;
  params.delta = 1;
  params.quorum = 2;
  params.min_size = 3;
  EnumerateOptions options;
  const auto one = enumerate_pairs(data, params, options);
  CHECK(std::is_sorted(one.begin(), one.end(), canonical_less));
  for (int threads : {2, 3, 8}) {
    options.threads = threads;
    CHECK(enumerate_pairs(data, params, options) == one);
  }
}
