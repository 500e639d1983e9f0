// Acceptance checks: prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "awci/assembler.hpp"
#include "awci/bench.hpp"
#include "awci/generate.hpp"
#include "awci/index.hpp"
#include "awci/io.hpp"
#include "awci/macsi.hpp"
#include "awci/oracle.hpp"
#include "awci/verify.hpp"
#include "fixtures.hpp"

using namespace awci;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string pairs_text(const Dataset& data, const std::vector<AwciPair>& pairs) {
  std::ostringstream out;
  write_pairs(out, data, pairs);
  return out.str();
}

std::string sets_text(const Dataset& data, const std::vector<AwciSet>& sets,
                      const SearchParams& params) {
  std::ostringstream out;
  write_sets(out, data, sets, params);
  return out.str();
}

// Criterion 2 instances: m <= 4, n <= 12, |alphabet| <= 8.
SearchParams pair_params(std::uint64_t seed) {
  SearchParams params;
  params.delta = static_cast<int>(seed % 3);
  params.min_size = (seed / 3) % 2 ? 3 : 1;
  params.quorum = 2;
  return params;
}

std::string fast_pairs(const Dataset& data, const SearchParams& params,
                       bool filter, int threads) {
  EnumerateOptions options;
  options.quorum_grouping = false;
  options.use_filter = filter;
  options.threads = threads;
  return pairs_text(data, enumerate_pairs(data, params, options));
}

// Criterion 3 instances: random instances plus the non-hereditary witness.
struct SetCase {
  Dataset data;
  SearchParams params;
};

std::vector<SetCase> set_cases() {
  std::vector<SetCase> cases;
  for (std::uint64_t seed = 1; seed < 200; ++seed) {
    auto data = random_instance(seed, verify_spec());
    const auto params = verify_params(seed, data);
    cases.push_back({std::move(data), params});
  }
  SearchParams witness;
  witness.quorum = 3;
  witness.min_size = 1;
  cases.push_back({testing::letters({{"b", "a"}, {"ab"}, {"a"}}), witness});
  return cases;
}

std::string fast_sets(const SetCase& c, bool filter, bool prune, int threads) {
  PipelineOptions options;
  options.use_filter = filter;
  options.prune = prune;
  options.threads = threads;
  return sets_text(c.data, find_maximal_closed_sets(c.data, c.params, options).sets,
                   c.params);
}

// Criterion 6 instances.
struct PlantedCase {
  PlantedDataset planted;
  SearchParams params;
};

PlantedCase planted_case(std::uint64_t seed) {
  PlantedSpec spec;
  spec.m = seed % 2 ? 3 : 5;
  spec.n = 200;
  spec.block_count = 3;
  spec.planted_delta = static_cast<int>(seed % 3);
  spec.seed = seed;
  SearchParams params;
  params.delta = 2;
  params.quorum = spec.m;
  params.min_size = 5;
  return {generate_planted(spec), params};
}

SearchParams example_params() {
  SearchParams params;
  params.delta = 1;
  params.quorum = 3;
  params.min_size = 6;
  return params;
}

Outcome example_golden() {
  const auto start = Clock::now();
  const auto data = testing::worked_example();
  const auto sets = find_maximal_closed_sets(data, example_params()).sets;
  const double elapsed = seconds_since(start);
  const std::vector<AnchoredInterval> expected{{0, 1, 8}, {1, 2, 7}, {2, 1, 8}};
  const auto it = std::find_if(sets.begin(), sets.end(), [&](const AwciSet& s) {
    return s.members == expected;
  });
  Outcome o;
  o.pass = it != sets.end() && it->closed &&
           it->pair_indels == std::vector<int>{1, 1, 1} && elapsed < 1.0;
  o.detail = std::to_string(sets.size()) + " sets, " + std::to_string(elapsed) + " s";
  return o;
}

Outcome pair_oracle() {
  const auto start = Clock::now();
  std::size_t mismatches = 0, pairs = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const auto data = random_instance(seed);
    const auto params = pair_params(seed);
    const auto slow = brute_force_pairs(data, params, false);
    pairs += slow.size();
    mismatches += fast_pairs(data, params, true, 1) != pairs_text(data, slow);
  }
  const double elapsed = seconds_since(start);
  return {mismatches == 0 && elapsed < 300,
          std::to_string(mismatches) + " mismatches over 500 instances, " +
              std::to_string(pairs) + " pairs, " + std::to_string(elapsed) + " s"};
}

Outcome set_oracle(const std::vector<SetCase>& cases) {
  std::size_t mismatches = 0, sets = 0;
  for (const auto& c : cases) {
    const auto slow = brute_force_maximal_closed_sets(c.data, c.params);
    sets += slow.size();
    mismatches += fast_sets(c, true, true, 1) != sets_text(c.data, slow, c.params);
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches over " +
                               std::to_string(cases.size()) + " instances, " +
                               std::to_string(sets) + " sets"};
}

Outcome switches(const std::vector<SetCase>& cases) {
  std::size_t mismatches = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const auto data = random_instance(seed);
    const auto params = pair_params(seed);
    mismatches += fast_pairs(data, params, true, 1) != fast_pairs(data, params, false, 1);
  }
  for (const auto& c : cases) {
    const auto both = fast_sets(c, true, true, 1);
    mismatches += both != fast_sets(c, false, true, 1);
    mismatches += both != fast_sets(c, true, false, 1);
    mismatches += both != fast_sets(c, false, false, 1);
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches"};
}

Outcome sweep_exactness() {
  std::size_t mismatches = 0, checks = 0;
  SweepState sweep;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto data = random_instance(seed);
    const auto index = IntersectionIndex::build(data);
    for (std::size_t x = 0; x < data.size(); ++x)
      for (std::size_t y = 0; y < data.size(); ++y) {
        if (x == y) continue;
        for (int i = 1; i <= data[x].length(); ++i)
          for (int j = i; j <= data[x].contig_end(i); ++j) {
            sweep.retarget(index.pos(y, x), i, j);
            for (int k = 1; k <= data[y].length(); ++k) {
              sweep.start(k);
              for (int l = k; l <= data[y].contig_end(k); ++l) {
                sweep.extend();
                for (int d = 0; d <= 2; ++d) {
                  ++checks;
                  mismatches += sweep.accepts(d) !=
                                judge_pair(data, {x, i, j}, {y, k, l}, d).is_awci;
                }
              }
            }
          }
      }
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches over " +
                               std::to_string(checks) + " checks"};
}

Outcome planted_recovery() {
  const auto start = Clock::now();
  std::size_t found = 0, total = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto c = planted_case(seed);
    const auto sets = find_maximal_closed_sets(c.planted.data, c.params).sets;
    for (const auto& members : c.planted.truth) {
      ++total;
      found += std::any_of(sets.begin(), sets.end(), [&](const AwciSet& s) {
        return s.closed && s.members == members;
      });
    }
  }
  const double elapsed = seconds_since(start);
  return {found == total && elapsed < 120,
          std::to_string(found) + "/" + std::to_string(total) + " recovered, " +
              std::to_string(elapsed) + " s"};
}

struct Trends {
  Outcome runtime;
  Outcome widths;
};

Trends trends() {
  const auto start = Clock::now();
  BenchConfig config;
  config.pool = bacterial_profile(500, 1);
  config.repetitions = 10;
  std::vector<BenchPoint> grid;
  for (int m : {4, 8, 16})
    for (int delta : {0, 2}) grid.push_back({m, delta, m, 10});
  for (int q : {2, 4}) grid.push_back({8, 0, q, 10});
  const auto rows = run_bench(grid, config);

  auto row = [&](int m, int delta, int q) -> const BenchRow& {
    return *std::find_if(rows.begin(), rows.end(), [&](const BenchRow& r) {
      return r.point.m == m && r.point.delta == delta && r.point.quorum == q;
    });
  };
  Trends t;
  std::ostringstream runtime, widths;
  bool delta_trend = true, width_trend = true, bound = true;
  for (int m : {4, 8, 16}) {
    const auto& lo = row(m, 0, m);
    const auto& hi = row(m, 2, m);
    delta_trend &= hi.runtime_seconds.median >= lo.runtime_seconds.median;
    width_trend &= lo.max_width < hi.max_width;
    runtime << "m=" << m << " " << lo.runtime_seconds.median << "<="
            << hi.runtime_seconds.median << " s; ";
    widths << "m=" << m << " " << lo.max_width << "<" << hi.max_width << "; ";
  }
  for (const auto& r : rows) bound &= r.widths_within_bound;
  double fastest = row(8, 0, 2).runtime_seconds.median, slowest = fastest;
  for (int q : {4, 8}) {
    fastest = std::min(fastest, row(8, 0, q).runtime_seconds.median);
    slowest = std::max(slowest, row(8, 0, q).runtime_seconds.median);
  }
  const double quorum_factor = slowest / fastest;
  const double delta_factor =
      row(8, 2, 8).runtime_seconds.median / row(8, 0, 8).runtime_seconds.median;
  const double elapsed = seconds_since(start);
  runtime << "quorum factor " << quorum_factor << " < delta factor "
          << delta_factor << "; " << elapsed << " s";
  widths << (bound ? "all within (delta+1)*||S_y||" : "bound violated");
  t.runtime = {delta_trend && quorum_factor < delta_factor && elapsed < 1800,
               runtime.str()};
  t.widths = {width_trend && bound, widths.str()};
  return t;
}

Outcome determinism(const std::vector<SetCase>& cases) {
  std::size_t mismatches = 0;
  auto same = [&](const std::function<std::string(int)>& run) {
    const auto once = run(1);
    mismatches += once != run(1);
    mismatches += once != run(4);
  };
  const auto fig = testing::worked_example();
  same([&](int threads) {
    PipelineOptions options;
    options.threads = threads;
    return sets_text(fig, find_maximal_closed_sets(fig, example_params(), options).sets,
                     example_params());
  });
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const auto data = random_instance(seed);
    same([&](int threads) { return fast_pairs(data, pair_params(seed), true, threads); });
  }
  for (const auto& c : cases)
    same([&](int threads) { return fast_sets(c, true, true, threads); });
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto c = planted_case(seed);
    same([&](int threads) {
      PipelineOptions options;
      options.threads = threads;
      return sets_text(c.planted.data,
                       find_maximal_closed_sets(c.planted.data, c.params, options).sets,
                       c.params);
    });
  }
  return {mismatches == 0, std::to_string(mismatches) + " differing outputs"};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int n, const char* name, const Outcome& o) {
    std::printf("criterion %d %s: %s (%s)\n", n, name, o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  };
  const auto cases = set_cases();
  report(1, "worked example", example_golden());
  report(2, "pair oracle equivalence", pair_oracle());
  report(3, "set oracle equivalence", set_oracle(cases));
  report(4, "filter and pruning switches", switches(cases));
  report(5, "incremental test exactness", sweep_exactness());
  report(6, "planted recovery", planted_recovery());
  const auto t = trends();
  report(7, "runtime trends", t.runtime);
  report(8, "filter widths", t.widths);
  report(9, "determinism", determinism(cases));
  return failures == 0 ? 0 : 1;
}
