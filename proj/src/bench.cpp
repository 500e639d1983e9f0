#include "awci/bench.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <ostream>
#include <random>

#include "json.hpp"

#include "awci/assembler.hpp"
#include "awci/errors.hpp"
#include "awci/index.hpp"
#include "awci/macsi.hpp"
#include "awci/ridge_filter.hpp"

namespace awci {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

PlantedSpec bacterial_profile(int n, std::uint64_t seed) {
  PlantedSpec spec;
  spec.m = 16;
  spec.n = n;
  spec.alphabet_size = n / 2;
  spec.block_count = n / 40;
  spec.block_length = 12;
  spec.planted_delta = 1;
  spec.background_sharing = 0.5;
  spec.contig_breaks = 2;
  spec.seed = seed;
  return spec;
}

Spread spread_of(std::vector<double> values) {
  Spread s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  const auto n = values.size();
  s.min = values.front();
  s.max = values.back();
  s.median = n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2;
  return s;
}

Dataset sample_strings(const Dataset& pool, int m, std::uint64_t seed) {
  if (m < 1 || static_cast<std::size_t>(m) > pool.size())
    throw ValidationError("cannot sample " + std::to_string(m) +
                          " strings from " + std::to_string(pool.size()));
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(static_cast<std::size_t>(m));
  std::sort(order.begin(), order.end());
  Dataset out;
  out.alphabet = pool.alphabet;
  for (auto x : order) out.strings.push_back(pool[x]);
  return out;
}

std::vector<BenchRow> run_bench(const std::vector<BenchPoint>& grid,
                                const BenchConfig& config) {
  if (grid.empty()) throw ValidationError("empty benchmark grid");
  if (config.repetitions < 1 || config.timing_runs < 1)
    throw ValidationError("repetitions and timing runs must be positive");
  const auto pool = generate_planted(config.pool).data;
  std::vector<BenchRow> rows;
  for (const auto& point : grid) {
    SearchParams params;
    params.delta = point.delta;
    params.quorum = point.quorum;
    params.min_size = point.min_size;
    params.validate();
    if (point.quorum > point.m)
      throw ValidationError("quorum exceeds sampled genome count");

    BenchRow row;
    row.point = point;
    row.repetitions = config.repetitions;
    std::vector<double> index_t, ridge_t, sweep_t, sets_t, runtime_t, pairs,
        sets, bounds;
    double width_sum = 0;
    std::size_t width_count = 0;
    for (int r = 0; r < config.repetitions; ++r) {
      const auto data = sample_strings(
          pool, point.m, config.pool.seed + static_cast<std::uint64_t>(r));

      auto start = Clock::now();
      const auto index = IntersectionIndex::build(data, config.threads);
      index_t.push_back(seconds_since(start));

      std::optional<RidgeTables> tables;
      std::vector<AwciPair> found;
      EnumerationStats stats;
      double best_ridge = 0, best_sweep = 0;
      for (int run = 0; run < config.timing_runs; ++run) {
        start = Clock::now();
        tables.reset();
        if (config.use_filter)
          tables = RidgeTables::build(data, index, params.delta, config.threads);
        const double ridge = seconds_since(start);

        EnumerateOptions options;
        options.use_filter = config.use_filter;
        options.threads = config.threads;
        start = Clock::now();
        PairEnumerator enumerator(data, index, tables ? &*tables : nullptr,
                                  params, options);
        stats = {};
        found = enumerator.collect(&stats);
        const double sweep = seconds_since(start);
        if (run == 0 || ridge + sweep < best_ridge + best_sweep) {
          best_ridge = ridge;
          best_sweep = sweep;
        }
      }
      ridge_t.push_back(best_ridge);
      sweep_t.push_back(best_sweep);
      runtime_t.push_back(best_ridge + best_sweep);
      pairs.push_back(static_cast<double>(found.size()));
      bounds.push_back(static_cast<double>(stats.right_bounds));

      if (config.sets) {
        start = Clock::now();
        auto graph = build_graph(found, params.quorum);
        graph = prune_dominated_vertices(graph, data, index, params.quorum);
        AssembleOptions assemble;
        assemble.threads = config.threads;
        const auto result = maximal_closed_sets(graph, data, params, assemble);
        sets_t.push_back(seconds_since(start));
        sets.push_back(static_cast<double>(result.sets.size()));
      }

      if (tables) {
        for (const auto& w : tables->widths(data)) {
          const auto bound =
              static_cast<double>(params.delta + 1) * w.trans_cardinality;
          width_sum += w.width;
          ++width_count;
          row.max_width = std::max(row.max_width, w.width);
          row.max_width_ratio = std::max(row.max_width_ratio, w.width / bound);
          if (w.width > bound) row.widths_within_bound = false;
        }
      }
    }
    row.index_seconds = spread_of(index_t);
    row.ridge_seconds = spread_of(ridge_t);
    row.sweep_seconds = spread_of(sweep_t);
    row.sets_seconds = spread_of(sets_t);
    row.runtime_seconds = spread_of(runtime_t);
    row.pairs = spread_of(pairs);
    row.sets = spread_of(sets);
    row.right_bounds = spread_of(bounds);
    row.mean_width = width_count ? width_sum / static_cast<double>(width_count) : 0;
    rows.push_back(row);
  }
  return rows;
}

void write_bench_tsv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "m\tdelta\tquorum\tmin_size\treps"
         "\tindex_med\tridge_med\tsweep_med\tsweep_min\tsweep_max"
         "\truntime_med\truntime_min\truntime_max\tsets_time_med"
         "\tpairs_med\tsets_med\tright_bounds_med"
         "\tmean_width\tmax_width\tmax_width_ratio\twidths_ok\n";
  for (const auto& r : rows) {
    out << r.point.m << '\t' << r.point.delta << '\t' << r.point.quorum << '\t'
        << r.point.min_size << '\t' << r.repetitions << '\t'
        << r.index_seconds.median << '\t' << r.ridge_seconds.median << '\t'
        << r.sweep_seconds.median << '\t' << r.sweep_seconds.min << '\t'
        << r.sweep_seconds.max << '\t' << r.runtime_seconds.median << '\t'
        << r.runtime_seconds.min << '\t' << r.runtime_seconds.max << '\t'
        << r.sets_seconds.median << '\t' << r.pairs.median << '\t'
        << r.sets.median << '\t' << r.right_bounds.median << '\t'
        << r.mean_width << '\t' << r.max_width << '\t' << r.max_width_ratio
        << '\t' << (r.widths_within_bound ? "yes" : "no") << '\n';
  }
  if (!out) throw IoError("failed writing benchmark report");
}

void write_bench_json(std::ostream& out, const std::vector<BenchRow>& rows) {
  auto spread = [](const Spread& s) {
    return nlohmann::json{{"median", s.median}, {"min", s.min}, {"max", s.max}};
  };
  auto doc = nlohmann::json::array();
  for (const auto& r : rows) {
    doc.push_back({{"m", r.point.m},
                   {"delta", r.point.delta},
                   {"quorum", r.point.quorum},
                   {"min_size", r.point.min_size},
                   {"repetitions", r.repetitions},
                   {"index_seconds", spread(r.index_seconds)},
                   {"ridge_seconds", spread(r.ridge_seconds)},
                   {"sweep_seconds", spread(r.sweep_seconds)},
                   {"sets_seconds", spread(r.sets_seconds)},
                   {"runtime_seconds", spread(r.runtime_seconds)},
                   {"pairs", spread(r.pairs)},
                   {"sets", spread(r.sets)},
                   {"right_bounds", spread(r.right_bounds)},
                   {"mean_width", r.mean_width},
                   {"max_width", r.max_width},
                   {"max_width_ratio", r.max_width_ratio},
                   {"widths_within_bound", r.widths_within_bound}});
  }
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("failed writing benchmark report");
}

}  // namespace awci
