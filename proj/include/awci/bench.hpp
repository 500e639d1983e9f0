#pragma once

// Repeated-sampling benchmark: draw m genomes from a planted pool, time
// index construction, Ridge^t construction and the sweep separately.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "awci/generate.hpp"
#include "awci/model.hpp"

namespace awci {

struct BenchPoint {
  int m = 4;
  int delta = 0;
  int quorum = 2;
  int min_size = 10;
};

struct BenchConfig {
  PlantedSpec pool;  // pool.m genomes to sample from
  int repetitions = 10;
  int timing_runs = 3;  // per sample; the fastest ridge + sweep run is kept
  int threads = 1;
  bool use_filter = true;
  bool sets = false;  // also time graph building and clique enumeration
};

struct Spread {
  double median = 0;
  double min = 0;
  double max = 0;
};

struct BenchRow {
  BenchPoint point;
  int repetitions = 0;
  Spread index_seconds;
  Spread ridge_seconds;
  Spread sweep_seconds;
  Spread sets_seconds;
  /// Ridge^t construction plus sweep, the indel-dependent part.
  Spread runtime_seconds;
  Spread pairs;
  Spread sets;
  Spread right_bounds;  // candidate right bounds surviving the filter
  double mean_width = 0;      // over all ordered pairs and repetitions
  int max_width = 0;
  double max_width_ratio = 0;  // width / ((delta + 1) * ||S_y||)
  bool widths_within_bound = true;
};

/// The bacterial-like profile used by the trend checks.
PlantedSpec bacterial_profile(int n, std::uint64_t seed);

Spread spread_of(std::vector<double> values);

/// Sample r of point p uses genomes drawn with seed pool.seed + r, so rows
/// for different points see the same samples when m agrees.
std::vector<BenchRow> run_bench(const std::vector<BenchPoint>& grid,
                                const BenchConfig& config);

/// Sorted random subset of `m` strings (alphabet shared).
Dataset sample_strings(const Dataset& pool, int m, std::uint64_t seed);

void write_bench_tsv(std::ostream& out, const std::vector<BenchRow>& rows);
void write_bench_json(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace awci
