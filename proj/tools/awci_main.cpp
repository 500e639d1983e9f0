// Command-line entry point: ingest, pairs, sets, gen, bench, verify.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "awci/assembler.hpp"
#include "awci/bench.hpp"
#include "awci/errors.hpp"
#include "awci/generate.hpp"
#include "awci/index.hpp"
#include "awci/io.hpp"
#include "awci/macsi.hpp"
#include "awci/oracle.hpp"
#include "awci/ridge_filter.hpp"
#include "awci/verify.hpp"

namespace {

using namespace awci;

constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitResource = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchFlags {
  std::string input;
  std::string output = "-";
  std::string format = "native";
  std::string cache;
  SearchParams params;
  int threads = 1;
  bool no_filter = false;
  bool no_prune = false;
  bool all_pairs = false;
  int descent_budget = 2;
  std::uint64_t max_cliques = 20'000'000;
};

void add_search_flags(CLI::App* cmd, SearchFlags& f) {
  cmd->add_option("input", f.input, "IST dataset")->required()->check(CLI::ExistingFile);
  cmd->add_option("-o,--output", f.output, "output file, - for stdout");
  cmd->add_option("--delta", f.params.delta, "indel threshold")->check(CLI::NonNegativeNumber);
  cmd->add_option("--quorum", f.params.quorum, "minimum number of strings")->check(CLI::Range(2, 1 << 20));
  cmd->add_option("--min-size", f.params.min_size, "minimum interval length")->check(CLI::NonNegativeNumber);
  cmd->add_option("--refine-iters", f.params.refine_iters, "right-bound refinement rounds")->check(CLI::Range(1, 1000));
  cmd->add_option("--threads", f.threads, "worker threads")->check(CLI::Range(1, 1024));
  cmd->add_flag("--no-filter", f.no_filter, "disable the bit-vector filter");
  cmd->add_option("--format", f.format, "native or json")->check(CLI::IsMember({"native", "json"}));
  cmd->add_option("--cache", f.cache, "binary index cache (read if valid, else written)");
}

template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path);
  fn(out);
}

Dataset load_dataset(const SearchFlags& f) {
  auto data = read_ist(f.input);
  if (static_cast<std::size_t>(f.params.quorum) > data.size())
    throw UsageError("quorum " + std::to_string(f.params.quorum) +
                     " exceeds the " + std::to_string(data.size()) +
                     " strings of " + f.input);
  return data;
}

IntersectionIndex load_index(const SearchFlags& f, const Dataset& data) {
  if (!f.cache.empty()) {
    if (auto cached = IntersectionIndex::load_cache(f.cache, data))
      return std::move(*cached);
    auto index = IntersectionIndex::build(data, f.threads);
    index.save_cache(f.cache, data);
    return index;
  }
  return IntersectionIndex::build(data, f.threads);
}

std::vector<AwciPair> find_pairs(const SearchFlags& f, const Dataset& data,
                                 const IntersectionIndex& index) {
  std::optional<RidgeTables> tables;
  if (!f.no_filter)
    tables = RidgeTables::build(data, index, f.params.delta, f.threads);
  EnumerateOptions options;
  options.use_filter = !f.no_filter;
  options.quorum_grouping = !f.all_pairs;
  options.threads = f.threads;
  PairEnumerator enumerator(data, index, tables ? &*tables : nullptr, f.params,
                            options);
  return enumerator.collect();
}

nlohmann::json interval_json(const Dataset& data, const AnchoredInterval& v) {
  return {{"string", data[v.string].id()}, {"i", v.i}, {"j", v.j}};
}

int run_pairs(const SearchFlags& f) {
  f.params.validate();
  const auto data = load_dataset(f);
  const auto index = load_index(f, data);
  const auto pairs = find_pairs(f, data, index);
  with_output(f.output, [&](std::ostream& out) {
    if (f.format == "native") {
      write_pairs(out, data, pairs);
      return;
    }
    auto doc = nlohmann::json::array();
    for (const auto& p : pairs) {
      nlohmann::json common = nlohmann::json::array();
      for (CharId c : p.common_set) common.push_back(data.alphabet.label(c));
      doc.push_back({{"a", interval_json(data, p.left)},
                     {"b", interval_json(data, p.right)},
                     {"indels", p.indel_total},
                     {"size_a", p.size_left},
                     {"size_b", p.size_right},
                     {"common_set", common}});
    }
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("failed writing output");
  });
  return 0;
}

int run_sets(const SearchFlags& f) {
  f.params.validate();
  const auto data = load_dataset(f);
  const auto index = load_index(f, data);
  const auto pairs = find_pairs(f, data, index);
  auto graph = build_graph(pairs, f.params.quorum);
  if (!f.no_prune)
    graph = prune_dominated_vertices(graph, data, index, f.params.quorum);
  AssembleOptions assemble;
  assemble.descent_budget = f.descent_budget;
  assemble.max_cliques = f.max_cliques;
  assemble.threads = f.threads;
  const auto result = maximal_closed_sets(graph, data, f.params, assemble);
  if (result.truncated_descents > 0)
    std::cerr << "warning: " << result.truncated_descents
              << " non-closed cliques have sub-cliques beyond the descent "
                 "budget\n";
  with_output(f.output, [&](std::ostream& out) {
    if (f.format == "native") {
      write_sets(out, data, result.sets, f.params);
      return;
    }
    auto doc = nlohmann::json::array();
    for (const auto& s : result.sets) {
      nlohmann::json members = nlohmann::json::array();
      for (const auto& m : s.members) members.push_back(interval_json(data, m));
      doc.push_back({{"closed", s.closed},
                     {"delta", f.params.delta},
                     {"quorum", f.params.quorum},
                     {"members", members},
                     {"pair_indels", s.pair_indels}});
    }
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("failed writing output");
  });
  return 0;
}

struct IngestFlags {
  std::string homology;
  std::vector<std::string> genes;
  double threshold = 0;
  std::string output = "-";
};

int run_ingest(const IngestFlags& f) {
  HomologyTable table;
  {
    std::ifstream in(f.homology);
    if (!in) throw IoError("cannot open " + f.homology);
    table.records = parse_homology(in);
  }
  for (const auto& path : f.genes) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    table.genomes.push_back(
        parse_gene_order(in, std::filesystem::path(path).stem().string()));
  }
  const auto data = homology_to_strings(table, f.threshold);
  with_output(f.output, [&](std::ostream& out) { write_ist(out, data); });
  return 0;
}

struct GenFlags {
  PlantedSpec spec;
  std::string output = "-";
  std::string truth;
};

int run_gen(const GenFlags& f) {
  const auto planted = generate_planted(f.spec);
  with_output(f.output, [&](std::ostream& out) { write_ist(out, planted.data); });
  if (!f.truth.empty()) {
    std::vector<AwciSet> sets;
    for (const auto& members : planted.truth)
      sets.push_back(describe_set(planted.data, members, f.spec.planted_delta));
    std::sort(sets.begin(), sets.end());
    SearchParams params;
    params.delta = f.spec.planted_delta;
    params.quorum = f.spec.m;
    with_output(f.truth, [&](std::ostream& out) {
      write_sets(out, planted.data, sets, params);
    });
  }
  return 0;
}

struct BenchFlags {
  std::vector<int> m{4, 8, 16};
  std::vector<int> delta{0, 2};
  std::vector<int> quorum{0};
  int n = 500;
  int min_size = 10;
  int pool = 16;
  int reps = 10;
  int timing_runs = 3;
  int threads = 1;
  std::uint64_t seed = 1;
  bool sets = false;
  bool no_filter = false;
  std::string format = "tsv";
  std::string output = "-";
};

int run_bench_command(const BenchFlags& f) {
  BenchConfig config;
  config.pool = bacterial_profile(f.n, f.seed);
  config.pool.m = std::max(f.pool, *std::max_element(f.m.begin(), f.m.end()));
  config.repetitions = f.reps;
  config.timing_runs = f.timing_runs;
  config.threads = f.threads;
  config.sets = f.sets;
  config.use_filter = !f.no_filter;
  std::vector<BenchPoint> grid;
  for (int m : f.m)
    for (int d : f.delta)
      for (int q : f.quorum) {
        const int quorum = q == 0 ? m : q;
        if (quorum > m) continue;
        grid.push_back({m, d, quorum, f.min_size});
      }
  if (grid.empty()) throw UsageError("benchmark grid is empty");
  const auto rows = run_bench(grid, config);
  with_output(f.output, [&](std::ostream& out) {
    if (f.format == "json")
      write_bench_json(out, rows);
    else
      write_bench_tsv(out, rows);
  });
  return 0;
}

struct VerifyFlags {
  int seeds = 100;
  std::uint64_t first_seed = 1;
  int threads = 1;
};

int run_verify(const VerifyFlags& f) {
  int matches = 0;
  for (int k = 0; k < f.seeds; ++k) {
    const auto seed = f.first_seed + static_cast<std::uint64_t>(k);
    const auto outcome = verify_instance(seed, f.threads);
    if (outcome.ok)
      ++matches;
    else
      std::cerr << "seed " << seed << ": " << outcome.detail << '\n';
  }
  std::cout << matches << "/" << f.seeds << " oracle matches\n";
  return matches == f.seeds ? 0 : kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate weak common intervals across indeterminate strings"};
  app.require_subcommand(1);

  IngestFlags ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "homology table to IST");
  ingest_cmd->add_option("--homology", ingest.homology, "tab-separated homology records")
      ->required()->check(CLI::ExistingFile);
  ingest_cmd->add_option("--genes", ingest.genes, "gene order files, one per genome")
      ->required()->check(CLI::ExistingFile);
  ingest_cmd->add_option("--threshold", ingest.threshold, "minimum score");
  ingest_cmd->add_option("-o,--output", ingest.output, "output file, - for stdout");

  SearchFlags pairs;
  auto* pairs_cmd = app.add_subcommand("pairs", "enumerate AWCI pairs");
  add_search_flags(pairs_cmd, pairs);
  pairs_cmd->add_flag("--all-pairs", pairs.all_pairs,
                      "report every admissible pair, ignoring the quorum");

  SearchFlags sets;
  auto* sets_cmd = app.add_subcommand("sets", "maximal closed AWCI sets");
  add_search_flags(sets_cmd, sets);
  sets_cmd->add_flag("--no-prune", sets.no_prune, "keep dominated vertices");
  sets_cmd->add_option("--descent-budget", sets.descent_budget,
                       "members dropped when searching non-closed cliques")
      ->check(CLI::NonNegativeNumber);
  sets_cmd->add_option("--max-cliques", sets.max_cliques,
                       "maximal cliques per component before giving up");

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "planted synthetic dataset");
  gen_cmd->add_option("--m", gen.spec.m, "strings");
  gen_cmd->add_option("--n", gen.spec.n, "positions per string");
  gen_cmd->add_option("--alphabet", gen.spec.alphabet_size, "background pool size");
  gen_cmd->add_option("--blocks", gen.spec.block_count, "planted blocks");
  gen_cmd->add_option("--block-length", gen.spec.block_length, "positions per block");
  gen_cmd->add_option("--planted-delta", gen.spec.planted_delta, "insertions per block");
  gen_cmd->add_option("--sharing", gen.spec.background_sharing, "background sharing rate");
  gen_cmd->add_option("--breaks", gen.spec.contig_breaks, "contig breaks per string");
  gen_cmd->add_option("--seed", gen.spec.seed, "random seed");
  gen_cmd->add_option("-o,--output", gen.output, "IST output, - for stdout");
  gen_cmd->add_option("--truth", gen.truth, "ground-truth sets output");

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "timing and width measurements");
  bench_cmd->add_option("--m", bench.m, "sampled genome counts");
  bench_cmd->add_option("--delta", bench.delta, "indel thresholds");
  bench_cmd->add_option("--quorum", bench.quorum, "quorums, 0 for q = m");
  bench_cmd->add_option("--n", bench.n, "positions per genome");
  bench_cmd->add_option("--min-size", bench.min_size, "minimum interval length");
  bench_cmd->add_option("--pool", bench.pool, "genomes in the sampling pool");
  bench_cmd->add_option("--reps", bench.reps, "samples per grid point")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--timing-runs", bench.timing_runs, "timed runs per sample, fastest kept")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--threads", bench.threads, "worker threads")->check(CLI::Range(1, 1024));
  bench_cmd->add_option("--seed", bench.seed, "random seed");
  bench_cmd->add_flag("--sets", bench.sets, "also time set assembly");
  bench_cmd->add_flag("--no-filter", bench.no_filter, "disable the bit-vector filter");
  bench_cmd->add_option("--format", bench.format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));
  bench_cmd->add_option("-o,--output", bench.output, "output file, - for stdout");

  VerifyFlags verify;
  auto* verify_cmd = app.add_subcommand("verify", "differential checks against the oracle");
  verify_cmd->add_option("--seeds", verify.seeds, "number of random instances")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify.first_seed, "first seed");
  verify_cmd->add_option("--threads", verify.threads, "worker threads")->check(CLI::Range(1, 1024));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*ingest_cmd) return run_ingest(ingest);
    if (*pairs_cmd) return run_pairs(pairs);
    if (*sets_cmd) return run_sets(sets);
    if (*gen_cmd) return run_gen(gen);
    if (*bench_cmd) return run_bench_command(bench);
    if (*verify_cmd) return run_verify(verify);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitUsage;
}
