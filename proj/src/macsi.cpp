#include "awci/macsi.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>

#include "awci/parallel.hpp"

namespace awci {

void SweepState::retarget(const PosTable& pos_yx, int i, int j) {
  if (i > j) throw std::invalid_argument("SweepState: empty reference interval");
  pos_ = &pos_yx;
  i_ = i;
  j_ = j;
  k_ = 0;
  l_ = -1;
  hits_ = 0;
  trans_indels_ = 0;
  last_is_indel_ = false;
  const auto width = static_cast<std::size_t>(j - i + 1);
  if (mark_.size() < width) {
    mark_.assign(width, 0);
    epoch_ = 0;
  }
  ++epoch_;
}

void SweepState::start(int k) {
  k_ = k;
  l_ = k - 1;
  hits_ = 0;
  trans_indels_ = 0;
  last_is_indel_ = false;
  if (++epoch_ == 0) {
    std::fill(mark_.begin(), mark_.end(), 0);
    epoch_ = 1;
  }
}

bool SweepState::is_trans_indel(int p) const {
  auto row = pos_->row(p);
  auto it = std::lower_bound(row.begin(), row.end(), i_);
  return it == row.end() || *it > j_;
}

void SweepState::extend() {
  ++l_;
  auto row = pos_->row(l_);
  auto it = std::lower_bound(row.begin(), row.end(), i_);
  last_is_indel_ = it == row.end() || *it > j_;
  if (last_is_indel_) {
    ++trans_indels_;
    return;
  }
  for (; it != row.end() && *it <= j_; ++it) {
    auto& m = mark_[static_cast<std::size_t>(*it - i_)];
    if (m != epoch_) {
      m = epoch_;
      ++hits_;
    }
  }
}

std::vector<int> collect_anchors(const IndeterminateString& sx,
                                 const PosTable& pos_xy, int i, int delta) {
  const int last = std::min(i + delta, sx.contig_end(i));
  std::vector<int> anchors;
  for (int p = i; p <= last; ++p) {
    auto row = pos_xy.row(p);
    anchors.insert(anchors.end(), row.begin(), row.end());
  }
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  return anchors;
}

int candidate_right_bound(const IndeterminateString& sx, int i,
                          RidgeFilter* filter) {
  const int end = sx.contig_end(i);
  if (filter == nullptr) return end;
  filter->reset(i);
  int last = i - 1;
  for (int j = i; j <= end && filter->accepts(j); ++j) last = j;
  return last;
}

int quorum_right_bound(std::vector<int> best_per_string, int quorum, int i) {
  const auto needed = static_cast<std::size_t>(std::max(quorum - 1, 1));
  if (best_per_string.size() < needed) return i - 1;
  std::nth_element(best_per_string.begin(),
                   best_per_string.begin() + static_cast<std::ptrdiff_t>(needed - 1),
                   best_per_string.end(), std::greater<>());
  return std::max(best_per_string[needed - 1], i - 1);
}

// Scratch state owned by one thread.
class EnumerationWorker {
 public:
  explicit EnumerationWorker(const PairEnumerator& e)
      : e_(e),
        filters_(e.data_.size()),
        in_reference_(e.data_.alphabet.size(), 0),
        in_common_(e.data_.alphabet.size(), 0) {}

  void process(std::size_t x, int i, std::vector<AwciPair>& out,
               EnumerationStats& stats);

  void trans_intervals(std::size_t x, int i, int j, std::size_t y,
                       std::span<const int> anchors, bool existence_only,
                       std::vector<AwciPair>& out);

  int refine(std::size_t x, int i, int last,
             const std::vector<std::vector<int>>& anchors,
             std::span<const std::size_t> trans);

  void load_reference(std::size_t x, int i, int j);

 private:
  RidgeFilter* filter_for(std::size_t x) {
    if (!e_.options_.use_filter || e_.tables_ == nullptr) return nullptr;
    if (!filters_[x]) {
      const int quorum = e_.options_.quorum_grouping ? e_.params_.quorum : 2;
      filters_[x] = std::make_unique<RidgeFilter>(e_.data_, e_.index_,
                                                  *e_.tables_, x, quorum);
    }
    return filters_[x].get();
  }

  const PairEnumerator& e_;
  std::vector<std::unique_ptr<RidgeFilter>> filters_;
  SweepState sweep_;
  std::vector<std::uint32_t> in_reference_;
  std::uint32_t reference_epoch_ = 0;
  int reference_last_ = 0;
  std::vector<std::uint32_t> in_common_;
  std::uint32_t common_epoch_ = 0;
  std::vector<CharId> common_;
  std::vector<std::uint32_t> neighbourhood_mark_;
  std::uint32_t neighbourhood_epoch_ = 0;
  std::vector<std::vector<AwciPair>> per_string_;
};

void EnumerationWorker::load_reference(std::size_t x, int i, int j) {
  // C(S_x[i, j]) as stamps, extended incrementally while j grows.
  const auto& sx = e_.data_[x];
  if (j == i) {
    if (++reference_epoch_ == 0) {
      std::fill(in_reference_.begin(), in_reference_.end(), 0);
      reference_epoch_ = 1;
    }
    reference_last_ = i - 1;
  }
  for (int p = reference_last_ + 1; p <= j; ++p)
    for (CharId c : sx.at(p)) in_reference_[c] = reference_epoch_;
  reference_last_ = j;
}

void EnumerationWorker::trans_intervals(std::size_t x, int i, int j,
                                        std::size_t y,
                                        std::span<const int> anchors,
                                        bool existence_only,
                                        std::vector<AwciPair>& out) {
  const auto& params = e_.params_;
  const int delta = params.delta;
  if (j - i + 1 < params.min_size) return;
  const auto& sy = e_.data_[y];
  sweep_.retarget(e_.index_.pos(y, x), i, j);
  const auto first_out = out.size();

  int previous = 0;
  for (int p : anchors) {
    const int contig_start = sy.contig_start(p);
    const int contig_end = sy.contig_end(p);
    int left_indels = 0;
    for (int k = p; k > previous && k >= contig_start; --k) {
      if (sweep_.is_trans_indel(k)) {
        if (++left_indels > delta) break;
        continue;
      }
      sweep_.start(k);
      if (++common_epoch_ == 0) {
        std::fill(in_common_.begin(), in_common_.end(), 0);
        common_epoch_ = 1;
      }
      common_.clear();
      for (int l = k; l <= contig_end; ++l) {
        sweep_.extend();
        if (sweep_.trans_indels() > delta) break;
        if (!sweep_.last_is_indel()) {
          for (CharId c : sy.at(l)) {
            if (in_reference_[c] == reference_epoch_ &&
                in_common_[c] != common_epoch_) {
              in_common_[c] = common_epoch_;
              common_.push_back(c);
            }
          }
        }
        if (l < p || l - k + 1 < params.min_size) continue;
        if (sweep_.last_is_indel() || !sweep_.accepts(delta) ||
            !sweep_.reference_endpoints_hit())
          continue;

        AwciPair pair;
        pair.left = {x, i, j};
        pair.right = {y, k, l};
        pair.indel_total = sweep_.reference_indels() + sweep_.trans_indels();
        pair.size_left = sweep_.hits();
        pair.size_right = (l - k + 1) - sweep_.trans_indels();
        if (existence_only) {
          out.push_back(std::move(pair));
          return;
        }
        pair.common_set = common_;
        std::sort(pair.common_set.begin(), pair.common_set.end());
        out.push_back(std::move(pair));
      }
    }
    previous = p;
  }
  std::sort(out.begin() + static_cast<std::ptrdiff_t>(first_out), out.end(),
            [](const AwciPair& a, const AwciPair& b) {
              return a.right < b.right;
            });
}

int EnumerationWorker::refine(std::size_t x, int i, int last,
                              const std::vector<std::vector<int>>& anchors,
                              std::span<const std::size_t> trans) {
  const int delta = e_.params_.delta;
  const int quorum = e_.options_.quorum_grouping ? e_.params_.quorum : 2;

  for (int round = 0; round < e_.params_.refine_iters && last >= i; ++round) {
    const auto width = static_cast<std::size_t>(last - i + 1);
    if (neighbourhood_mark_.size() < width) {
      neighbourhood_mark_.assign(width, 0);
      neighbourhood_epoch_ = 0;
    }
    std::vector<int> best;
    best.reserve(trans.size());
    for (std::size_t y : trans) {
      const auto& sy = e_.data_[y];
      const auto& rc = e_.index_.ridge_c(y, x);
      const auto& counts = rc.counts();
      const auto& pos_yx = e_.index_.pos(y, x);
      int best_y = i - 1;
      int previous_lo = -1;
      int previous_hi = -1;
      for (int p : anchors[y]) {
        // Widest neighbourhood of p with at most delta trivial indels on
        // either side; every admissible partner around p lies inside it.
        const int cs = sy.contig_start(p);
        const int ce = sy.contig_end(p);
        const int floor_value = counts[p] - delta;
        auto lo_it = std::lower_bound(counts.begin() + (cs - 1),
                                      counts.begin() + p, floor_value);
        const int lo = static_cast<int>(lo_it - counts.begin()) + 1;
        const int ceil_value = counts[p - 1] + delta;
        auto hi_it = std::upper_bound(counts.begin() + p,
                                      counts.begin() + ce + 1, ceil_value);
        const int hi = static_cast<int>(hi_it - counts.begin()) - 1;
        if (lo == previous_lo && hi == previous_hi) continue;
        previous_lo = lo;
        previous_hi = hi;

        if (++neighbourhood_epoch_ == 0) {
          std::fill(neighbourhood_mark_.begin(), neighbourhood_mark_.end(), 0);
          neighbourhood_epoch_ = 1;
        }
        for (int q = lo; q <= hi; ++q) {
          auto row = pos_yx.row(q);
          for (auto it = std::lower_bound(row.begin(), row.end(), i);
               it != row.end() && *it <= last; ++it)
            neighbourhood_mark_[static_cast<std::size_t>(*it - i)] =
                neighbourhood_epoch_;
        }
        if (neighbourhood_mark_[0] != neighbourhood_epoch_) continue;
        int misses = 0;
        for (int r = i; r <= last; ++r) {
          if (neighbourhood_mark_[static_cast<std::size_t>(r - i)] ==
              neighbourhood_epoch_) {
            best_y = std::max(best_y, r);
          } else if (++misses > delta) {
            break;
          }
        }
        if (best_y == last) break;
      }
      best.push_back(best_y);
    }
    const int refined = std::min(last, quorum_right_bound(best, quorum, i));
    if (refined == last) break;
    last = refined;
  }
  return last;
}

void EnumerationWorker::process(std::size_t x, int i,
                                std::vector<AwciPair>& out,
                                EnumerationStats& stats) {
  const auto& data = e_.data_;
  const auto& params = e_.params_;
  const auto& options = e_.options_;
  const auto& sx = data[x];
  const std::size_t m = data.size();
  ++stats.left_bounds;

  auto* filter = filter_for(x);
  const auto calls_before = filter ? filter->calls() : 0;
  int last = candidate_right_bound(sx, i, filter);
  if (filter) stats.filter_calls += filter->calls() - calls_before;
  if (last < i) return;

  std::vector<std::size_t> trans;
  for (std::size_t y = 0; y < m; ++y)
    if (y != x && (options.quorum_grouping || y > x)) trans.push_back(y);

  std::vector<std::vector<int>> anchors(m);
  for (std::size_t y : trans)
    anchors[y] = collect_anchors(sx, e_.index_.pos(x, y), i, params.delta);

  if (options.refine) last = refine(x, i, last, anchors, trans);
  if (last < i) return;
  stats.right_bounds += static_cast<std::uint64_t>(last - i + 1);

  const auto needed = options.quorum_grouping
                          ? static_cast<std::size_t>(params.quorum - 1)
                          : std::size_t{1};
  per_string_.resize(m);
  std::vector<AwciPair> probe;
  for (int j = i; j <= last; ++j) {
    load_reference(x, i, j);
    std::size_t covered = 0;
    for (std::size_t y = x + 1; y < m; ++y) {
      per_string_[y].clear();
      trans_intervals(x, i, j, y, anchors[y], false, per_string_[y]);
      if (!per_string_[y].empty()) ++covered;
    }
    if (options.quorum_grouping) {
      for (std::size_t y = 0; y < x && covered < needed; ++y) {
        probe.clear();
        trans_intervals(x, i, j, y, anchors[y], true, probe);
        if (!probe.empty()) ++covered;
      }
    }
    if (covered < needed) continue;
    for (std::size_t y = x + 1; y < m; ++y) {
      stats.pairs += per_string_[y].size();
      std::move(per_string_[y].begin(), per_string_[y].end(),
                std::back_inserter(out));
    }
  }
}

PairEnumerator::PairEnumerator(const Dataset& data,
                               const IntersectionIndex& index,
                               const RidgeTables* tables, SearchParams params,
                               EnumerateOptions options)
    : data_(data),
      index_(index),
      tables_(tables),
      params_(params),
      options_(options) {
  params_.validate();
  if (options_.use_filter && tables_ == nullptr)
    throw std::invalid_argument("PairEnumerator: filter requested without ridge tables");
  if (tables_ != nullptr && options_.use_filter &&
      tables_->delta() != params_.delta)
    throw std::invalid_argument("PairEnumerator: ridge tables built for another delta");
}

EnumerationStats PairEnumerator::run(const Sink& sink) const {
  EnumerationStats total;
  const std::size_t m = data_.size();
  if (m < 2) return total;
  if (options_.quorum_grouping && static_cast<std::size_t>(params_.quorum) > m)
    return total;

  struct Unit {
    std::size_t x;
    int i;
  };
  std::vector<Unit> units;
  for (std::size_t x = 0; x + 1 < m; ++x)
    for (int i = 1; i <= data_[x].length(); ++i) units.push_back({x, i});

  const int threads = std::max(1, options_.threads);
  std::vector<std::unique_ptr<EnumerationWorker>> workers;
  std::vector<EnumerationStats> worker_stats(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t)
    workers.push_back(std::make_unique<EnumerationWorker>(*this));

  // Blocks of units are processed in parallel and flushed in order.
  const std::size_t block = 64 * static_cast<std::size_t>(threads);
  std::vector<std::vector<AwciPair>> results(block);
  for (std::size_t start = 0; start < units.size(); start += block) {
    const auto count = std::min(block, units.size() - start);
    for (std::size_t k = 0; k < count; ++k) results[k].clear();
    std::atomic<std::size_t> next{0};
    parallel_for(static_cast<std::size_t>(threads), threads,
                 [&](std::size_t t) {
                   for (;;) {
                     const auto k = next.fetch_add(1);
                     if (k >= count) return;
                     const auto& u = units[start + k];
                     workers[t]->process(u.x, u.i, results[k], worker_stats[t]);
                   }
                 });
    for (std::size_t k = 0; k < count; ++k)
      if (!results[k].empty()) sink(results[k]);
  }
  for (const auto& s : worker_stats) {
    total.left_bounds += s.left_bounds;
    total.right_bounds += s.right_bounds;
    total.filter_calls += s.filter_calls;
    total.pairs += s.pairs;
  }
  return total;
}

std::vector<AwciPair> PairEnumerator::collect(EnumerationStats* stats) const {
  std::vector<AwciPair> out;
  auto s = run([&](std::span<const AwciPair> batch) {
    out.insert(out.end(), batch.begin(), batch.end());
  });
  if (stats) *stats = s;
  return out;
}

std::vector<AwciPair> PairEnumerator::trans_intervals(
    std::size_t x, int i, int j, std::size_t y,
    std::span<const int> anchors) const {
  EnumerationWorker worker(*this);
  for (int p = i; p <= j; ++p) worker.load_reference(x, i, p);
  std::vector<AwciPair> out;
  worker.trans_intervals(x, i, j, y, anchors, false, out);
  return out;
}

int PairEnumerator::refine_right_bound(std::size_t x, int i, int last) const {
  EnumerationWorker worker(*this);
  const auto m = data_.size();
  std::vector<std::size_t> trans;
  std::vector<std::vector<int>> anchors(m);
  for (std::size_t y = 0; y < m; ++y) {
    if (y == x || (!options_.quorum_grouping && y < x)) continue;
    trans.push_back(y);
    anchors[y] = collect_anchors(data_[x], index_.pos(x, y), i, params_.delta);
  }
  return worker.refine(x, i, last, anchors, trans);
}

std::vector<AwciPair> enumerate_pairs(const Dataset& data,
                                      const SearchParams& params,
                                      const EnumerateOptions& options) {
  const auto index = IntersectionIndex::build(data, options.threads);
  std::optional<RidgeTables> tables;
  if (options.use_filter)
    tables = RidgeTables::build(data, index, params.delta, options.threads);
  PairEnumerator enumerator(data, index, tables ? &*tables : nullptr, params,
                            options);
  return enumerator.collect();
}

}  // namespace awci
