#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "awci/index.hpp"
#include "awci/model.hpp"
#include "awci/ridge_filter.hpp"

namespace awci {

/// Incremental acceptance test for a fixed reference interval [i, j] of
/// S_x against growing intervals [k, l] of S_y.
///
/// C_kl is the set of reference positions in [i, j] met by some position of
/// [k, l]; d_kl counts positions of [k, l] meeting nothing in S_x[i, j].
/// The pair is an AWCI pair iff (j - i + 1) - |C_kl| + d_kl <= delta.
class SweepState {
 public:
  SweepState() = default;
  SweepState(const PosTable& pos_yx, int i, int j) { retarget(pos_yx, i, j); }

  void retarget(const PosTable& pos_yx, int i, int j);

  /// Empties the trans interval; the next extend() adds position k.
  void start(int k);
  /// Adds position l + 1.
  void extend();

  int k() const { return k_; }
  int l() const { return l_; }
  int hits() const { return hits_; }
  int trans_indels() const { return trans_indels_; }
  int reference_indels() const { return (j_ - i_ + 1) - hits_; }
  bool accepts(int delta) const {
    return reference_indels() + trans_indels_ <= delta;
  }
  /// S_y[p] meets nothing in S_x[i, j].
  bool is_trans_indel(int p) const;
  bool last_is_indel() const { return last_is_indel_; }
  bool reference_endpoints_hit() const {
    return mark_[0] == epoch_ && mark_[j_ - i_] == epoch_;
  }

 private:
  const PosTable* pos_ = nullptr;
  int i_ = 0;
  int j_ = 0;
  int k_ = 0;
  int l_ = 0;
  int hits_ = 0;
  int trans_indels_ = 0;
  bool last_is_indel_ = false;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> mark_;
};

/// Sorted union Pos_xy[i] u ... u Pos_xy[i + delta], clamped to i's contig.
std::vector<int> collect_anchors(const IndeterminateString& sx,
                                 const PosTable& pos_xy, int i, int delta);

/// Last candidate right bound for left bound i: the contig end without a
/// filter, otherwise the last j before the filter first rejects. Returns
/// i - 1 when no bound survives.
int candidate_right_bound(const IndeterminateString& sx, int i,
                          RidgeFilter* filter);

/// Given the rightmost reachable bound per trans string, the largest r such
/// that at least quorum - 1 strings reach r; i - 1 if none.
int quorum_right_bound(std::vector<int> best_per_string, int quorum, int i);

struct EnumerateOptions {
  bool use_filter = true;
  /// Report a reference interval's pairs only if it has partners in at
  /// least quorum - 1 other strings. Off: every admissible pair.
  bool quorum_grouping = true;
  bool refine = true;
  int threads = 1;
};

struct EnumerationStats {
  std::uint64_t left_bounds = 0;
  std::uint64_t right_bounds = 0;  // |J| summed over left bounds
  std::uint64_t filter_calls = 0;
  std::uint64_t pairs = 0;
};

/// Algorithm driver. Output is produced in canonical order (x, i, j, y, k,
/// l) regardless of the thread count.
class PairEnumerator {
 public:
  using Sink = std::function<void(std::span<const AwciPair>)>;

  /// `tables` may be null when options.use_filter is false.
  PairEnumerator(const Dataset& data, const IntersectionIndex& index,
                 const RidgeTables* tables, SearchParams params,
                 EnumerateOptions options);

  EnumerationStats run(const Sink& sink) const;
  std::vector<AwciPair> collect(EnumerationStats* stats = nullptr) const;

  /// Trans intervals of S_y forming admissible pairs with [i, j]_x, sorted
  /// by (k, l). `anchors` must come from collect_anchors(x, y, i).
  std::vector<AwciPair> trans_intervals(std::size_t x, int i, int j,
                                        std::size_t y,
                                        std::span<const int> anchors) const;

  /// Refined last right bound for left bound i (starting from `last`).
  int refine_right_bound(std::size_t x, int i, int last) const;

 private:
  friend class EnumerationWorker;
  const Dataset& data_;
  const IntersectionIndex& index_;
  const RidgeTables* tables_;
  SearchParams params_;
  EnumerateOptions options_;
};

/// Convenience: builds the index (and ridge tables when filtering) and
/// collects all pairs.
std::vector<AwciPair> enumerate_pairs(const Dataset& data,
                                      const SearchParams& params,
                                      const EnumerateOptions& options = {});

}  // namespace awci
