#pragma once

// Bit-vector pre-filter deciding whether a reference prefix S_x[i..j] can
// still take part in an AWCI group spanning the quorum.
//
// A ridge of S_y is a window of delta + 1 consecutive Ridge^c_yx levels
// inside one contig. Any interval of S_y with at most delta trivial indels
// lies inside the window starting at its lowest level, so tracking, per
// window, how many reference positions miss it entirely bounds the
// reference-side indels of every interval inside it from below.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "awci/index.hpp"
#include "awci/model.hpp"

namespace awci {

/// Ridge^t_xy: per position p of S_x, a fixed-width bit vector naming the
/// ridges of S_y that hold characters of S_x[p]. Bit slots are reused once
/// the ridge they named can no longer co-occur in a sweep window.
class RidgeT {
 public:
  struct SlotAssignment {
    int slot;
    int ridge;  // window id (its lowest effective level)
  };

  int width() const { return width_; }
  int words() const { return words_; }
  int rows() const { return rows_; }

  std::span<const std::uint64_t> row(int p) const {
    return {bits_.data() + static_cast<std::size_t>(p) * words_,
            static_cast<std::size_t>(words_)};
  }
  /// Slot bookkeeping for position p; empty unless requested at build time.
  std::span<const SlotAssignment> slot_map(int p) const;

 private:
  friend RidgeT build_ridge_t(const Dataset&, const IntersectionIndex&,
                              std::size_t, std::size_t, int, bool);
  int width_ = 0;
  int words_ = 1;
  int rows_ = 0;
  std::vector<std::uint64_t> bits_;  // row 0 unused
  std::vector<std::uint32_t> map_offsets_;
  std::vector<SlotAssignment> map_;
};

RidgeT build_ridge_t(const Dataset& data, const IntersectionIndex& index,
                     std::size_t x, std::size_t y, int delta,
                     bool keep_slot_map = false);

struct RidgeWidth {
  std::size_t x;
  std::size_t y;
  int width;
  std::size_t trans_cardinality;  // ||S_y||
};

/// Ridge^t for every ordered pair at one indel threshold.
class RidgeTables {
 public:
  static RidgeTables build(const Dataset& data, const IntersectionIndex& index,
                           int delta, int threads = 1,
                           bool keep_slot_map = false);

  int delta() const { return delta_; }
  const RidgeT& at(std::size_t x, std::size_t y) const {
    return tables_[x * m_ + y];
  }
  std::vector<RidgeWidth> widths(const Dataset& data) const;

 private:
  std::size_t m_ = 0;
  int delta_ = 0;
  std::vector<RidgeT> tables_;
};

/// Per-worker sweep state for one reference string. Call reset(i) for each
/// left bound, then accepts(j) for j = i, i+1, ... in order.
class RidgeFilter {
 public:
  RidgeFilter(const Dataset& data, const IntersectionIndex& index,
              const RidgeTables& tables, std::size_t x, int quorum);

  void reset(int i);
  /// True iff at least quorum - 1 trans strings still hold a ridge whose
  /// combined indel count with S_x[i..j] is within delta. Once false for a
  /// left bound it stays false. Throws std::logic_error unless called with
  /// j = previous j + 1 (or j = i right after reset).
  bool accepts(int j);

  std::size_t reference() const { return x_; }
  int left_bound() const { return i_; }
  std::uint64_t calls() const { return calls_; }

  // Inspection of the per-trans-string state, for tests and diagnostics.
  bool alive(std::size_t y) const { return lanes_[y].alive; }
  std::span<const std::uint64_t> active(std::size_t y) const;
  /// Bit set: the ridge has accumulated more than `level` reference-side
  /// misses (trivial reference indels excluded).
  std::span<const std::uint64_t> counter(std::size_t y, int level) const;

 private:
  struct Lane {
    const RidgeT* table = nullptr;
    const PosTable* pos = nullptr;
    const RidgeC* ridge_c = nullptr;
    int words = 0;
    bool alive = false;
    std::vector<std::uint64_t> active;
    std::vector<std::uint64_t> counters;  // (delta + 1) * words
  };

  bool step(Lane& lane, int j);

  const IndeterminateString* sx_;
  std::size_t x_;
  int delta_;
  int quorum_;
  int i_ = 0;
  int last_j_ = 0;
  std::uint64_t calls_ = 0;
  std::vector<Lane> lanes_;
  std::vector<std::uint64_t> scratch_off_;
  std::vector<std::uint64_t> scratch_new_;
};

}  // namespace awci
