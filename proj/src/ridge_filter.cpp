#include "awci/ridge_filter.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "awci/parallel.hpp"

namespace awci {

std::span<const RidgeT::SlotAssignment> RidgeT::slot_map(int p) const {
  if (map_offsets_.empty()) return {};
  return {map_.data() + map_offsets_[p - 1], map_.data() + map_offsets_[p]};
}

RidgeT build_ridge_t(const Dataset& data, const IntersectionIndex& index,
                     std::size_t x, std::size_t y, int delta,
                     bool keep_slot_map) {
  const auto& sx = data[x];
  const auto& sy = data[y];
  const auto& pos = index.pos(x, y);
  const auto& rc_xy = index.ridge_c(x, y);
  const auto& rc_yx = index.ridge_c(y, x);

  // Effective level: Ridge^c_yx shifted so that different contigs of S_y
  // are more than delta levels apart.
  auto level = [&](int k) { return rc_yx.at(k) + (delta + 1) * rc_yx.segment(k); };

  struct Live {
    int slot;
    int last;
  };
  std::unordered_map<int, Live> live;
  std::priority_queue<int, std::vector<int>, std::greater<>> free_slots;
  int next_slot = 0;

  std::vector<std::uint32_t> row_offsets{0};
  std::vector<RidgeT::SlotAssignment> rows;

  int lo = 1;
  const int n = sx.length();
  for (int j = 1; j <= n; ++j) {
    // Earliest left bound whose sweep can still reach j.
    lo = std::max(lo, sx.contig_start(j));
    while (rc_xy.trivial_in(lo, j) > delta) ++lo;
    for (auto it = live.begin(); it != live.end();) {
      if (it->second.last < lo) {
        free_slots.push(it->second.slot);
        it = live.erase(it);
      } else {
        ++it;
      }
    }

    for (int k : pos.row(j)) {
      const int top = level(k);
      const int bottom = std::max(level(sy.contig_start(k)), top - delta);
      for (int ridge = bottom; ridge <= top; ++ridge) {
        auto [it, inserted] = live.try_emplace(ridge, Live{-1, 0});
        if (inserted) {
          if (!free_slots.empty()) {
            it->second.slot = free_slots.top();
            free_slots.pop();
          } else {
            it->second.slot = next_slot++;
          }
        } else if (it->second.last == j) {
          continue;
        }
        it->second.last = j;
        rows.push_back({it->second.slot, ridge});
      }
    }
    row_offsets.push_back(static_cast<std::uint32_t>(rows.size()));
  }

  RidgeT table;
  table.width_ = next_slot;
  table.words_ = std::max(1, (next_slot + 63) / 64);
  table.rows_ = n;
  table.bits_.assign(static_cast<std::size_t>(n + 1) * table.words_, 0);
  for (int j = 1; j <= n; ++j) {
    auto* row = table.bits_.data() + static_cast<std::size_t>(j) * table.words_;
    for (auto e = row_offsets[j - 1]; e < row_offsets[j]; ++e) {
      const auto slot = static_cast<unsigned>(rows[e].slot);
      row[slot / 64] |= std::uint64_t{1} << (slot % 64);
    }
  }
  if (keep_slot_map) {
    table.map_offsets_ = std::move(row_offsets);
    table.map_ = std::move(rows);
  }
  return table;
}

RidgeTables RidgeTables::build(const Dataset& data,
                               const IntersectionIndex& index, int delta,
                               int threads, bool keep_slot_map) {
  RidgeTables out;
  out.m_ = data.size();
  out.delta_ = delta;
  out.tables_.resize(out.m_ * out.m_);
  parallel_for(out.m_ * out.m_, threads, [&](std::size_t k) {
    const auto x = k / out.m_;
    const auto y = k % out.m_;
    if (x != y)
      out.tables_[k] = build_ridge_t(data, index, x, y, delta, keep_slot_map);
  });
  return out;
}

std::vector<RidgeWidth> RidgeTables::widths(const Dataset& data) const {
  std::vector<RidgeWidth> out;
  for (std::size_t x = 0; x < m_; ++x)
    for (std::size_t y = 0; y < m_; ++y)
      if (x != y)
        out.push_back({x, y, at(x, y).width(), data[y].cardinality()});
  return out;
}

RidgeFilter::RidgeFilter(const Dataset& data, const IntersectionIndex& index,
                         const RidgeTables& tables, std::size_t x, int quorum)
    : sx_(&data[x]), x_(x), delta_(tables.delta()), quorum_(quorum) {
  lanes_.resize(data.size());
  std::size_t max_words = 1;
  for (std::size_t y = 0; y < data.size(); ++y) {
    if (y == x) continue;
    auto& lane = lanes_[y];
    lane.table = &tables.at(x, y);
    lane.pos = &index.pos(x, y);
    lane.ridge_c = &index.ridge_c(x, y);
    lane.words = lane.table->words();
    lane.active.assign(lane.words, 0);
    lane.counters.assign(static_cast<std::size_t>(delta_ + 1) * lane.words, 0);
    max_words = std::max(max_words, static_cast<std::size_t>(lane.words));
  }
  scratch_off_.resize(max_words);
  scratch_new_.resize(max_words);
}

void RidgeFilter::reset(int i) {
  if (!sx_->contains(i))
    throw std::out_of_range("filter left bound " + std::to_string(i) +
                            " outside reference string");
  i_ = i;
  last_j_ = i - 1;
  for (std::size_t y = 0; y < lanes_.size(); ++y) {
    auto& lane = lanes_[y];
    lane.alive = y != x_;
    std::fill(lane.active.begin(), lane.active.end(), 0);
    std::fill(lane.counters.begin(), lane.counters.end(), 0);
  }
}

std::span<const std::uint64_t> RidgeFilter::active(std::size_t y) const {
  return lanes_[y].active;
}

std::span<const std::uint64_t> RidgeFilter::counter(std::size_t y,
                                                    int level) const {
  const auto& lane = lanes_[y];
  return {lane.counters.data() + static_cast<std::size_t>(level) * lane.words,
          static_cast<std::size_t>(lane.words)};
}

bool RidgeFilter::step(Lane& lane, int j) {
  const auto& rc = *lane.ridge_c;
  const int trivial = rc.trivial_in(i_, j);
  if (trivial > delta_) return false;

  const int w = lane.words;
  const auto row = lane.table->row(j);
  auto* active = lane.active.data();
  auto* counters = lane.counters.data();
  auto level_vec = [&](int d) { return counters + static_cast<std::size_t>(d) * w; };

  if (j == i_) {
    // An admissible partner must meet S_x[i]; without any ridge here the
    // lane can never qualify for this left bound.
    if (lane.pos->row(j).empty()) return false;
    std::copy(row.begin(), row.end(), active);
  } else if (!rc.is_trivial(j)) {
    auto* off = scratch_off_.data();
    auto* fresh = scratch_new_.data();
    for (int k = 0; k < w; ++k) {
      off[k] = active[k] & ~row[k];
      fresh[k] = row[k] & ~active[k];
    }
    // Saturating unary increment of every ridge in `off`.
    for (int d = delta_; d >= 1; --d) {
      auto* hi = level_vec(d);
      const auto* below = level_vec(d - 1);
      for (int k = 0; k < w; ++k) hi[k] |= below[k] & off[k];
    }
    for (int k = 0; k < w; ++k) level_vec(0)[k] |= off[k];

    // A newly seen ridge was missed by every non-trivial position so far.
    const int missed = (j - i_) - rc.trivial_in(i_, j - 1);
    const int charge = std::min(missed, delta_ + 1);
    for (int d = 0; d < charge; ++d) {
      auto* vec = level_vec(d);
      for (int k = 0; k < w; ++k) vec[k] |= fresh[k];
    }
    for (int k = 0; k < w; ++k) active[k] |= row[k];
  }
  // Trivial reference positions are charged once through `trivial`, not
  // per ridge.

  const auto* mask = level_vec(delta_ - trivial);
  for (int k = 0; k < w; ++k)
    if (active[k] & ~mask[k]) return true;
  return false;
}

bool RidgeFilter::accepts(int j) {
  if (i_ == 0) throw std::logic_error("RidgeFilter: reset() not called");
  if (j != last_j_ + 1)
    throw std::logic_error("RidgeFilter: positions must be visited in order");
  last_j_ = j;
  ++calls_;
  if (!sx_->contains(j) || !sx_->same_contig(i_, j)) {
    for (auto& lane : lanes_) lane.alive = false;
    return false;
  }
  int candidates = 0;
  for (std::size_t y = 0; y < lanes_.size(); ++y) {
    auto& lane = lanes_[y];
    if (!lane.alive) continue;
    lane.alive = step(lane, j);
    if (lane.alive) ++candidates;
  }
  return candidates >= quorum_ - 1;
}

}  // namespace awci
