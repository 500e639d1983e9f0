#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "awci/model.hpp"

namespace awci {

/// Pos_xy: for every position p of S_x, the sorted positions of S_y whose
/// sets meet S_x[p].
class PosTable {
 public:
  PosTable() = default;
  PosTable(std::vector<std::uint32_t> offsets, std::vector<int> positions)
      : offsets_(std::move(offsets)), positions_(std::move(positions)) {}

  std::span<const int> row(int p) const {
    return {positions_.data() + offsets_[p - 1],
            positions_.data() + offsets_[p]};
  }
  /// Number of rows, i.e. |S_x|.
  int rows() const {
    return offsets_.empty() ? 0 : static_cast<int>(offsets_.size()) - 1;
  }
  std::size_t entries() const { return positions_.size(); }

  const std::vector<std::uint32_t>& offsets() const { return offsets_; }
  const std::vector<int>& positions() const { return positions_; }

 private:
  std::vector<std::uint32_t> offsets_;
  std::vector<int> positions_;
};

/// Ridge^c_xy: prefix counts of trivial indels of S_x with respect to S_y,
/// i.e. positions whose set meets nothing in C(S_y). Index 0 is a sentinel
/// holding 0. Contig breaks of S_x are hard barriers: no ridge spans one.
class RidgeC {
 public:
  RidgeC() = default;
  RidgeC(const IndeterminateString& sx, const PosTable& pos_xy);

  int at(int p) const { return counts_[p]; }
  int size() const { return static_cast<int>(counts_.size()) - 1; }
  const std::vector<int>& counts() const { return counts_; }

  bool is_trivial(int p) const { return counts_[p] != counts_[p - 1]; }
  /// Trivial indels inside [i, j].
  int trivial_in(int i, int j) const { return counts_[j] - counts_[i - 1]; }
  int segment(int p) const { return segment_[p]; }

  /// Ridge^c[j] - Ridge^c[i-1] <= delta and no contig barrier inside
  /// [i, j]. Throws std::out_of_range unless 1 <= i <= j <= |S_x|.
  bool same_ridge(int i, int j, int delta) const;

 private:
  std::vector<int> counts_;
  std::vector<int> segment_;
};

/// Pos and Ridge^c tables for every ordered pair of strings.
class IntersectionIndex {
 public:
  static IntersectionIndex build(const Dataset& data, int threads = 1);

  std::size_t string_count() const { return m_; }
  const PosTable& pos(std::size_t x, std::size_t y) const {
    return pos_[x * m_ + y];
  }
  const RidgeC& ridge_c(std::size_t x, std::size_t y) const {
    return ridge_[x * m_ + y];
  }

  /// Writes a versioned binary cache keyed by `content_hash(data)`.
  void save_cache(const std::filesystem::path& path,
                  const Dataset& data) const;
  /// Loads a cache written by save_cache, or nullopt when the file is
  /// missing, has another format version, or belongs to different content.
  static std::optional<IntersectionIndex> load_cache(
      const std::filesystem::path& path, const Dataset& data);

 private:
  std::size_t m_ = 0;
  std::vector<PosTable> pos_;
  std::vector<RidgeC> ridge_;
};

/// Builds Pos_xy with an inverted character index over S_y.
PosTable build_pos_table(const IndeterminateString& sx,
                         const IndeterminateString& sy);

/// FNV-1a over string ids, contig breaks and character labels.
std::uint64_t content_hash(const Dataset& data);

}  // namespace awci
