#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace awci {

using CharId = std::uint32_t;

/// Sorted, duplicate-free set of character ids.
using CharSet = std::vector<CharId>;

/// Interns external character labels as dense ids 0, 1, 2, ...
class Alphabet {
 public:
  /// Returns the id of `label`, assigning the next free id on first use.
  /// Throws FormatError on an empty label.
  CharId intern(std::string_view label);

  std::optional<CharId> find(std::string_view label) const;
  const std::string& label(CharId id) const { return labels_.at(id); }
  std::size_t size() const { return labels_.size(); }

 private:
  std::unordered_map<std::string, CharId> ids_;
  std::vector<std::string> labels_;
};

/// A string over non-empty subsets of the alphabet, with contig structure.
///
/// Positions are 1-based. A contig break `b` separates positions `b` and
/// `b + 1`; no interval may cross it.
class IndeterminateString {
 public:
  /// Each position set is sorted and deduplicated on construction. Throws
  /// ValidationError for an empty string, an empty position set or a break
  /// outside [1, length - 1].
  IndeterminateString(std::string id, std::vector<CharSet> positions,
                      std::vector<int> contig_breaks = {});

  const std::string& id() const { return id_; }

  /// |S|
  int length() const { return static_cast<int>(offsets_.size()) - 1; }
  /// ||S||, the total number of characters over all positions.
  std::size_t cardinality() const { return chars_.size(); }

  std::span<const CharId> at(int p) const {
    return {chars_.data() + offsets_[p - 1], chars_.data() + offsets_[p]};
  }

  const std::vector<int>& contig_breaks() const { return breaks_; }
  /// 0-based index of the contig holding position p.
  int contig_of(int p) const { return contig_[p - 1]; }
  int contig_start(int p) const;
  int contig_end(int p) const;
  bool same_contig(int a, int b) const { return contig_of(a) == contig_of(b); }

  bool contains(int p) const { return p >= 1 && p <= length(); }
  /// 1 <= i <= j <= |S| and [i, j] lies inside one contig.
  bool is_valid_interval(int i, int j) const;

  /// C(S[i, j]); the range may cross contig breaks. Throws std::out_of_range
  /// unless 1 <= i <= j <= |S|.
  CharSet character_set(int i, int j) const;
  /// C(S)
  CharSet character_set() const;

 private:
  std::string id_;
  std::vector<std::uint32_t> offsets_;
  std::vector<CharId> chars_;
  std::vector<int> breaks_;
  std::vector<int> contig_;
  std::vector<int> contig_bounds_;  // first position of each contig, plus |S|+1
};

/// A set of strings over one shared alphabet.
struct Dataset {
  Alphabet alphabet;
  std::vector<IndeterminateString> strings;

  std::size_t size() const { return strings.size(); }
  const IndeterminateString& operator[](std::size_t x) const {
    return strings[x];
  }
  /// Index of the string with the given id, if any.
  std::optional<std::size_t> find(std::string_view id) const;
};

/// Interns the labels and builds a validated string.
IndeterminateString build_string(
    Alphabet& alphabet, std::string id,
    const std::vector<std::vector<std::string>>& label_sets,
    std::vector<int> contig_breaks = {});

/// Interval [i, j] (1-based, inclusive) of the string with index `string`.
struct AnchoredInterval {
  std::size_t string = 0;
  int i = 0;
  int j = 0;

  int length() const { return j - i + 1; }
  auto operator<=>(const AnchoredInterval&) const = default;
};

struct SearchParams {
  int delta = 0;
  int quorum = 2;
  int min_size = 0;
  int refine_iters = 3;

  /// Throws ValidationError if an invariant does not hold.
  void validate() const;
};

/// One reported pair of approximate weak common intervals. `left` is always
/// on the lower-indexed string.
struct AwciPair {
  AnchoredInterval left;
  AnchoredInterval right;
  CharSet common_set;
  int indel_total = 0;
  int size_left = 0;   // non-indel positions of `left`
  int size_right = 0;  // non-indel positions of `right`

  bool operator==(const AwciPair&) const = default;
};

/// A set of pairwise approximate weak common intervals, at most one member
/// per string. `common_sets` and `pair_indels` follow the member-pair order
/// (0,1), (0,2), ..., (1,2), ...
struct AwciSet {
  std::vector<AnchoredInterval> members;  // sorted by string
  bool closed = false;
  std::vector<CharSet> common_sets;
  std::vector<int> pair_indels;

  bool operator==(const AwciSet& other) const {
    return members == other.members && closed == other.closed;
  }
  bool operator<(const AwciSet& other) const {
    return members < other.members;
  }
};

/// Canonical order: (left.string, left.i, left.j, right.string, right.k,
/// right.l).
bool canonical_less(const AwciPair& a, const AwciPair& b);

bool intersects(std::span<const CharId> a, std::span<const CharId> b);
CharSet set_union(std::span<const CharId> a, std::span<const CharId> b);
CharSet set_intersection(std::span<const CharId> a,
                         std::span<const CharId> b);

}  // namespace awci
