#include "awci/model.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <tuple>

#include "awci/errors.hpp"

namespace awci {

FormatError::FormatError(const std::string& message, std::size_t line,
                         std::size_t column)
    : std::runtime_error(line == 0 ? message
                                   : "line " + std::to_string(line) + ":" +
                                         std::to_string(column) + ": " +
                                         message),
      line_(line),
      column_(column) {}

CharId Alphabet::intern(std::string_view label) {
  if (label.empty()) throw FormatError("empty character label");
  auto key = std::string(label);
  if (auto it = ids_.find(key); it != ids_.end()) return it->second;
  auto id = static_cast<CharId>(labels_.size());
  ids_.emplace(key, id);
  labels_.push_back(std::move(key));
  return id;
}

std::optional<CharId> Alphabet::find(std::string_view label) const {
  auto it = ids_.find(std::string(label));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

IndeterminateString::IndeterminateString(std::string id,
                                         std::vector<CharSet> positions,
                                         std::vector<int> contig_breaks)
    : id_(std::move(id)), breaks_(std::move(contig_breaks)) {
  if (positions.empty())
    throw ValidationError("string '" + id_ + "' has no positions");
  offsets_.reserve(positions.size() + 1);
  offsets_.push_back(0);
  for (std::size_t p = 0; p < positions.size(); ++p) {
    auto& set = positions[p];
    if (set.empty())
      throw ValidationError("string '" + id_ + "': position " +
                            std::to_string(p + 1) + " has an empty set");
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    chars_.insert(chars_.end(), set.begin(), set.end());
    offsets_.push_back(static_cast<std::uint32_t>(chars_.size()));
  }

  std::sort(breaks_.begin(), breaks_.end());
  if (std::adjacent_find(breaks_.begin(), breaks_.end()) != breaks_.end())
    throw ValidationError("string '" + id_ + "': duplicate contig break");
  const int n = length();
  for (int b : breaks_) {
    if (b < 1 || b > n - 1)
      throw ValidationError("string '" + id_ + "': contig break " +
                            std::to_string(b) + " outside [1, " +
                            std::to_string(n - 1) + "]");
  }

  contig_.resize(n);
  contig_bounds_.push_back(1);
  int contig = 0;
  auto next_break = breaks_.begin();
  for (int p = 1; p <= n; ++p) {
    contig_[p - 1] = contig;
    if (next_break != breaks_.end() && *next_break == p) {
      ++contig;
      ++next_break;
      contig_bounds_.push_back(p + 1);
    }
  }
  contig_bounds_.push_back(n + 1);
}

int IndeterminateString::contig_start(int p) const {
  return contig_bounds_[contig_of(p)];
}

int IndeterminateString::contig_end(int p) const {
  return contig_bounds_[contig_of(p) + 1] - 1;
}

bool IndeterminateString::is_valid_interval(int i, int j) const {
  return i >= 1 && i <= j && j <= length() && same_contig(i, j);
}

CharSet IndeterminateString::character_set(int i, int j) const {
  if (i < 1 || i > j || j > length())
    throw std::out_of_range("interval [" + std::to_string(i) + "," +
                            std::to_string(j) + "] outside string '" + id_ +
                            "'");
  CharSet out(chars_.begin() + offsets_[i - 1], chars_.begin() + offsets_[j]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CharSet IndeterminateString::character_set() const {
  return character_set(1, length());
}

std::optional<std::size_t> Dataset::find(std::string_view id) const {
  for (std::size_t x = 0; x < strings.size(); ++x)
    if (strings[x].id() == id) return x;
  return std::nullopt;
}

IndeterminateString build_string(
    Alphabet& alphabet, std::string id,
    const std::vector<std::vector<std::string>>& label_sets,
    std::vector<int> contig_breaks) {
  std::vector<CharSet> positions;
  positions.reserve(label_sets.size());
  for (const auto& labels : label_sets) {
    CharSet set;
    for (const auto& label : labels) set.push_back(alphabet.intern(label));
    positions.push_back(std::move(set));
  }
  return IndeterminateString(std::move(id), std::move(positions),
                             std::move(contig_breaks));
}

void SearchParams::validate() const {
  if (delta < 0) throw ValidationError("delta must be >= 0");
  if (quorum < 2) throw ValidationError("quorum must be >= 2");
  if (min_size < 0) throw ValidationError("minimum size must be >= 0");
  if (refine_iters < 1)
    throw ValidationError("refinement iterations must be >= 1");
}

bool canonical_less(const AwciPair& a, const AwciPair& b) {
  return std::tie(a.left, a.right) < std::tie(b.left, b.right);
}

bool intersects(std::span<const CharId> a, std::span<const CharId> b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib)
      ++ia;
    else if (*ib < *ia)
      ++ib;
    else
      return true;
  }
  return false;
}

CharSet set_union(std::span<const CharId> a, std::span<const CharId> b) {
  CharSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

CharSet set_intersection(std::span<const CharId> a,
                         std::span<const CharId> b) {
  CharSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

}  // namespace awci
