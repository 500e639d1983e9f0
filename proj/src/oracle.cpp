#include "awci/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "awci/errors.hpp"

namespace awci {

namespace {

void check_interval(const Dataset& data, const AnchoredInterval& a) {
  if (a.string >= data.size() ||
      !data[a.string].is_valid_interval(a.i, a.j))
    throw std::out_of_range("invalid interval [" + std::to_string(a.i) + "," +
                            std::to_string(a.j) + "] on string " +
                            std::to_string(a.string));
}

}  // namespace

PairVerdict judge_pair(const Dataset& data, const AnchoredInterval& a,
                       const AnchoredInterval& b, int delta) {
  if (a.string == b.string)
    throw UnsupportedError("intervals on the same string are not compared");
  check_interval(data, a);
  check_interval(data, b);
  const auto& s = data[a.string];
  const auto& t = data[b.string];

  PairVerdict v;
  v.common_set = set_intersection(s.character_set(a.i, a.j),
                                  t.character_set(b.i, b.j));
  for (int x = a.i; x <= a.j; ++x)
    if (!intersects(s.at(x), v.common_set))
      v.indel_positions_left.push_back(x);
  for (int y = b.i; y <= b.j; ++y)
    if (!intersects(t.at(y), v.common_set))
      v.indel_positions_right.push_back(y);
  v.indel_total = static_cast<int>(v.indel_positions_left.size() +
                                   v.indel_positions_right.size());
  v.is_wci = v.indel_total == 0;
  v.is_awci = v.indel_total <= delta;
  return v;
}

bool is_awci_set(const Dataset& data, std::span<const AnchoredInterval> set,
                 int delta) {
  for (std::size_t a = 0; a < set.size(); ++a)
    for (std::size_t b = a + 1; b < set.size(); ++b)
      if (!judge_pair(data, set[a], set[b], delta).is_awci) return false;
  return true;
}

bool is_closed_set(const Dataset& data,
                   std::span<const AnchoredInterval> set) {
  std::vector<CharSet> sets;
  sets.reserve(set.size());
  for (const auto& member : set) {
    check_interval(data, member);
    sets.push_back(data[member.string].character_set(member.i, member.j));
  }
  for (std::size_t m = 0; m < set.size(); ++m) {
    const auto& member = set[m];
    const auto& s = data[member.string];
    for (int p : {member.i - 1, member.j + 1}) {
      if (!s.contains(p) || !s.same_contig(p, member.i)) continue;
      bool meets_all = true;
      for (std::size_t o = 0; o < set.size() && meets_all; ++o)
        if (o != m && !intersects(s.at(p), sets[o])) meets_all = false;
      if (meets_all) return false;
    }
  }
  return true;
}

std::optional<AwciPair> admissible_pair(const Dataset& data,
                                        const AnchoredInterval& a,
                                        const AnchoredInterval& b,
                                        const SearchParams& params) {
  const auto& left = a.string < b.string ? a : b;
  const auto& right = a.string < b.string ? b : a;
  if (left.length() < params.min_size || right.length() < params.min_size)
    return std::nullopt;
  auto v = judge_pair(data, left, right, params.delta);
  if (!v.is_awci) return std::nullopt;
  auto is_indel = [](const std::vector<int>& indels, int p) {
    return std::binary_search(indels.begin(), indels.end(), p);
  };
  if (is_indel(v.indel_positions_left, left.i) ||
      is_indel(v.indel_positions_left, left.j) ||
      is_indel(v.indel_positions_right, right.i) ||
      is_indel(v.indel_positions_right, right.j))
    return std::nullopt;

  AwciPair pair;
  pair.left = left;
  pair.right = right;
  pair.indel_total = v.indel_total;
  pair.size_left =
      left.length() - static_cast<int>(v.indel_positions_left.size());
  pair.size_right =
      right.length() - static_cast<int>(v.indel_positions_right.size());
  pair.common_set = std::move(v.common_set);
  return pair;
}

std::vector<AwciPair> brute_force_pairs(const Dataset& data,
                                        const SearchParams& params,
                                        bool quorum_grouping) {
  std::vector<AwciPair> out;
  const std::size_t m = data.size();
  if (m < 2) return out;
  if (quorum_grouping && static_cast<std::size_t>(params.quorum) > m)
    return out;

  auto intervals_of = [&](std::size_t x) {
    std::vector<AnchoredInterval> all;
    const auto& s = data[x];
    for (int i = 1; i <= s.length(); ++i)
      for (int j = i; j <= s.length() && s.same_contig(i, j); ++j)
        all.push_back({x, i, j});
    return all;
  };

  std::vector<std::vector<AnchoredInterval>> intervals(m);
  for (std::size_t x = 0; x < m; ++x) intervals[x] = intervals_of(x);

  std::map<AnchoredInterval, std::set<std::size_t>> partners;
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = x + 1; y < m; ++y)
      for (const auto& a : intervals[x])
        for (const auto& b : intervals[y])
          if (auto pair = admissible_pair(data, a, b, params)) {
            partners[a].insert(y);
            partners[b].insert(x);
            out.push_back(std::move(*pair));
          }

  if (quorum_grouping) {
    const auto needed = static_cast<std::size_t>(params.quorum - 1);
    std::erase_if(out, [&](const AwciPair& p) {
      return partners[p.left].size() < needed;
    });
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

AwciSet describe_set(const Dataset& data,
                     std::vector<AnchoredInterval> members, int delta) {
  std::sort(members.begin(), members.end());
  AwciSet set;
  set.closed = is_closed_set(data, members);
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      auto v = judge_pair(data, members[a], members[b], delta);
      set.common_sets.push_back(std::move(v.common_set));
      set.pair_indels.push_back(v.indel_total);
    }
  set.members = std::move(members);
  return set;
}

std::vector<AwciSet> brute_force_maximal_closed_sets(
    const Dataset& data, const SearchParams& params,
    const OracleLimits& limits) {
  int total = 0;
  for (const auto& s : data.strings) total += s.length();
  if (total > limits.max_total_length)
    throw ResourceError("oracle input too large: total length " +
                        std::to_string(total) + " exceeds " +
                        std::to_string(limits.max_total_length));

  const std::size_t m = data.size();
  std::vector<AwciSet> out;
  if (m < 2 || static_cast<std::size_t>(params.quorum) > m) return out;

  const auto pairs = brute_force_pairs(data, params, false);
  std::map<AnchoredInterval, int> index;
  for (const auto& p : pairs) {
    index.emplace(p.left, 0);
    index.emplace(p.right, 0);
  }
  std::vector<AnchoredInterval> vertices;
  for (auto& [interval, id] : index) {
    id = static_cast<int>(vertices.size());
    vertices.push_back(interval);
  }
  const auto n = vertices.size();
  std::vector<char> adjacent(n * n, 0);
  for (const auto& p : pairs) {
    auto a = static_cast<std::size_t>(index[p.left]);
    auto b = static_cast<std::size_t>(index[p.right]);
    adjacent[a * n + b] = adjacent[b * n + a] = 1;
  }
  std::vector<std::vector<int>> by_string(m);
  for (std::size_t v = 0; v < n; ++v)
    by_string[vertices[v].string].push_back(static_cast<int>(v));

  // Every clique (one member per string) with at least two members.
  std::set<std::vector<int>> closed;
  std::size_t cliques = 0;
  std::vector<int> current;
  auto visit = [&](auto&& self, std::size_t s) -> void {
    if (s == m) {
      if (current.size() < 2) return;
      if (++cliques > limits.max_cliques)
        throw ResourceError("oracle clique enumeration limit exceeded");
      std::vector<AnchoredInterval> members;
      for (int v : current) members.push_back(vertices[v]);
      if (is_closed_set(data, members)) closed.insert(current);
      return;
    }
    self(self, s + 1);
    for (int v : by_string[s]) {
      bool fits = std::all_of(current.begin(), current.end(), [&](int u) {
        return adjacent[static_cast<std::size_t>(u) * n + v] != 0;
      });
      if (!fits) continue;
      current.push_back(v);
      self(self, s + 1);
      current.pop_back();
    }
  };
  visit(visit, 0);

  std::vector<const std::vector<int>*> by_size(closed.size());
  std::transform(closed.begin(), closed.end(), by_size.begin(),
                 [](const auto& c) { return &c; });
  for (const auto& a : closed) {
    if (a.size() < static_cast<std::size_t>(params.quorum)) continue;
    bool maximal = true;
    for (const auto* b : by_size) {
      if (b->size() > a.size() &&
          std::includes(b->begin(), b->end(), a.begin(), a.end())) {
        maximal = false;
        break;
      }
    }
    if (!maximal) continue;
    std::vector<AnchoredInterval> members;
    for (int v : a) members.push_back(vertices[v]);
    out.push_back(describe_set(data, std::move(members), params.delta));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace awci
