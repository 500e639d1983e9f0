#include "awci/assembler.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>

#include "awci/errors.hpp"
#include "awci/macsi.hpp"
#include "awci/oracle.hpp"
#include "awci/parallel.hpp"
#include "awci/ridge_filter.hpp"

namespace awci {

namespace {

using Vertices = std::vector<std::uint32_t>;

// S_x[p] meets C(S_y[w.i, w.j]).
bool meets(const IntersectionIndex& index, std::size_t x, int p,
           const AnchoredInterval& w) {
  auto row = index.pos(x, w.string).row(p);
  auto it = std::lower_bound(row.begin(), row.end(), w.i);
  return it != row.end() && *it <= w.j;
}

bool closed(const Dataset& data, const IntersectionIndex& index,
            std::span<const AnchoredInterval> members) {
  for (const auto& member : members) {
    const auto& s = data[member.string];
    for (int p : {member.i - 1, member.j + 1}) {
      if (!s.contains(p) || !s.same_contig(p, member.i)) continue;
      const bool extendable =
          std::all_of(members.begin(), members.end(), [&](const auto& other) {
            return &other == &member || meets(index, member.string, p, other);
          });
      if (extendable) return false;
    }
  }
  return true;
}

Vertices intersect(const Vertices& a, const Vertices& b) {
  Vertices out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

// Drops vertices whose neighbours span fewer than quorum - 1 strings until
// no such vertex remains, then renumbers.
AwciGraph compact(std::vector<AnchoredInterval> vertices,
                  std::vector<Vertices> adjacency, std::vector<bool> keep,
                  int quorum) {
  const std::size_t n = vertices.size();
  const auto needed = static_cast<std::size_t>(std::max(quorum - 1, 1));
  auto strings_among = [&](std::size_t v) {
    std::size_t count = 0;
    std::size_t last = SIZE_MAX;
    for (auto u : adjacency[v]) {
      if (!keep[u]) continue;
      if (vertices[u].string != last) {
        ++count;
        last = vertices[u].string;
      }
    }
    return count;
  };
  std::vector<std::size_t> work;
  for (std::size_t v = 0; v < n; ++v)
    if (keep[v]) work.push_back(v);
  while (!work.empty()) {
    const auto v = work.back();
    work.pop_back();
    if (!keep[v] || strings_among(v) >= needed) continue;
    keep[v] = false;
    for (auto u : adjacency[v])
      if (keep[u]) work.push_back(u);
  }

  std::vector<std::uint32_t> renumber(n, 0);
  AwciGraph graph;
  for (std::size_t v = 0; v < n; ++v) {
    if (!keep[v]) continue;
    renumber[v] = static_cast<std::uint32_t>(graph.vertices.size());
    graph.vertices.push_back(vertices[v]);
  }
  graph.adjacency.resize(graph.vertices.size());
  for (std::size_t v = 0; v < n; ++v) {
    if (!keep[v]) continue;
    auto& out = graph.adjacency[renumber[v]];
    for (auto u : adjacency[v])
      if (keep[u]) out.push_back(renumber[u]);
  }
  return graph;
}

std::string describe(const Dataset& data, const AnchoredInterval& v) {
  return data[v.string].id() + "[" + std::to_string(v.i) + "," +
         std::to_string(v.j) + "]";
}

struct ComponentResult {
  std::vector<Vertices> closed_cliques;
  std::vector<Vertices> candidates;  // closed sub-cliques from descent
  std::uint64_t maximal_cliques = 0;
  std::uint64_t non_closed = 0;
  std::uint64_t truncated = 0;
};

class CliqueSearch {
 public:
  CliqueSearch(const AwciGraph& graph, const Dataset& data,
               const IntersectionIndex& index, const SearchParams& params,
               const AssembleOptions& options, ComponentResult& out)
      : graph_(graph),
        data_(data),
        index_(index),
        params_(params),
        options_(options),
        out_(out) {}

  void run(Vertices component) {
    first_ = component.front();
    Vertices r;
    expand(r, std::move(component), {});
  }

 private:
  std::size_t strings_in(const Vertices& p) const {
    std::size_t count = 0;
    std::size_t last = SIZE_MAX;
    for (auto v : p) {
      if (graph_.vertices[v].string != last) {
        ++count;
        last = graph_.vertices[v].string;
      }
    }
    return count;
  }

  void expand(Vertices& r, Vertices p, Vertices x) {
    if (p.empty()) {
      if (x.empty()) report(r);
      return;
    }
    // Every clique grown from here spans at most |R| + strings(P) strings.
    if (r.size() + strings_in(p) < static_cast<std::size_t>(params_.quorum))
      return;

    std::uint32_t pivot = p.front();
    std::size_t best = 0;
    for (const auto* set : {&p, &x}) {
      for (auto u : *set) {
        const auto& nu = graph_.adjacency[u];
        std::size_t shared = 0;
        auto a = p.begin();
        auto b = nu.begin();
        while (a != p.end() && b != nu.end()) {
          if (*a < *b) {
            ++a;
          } else if (*b < *a) {
            ++b;
          } else {
            ++shared;
            ++a;
            ++b;
          }
        }
        if (shared > best) {
          best = shared;
          pivot = u;
        }
      }
    }
    Vertices branch;
    std::set_difference(p.begin(), p.end(), graph_.adjacency[pivot].begin(),
                        graph_.adjacency[pivot].end(),
                        std::back_inserter(branch));
    for (auto v : branch) {
      const auto& nv = graph_.adjacency[v];
      r.push_back(v);
      expand(r, intersect(p, nv), intersect(x, nv));
      r.pop_back();
      p.erase(std::lower_bound(p.begin(), p.end(), v));
      x.insert(std::lower_bound(x.begin(), x.end(), v), v);
    }
  }

  std::vector<AnchoredInterval> members_of(const Vertices& clique) const {
    std::vector<AnchoredInterval> members;
    for (auto v : clique) members.push_back(graph_.vertices[v]);
    std::sort(members.begin(), members.end());
    return members;
  }

  void report(const Vertices& r) {
    if (++out_.maximal_cliques > options_.max_cliques)
      throw ResourceError("clique enumeration exceeded " +
                          std::to_string(options_.max_cliques) +
                          " maximal cliques in the component of " +
                          describe(data_, graph_.vertices[first_]));
    if (r.size() < static_cast<std::size_t>(params_.quorum)) return;
    Vertices clique = r;
    std::sort(clique.begin(), clique.end());
    if (closed(data_, index_, members_of(clique))) {
      out_.closed_cliques.push_back(std::move(clique));
      return;
    }
    ++out_.non_closed;
    descend(clique);
  }

  // Closed sub-cliques missing 1..budget members, at least quorum in size.
  void descend(const Vertices& clique) {
    const auto size = static_cast<int>(clique.size());
    const int deepest = std::min(options_.descent_budget, size - params_.quorum);
    if (size - options_.descent_budget > params_.quorum) ++out_.truncated;
    std::vector<int> drop;
    auto visit = [&](auto& self, int from, int remaining) -> void {
      if (remaining == 0) {
        Vertices sub;
        for (int k = 0; k < size; ++k)
          if (std::find(drop.begin(), drop.end(), k) == drop.end())
            sub.push_back(clique[static_cast<std::size_t>(k)]);
        if (closed(data_, index_, members_of(sub)))
          out_.candidates.push_back(std::move(sub));
        return;
      }
      for (int k = from; k < size; ++k) {
        drop.push_back(k);
        self(self, k + 1, remaining - 1);
        drop.pop_back();
      }
    };
    for (int r = 1; r <= deepest; ++r) visit(visit, 0, r);
  }

  const AwciGraph& graph_;
  const Dataset& data_;
  const IntersectionIndex& index_;
  const SearchParams& params_;
  const AssembleOptions& options_;
  ComponentResult& out_;
  std::uint32_t first_ = 0;
};

std::vector<Vertices> components(const AwciGraph& graph) {
  std::vector<Vertices> out;
  std::vector<bool> seen(graph.size(), false);
  for (std::uint32_t s = 0; s < graph.size(); ++s) {
    if (seen[s]) continue;
    Vertices comp{s};
    seen[s] = true;
    for (std::size_t k = 0; k < comp.size(); ++k)
      for (auto u : graph.adjacency[comp[k]])
        if (!seen[u]) {
          seen[u] = true;
          comp.push_back(u);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace

std::size_t AwciGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& a : adjacency) total += a.size();
  return total / 2;
}

std::size_t AwciGraph::neighbour_strings(std::size_t v) const {
  std::size_t count = 0;
  std::size_t last = SIZE_MAX;
  for (auto u : adjacency[v]) {
    if (vertices[u].string != last) {
      ++count;
      last = vertices[u].string;
    }
  }
  return count;
}

std::size_t AwciGraph::find(const AnchoredInterval& interval) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), interval);
  if (it == vertices.end() || *it != interval) return size();
  return static_cast<std::size_t>(it - vertices.begin());
}

bool AwciGraph::adjacent(std::size_t a, std::size_t b) const {
  const auto& row = adjacency[a];
  return std::binary_search(row.begin(), row.end(),
                            static_cast<std::uint32_t>(b));
}

AwciGraph build_graph(std::span<const AwciPair> pairs, int quorum) {
  std::vector<AnchoredInterval> vertices;
  vertices.reserve(pairs.size() * 2);
  for (const auto& p : pairs) {
    vertices.push_back(p.left);
    vertices.push_back(p.right);
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()),
                 vertices.end());
  auto id = [&](const AnchoredInterval& v) {
    return static_cast<std::uint32_t>(
        std::lower_bound(vertices.begin(), vertices.end(), v) -
        vertices.begin());
  };
  std::vector<Vertices> adjacency(vertices.size());
  for (const auto& p : pairs) {
    if (p.left.string == p.right.string) continue;
    const auto a = id(p.left);
    const auto b = id(p.right);
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }
  for (auto& row : adjacency) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  std::vector<bool> keep(vertices.size(), true);
  return compact(std::move(vertices), std::move(adjacency), std::move(keep),
                 quorum);
}

AwciGraph induced_subgraph(const AwciGraph& graph,
                           const std::vector<bool>& keep, int quorum) {
  return compact(graph.vertices, graph.adjacency, keep, quorum);
}

AwciGraph prune_dominated_vertices(const AwciGraph& graph, const Dataset& data,
                                   const IntersectionIndex& index,
                                   int quorum) {
  std::vector<bool> keep(graph.size(), true);
  for (std::size_t v = 0; v < graph.size(); ++v) {
    const auto& iv = graph.vertices[v];
    const auto& nv = graph.adjacency[v];
    if (nv.empty()) continue;
    const auto& s = data[iv.string];
    bool dominated = false;
    for (int left = 0; left <= 1 && !dominated; ++left) {
      for (int right = 0; right <= 1 && !dominated; ++right) {
        if (left == 0 && right == 0) continue;
        const AnchoredInterval iu{iv.string, iv.i - left, iv.j + right};
        const auto u = graph.find(iu);
        if (u == graph.size()) continue;
        const auto& nu = graph.adjacency[u];
        if (!std::includes(nu.begin(), nu.end(), nv.begin(), nv.end()))
          continue;
        std::vector<int> extension;
        if (left) extension.push_back(iu.i);
        if (right) extension.push_back(iu.j);
        for (int p : extension) {
          if (!s.contains(p)) continue;
          const bool all = std::all_of(nv.begin(), nv.end(), [&](auto w) {
            return meets(index, iv.string, p, graph.vertices[w]);
          });
          if (all) {
            dominated = true;
            break;
          }
        }
      }
    }
    if (dominated) keep[v] = false;
  }
  return induced_subgraph(graph, keep, quorum);
}

AssembleResult maximal_closed_sets(const AwciGraph& graph, const Dataset& data,
                                   const SearchParams& params,
                                   const AssembleOptions& options) {
  AssembleResult result;
  if (graph.size() == 0) return result;
  const auto index = IntersectionIndex::build(data, options.threads);
  auto comps = components(graph);
  std::vector<ComponentResult> parts(comps.size());
  parallel_for(comps.size(), options.threads, [&](std::size_t c) {
    CliqueSearch search(graph, data, index, params, options, parts[c]);
    search.run(std::move(comps[c]));
  });

  std::set<Vertices> reported;
  std::vector<Vertices> candidates;
  for (auto& part : parts) {
    result.maximal_cliques += part.maximal_cliques;
    result.non_closed_cliques += part.non_closed;
    result.truncated_descents += part.truncated;
    reported.insert(part.closed_cliques.begin(), part.closed_cliques.end());
    candidates.insert(candidates.end(), part.candidates.begin(),
                      part.candidates.end());
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  auto contains = [](const Vertices& big, const Vertices& small) {
    return big.size() > small.size() &&
           std::includes(big.begin(), big.end(), small.begin(), small.end());
  };
  for (const auto& c : candidates) {
    if (reported.count(c)) continue;
    const bool covered =
        std::any_of(reported.begin(), reported.end(),
                    [&](const Vertices& r) { return contains(r, c); }) ||
        std::any_of(candidates.begin(), candidates.end(),
                    [&](const Vertices& o) { return contains(o, c); });
    if (covered) continue;
    ++result.descended_sets;
    reported.insert(c);
  }

  for (const auto& clique : reported) {
    std::vector<AnchoredInterval> members;
    for (auto v : clique) members.push_back(graph.vertices[v]);
    result.sets.push_back(describe_set(data, std::move(members), params.delta));
  }
  std::sort(result.sets.begin(), result.sets.end());
  return result;
}

AssembleResult find_maximal_closed_sets(const Dataset& data,
                                        const SearchParams& params,
                                        const PipelineOptions& options) {
  params.validate();
  if (data.size() < 2 || static_cast<std::size_t>(params.quorum) > data.size())
    return {};
  const auto index = IntersectionIndex::build(data, options.threads);
  std::optional<RidgeTables> tables;
  if (options.use_filter)
    tables = RidgeTables::build(data, index, params.delta, options.threads);
  EnumerateOptions enumerate;
  enumerate.use_filter = options.use_filter;
  enumerate.threads = options.threads;
  PairEnumerator enumerator(data, index, tables ? &*tables : nullptr, params,
                            enumerate);
  const auto pairs = enumerator.collect();
  auto graph = build_graph(pairs, params.quorum);
  if (options.prune)
    graph = prune_dominated_vertices(graph, data, index, params.quorum);
  auto assemble = options.assemble;
  assemble.threads = options.threads;
  return maximal_closed_sets(graph, data, params, assemble);
}

}  // namespace awci
