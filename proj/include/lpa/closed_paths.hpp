#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "lpa/errors.hpp"
#include "lpa/graph.hpp"

namespace lpa {

struct Exit {
  std::size_t position;  // index i of the edge mu_i whose source emits the exit
  EdgeId edge;
};

// Smallest position, then lexicographically smallest edge e with
// s(e) = s(mu_i) and e != mu_i.
inline std::optional<Exit> find_exit(const Graph& g, const Path& mu) {
  if (mu.is_trivial()) throw SemanticError("exits are defined for paths of length >= 1");
  for (std::size_t i = 0; i < mu.length(); ++i)
    for (EdgeId e : g.out_edges(g.source(mu.edge_at(i))))
      if (e != mu.edge_at(i)) return Exit{i, e};
  return std::nullopt;
}

// A cycle has no exit exactly when every vertex on it emits a single edge,
// so exitless cycles are the cycles of the functional subgraph spanned by
// out-degree-1 vertices. One pass over that subgraph finds them in
// O(|E^0| + |E^1|).
inline std::optional<Cycle> exitless_cycle(const Graph& g) {
  const std::uint32_t n = g.vertex_count();
  enum class Mark : std::uint8_t { unseen, active, done };
  std::vector<Mark> mark(n, Mark::unseen);
  std::vector<std::uint32_t> pos_on_walk(n, 0);
  for (std::uint32_t start = 0; start < n; ++start) {
    if (mark[start] != Mark::unseen || g.out_edges(VertexId{start}).size() != 1) continue;
    std::vector<std::uint32_t> walk;
    std::uint32_t v = start;
    while (true) {
      if (g.out_edges(VertexId{v}).size() != 1 || mark[v] == Mark::done) break;
      if (mark[v] == Mark::active) {
        // Closed the walk: the cycle is the tail starting at v.
        std::vector<EdgeId> edges;
        for (std::uint32_t i = pos_on_walk[v]; i < walk.size(); ++i)
          edges.push_back(g.out_edges(VertexId{walk[i]}).front());
        return Cycle::canonical(Path::of_edges(g, std::move(edges)));
      }
      mark[v] = Mark::active;
      pos_on_walk[v] = static_cast<std::uint32_t>(walk.size());
      walk.push_back(v);
      v = g.range(g.out_edges(VertexId{v}).front()).index;
    }
    for (std::uint32_t w : walk) mark[w] = Mark::done;
  }
  return std::nullopt;
}

struct ConditionL {
  bool holds{};
  std::optional<Cycle> witness;  // an exitless cycle when holds is false
};

// Condition (L): every cycle has an exit.
inline ConditionL condition_L(const Graph& g) {
  auto c = exitless_cycle(g);
  if (c) return {false, std::move(c)};
  return {true, std::nullopt};
}

// All closed simple paths based at v of length <= max_len, i.e. paths with
// s(mu) = r(mu) = v that do not pass through v internally. Ordered by
// length, then lexicographically. The set can be infinite without the
// bound: a closed simple path may revisit vertices other than v.
inline std::vector<Path> enumerate_csp(const Graph& g, VertexId v, std::size_t max_len) {
  if (v.index >= g.vertex_count()) throw SemanticError("unknown vertex");
  if (max_len == 0) throw SemanticError("max_len must be positive");
  std::vector<Path> found;
  std::vector<EdgeId> stack;
  auto dfs = [&](auto&& self, VertexId at) -> void {
    for (EdgeId e : g.out_edges(at)) {
      stack.push_back(e);
      VertexId to = g.range(e);
      if (to == v)
        found.push_back(Path::of_edges(g, stack));
      else if (stack.size() < max_len)
        self(self, to);
      stack.pop_back();
    }
  };
  dfs(dfs, v);
  std::sort(found.begin(), found.end(), path_less);
  return found;
}

// Unique factorization of a closed path into closed simple paths: cut at
// every prefix that returns to the base.
inline std::vector<Path> factor_closed_path(const Graph& g, const Path& p) {
  if (p.is_trivial() || p.source() != p.range())
    throw SemanticError("factorization is defined for closed paths of length >= 1");
  const VertexId v = p.source();
  std::vector<Path> factors;
  std::size_t cut = 0;
  for (std::size_t t = 0; t < p.length(); ++t) {
    if (g.range(p.edge_at(t)) == v) {
      std::vector<EdgeId> seg(p.edges().begin() + cut, p.edges().begin() + t + 1);
      factors.push_back(Path::of_edges(g, std::move(seg)));
      cut = t + 1;
    }
  }
  return factors;
}

// The number of closed-simple factors of a closed path based at its source.
inline std::size_t return_degree(const Graph& g, const Path& p) { return factor_closed_path(g, p).size(); }

// Every cycle of the graph, one representative per rotation class, each
// starting at its smallest vertex. Exhaustive; intended for finite graphs
// and as a test oracle for the exitless-cycle scan.
inline std::vector<Cycle> simple_cycles(const Graph& g) {
  std::vector<Cycle> cycles;
  std::vector<EdgeId> stack;
  std::vector<bool> on_path(g.vertex_count(), false);
  // Anchor each cycle at its minimal vertex: only visit vertices > anchor.
  auto dfs = [&](auto&& self, VertexId anchor, VertexId at) -> void {
    for (EdgeId e : g.out_edges(at)) {
      VertexId to = g.range(e);
      stack.push_back(e);
      if (to == anchor)
        cycles.push_back(Cycle::of(Path::of_edges(g, stack)));
      else if (to > anchor && !on_path[to.index]) {
        on_path[to.index] = true;
        self(self, anchor, to);
        on_path[to.index] = false;
      }
      stack.pop_back();
    }
  };
  for (VertexId v : g.all_vertices()) {
    on_path[v.index] = true;
    dfs(dfs, v, v);
    on_path[v.index] = false;
  }
  std::sort(cycles.begin(), cycles.end(),
            [](const Cycle& a, const Cycle& b) { return path_less(a.path(), b.path()); });
  return cycles;
}

}  // namespace lpa
