#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lpa/errors.hpp"

namespace lpa {

// Handles into a Graph. Index order coincides with lexicographic id order,
// so sorting by handle sorts by id.
struct VertexId {
  std::uint32_t index{};
  auto operator<=>(const VertexId&) const = default;
};

struct EdgeId {
  std::uint32_t index{};
  auto operator<=>(const EdgeId&) const = default;
};

struct EdgeSpec {
  std::string id;
  std::string src;
  std::string rng;
};

// Finite directed graph E = (E^0, E^1, r, s). Immutable after construction;
// cheap to copy (shared representation). Parallel edges and loops are
// allowed. Vertices and edges are kept sorted by id.
class Graph {
public:
  Graph() = default;

  static Graph from_parts(std::vector<std::string> vertices, std::vector<EdgeSpec> edges) {
    auto impl = std::make_shared<Impl>();
    if (vertices.empty()) throw SemanticError("graph needs at least one vertex");
    std::sort(vertices.begin(), vertices.end());
    for (const auto& v : vertices) {
      require_id(v);
      if (!impl->vertex_lookup.emplace(v, static_cast<std::uint32_t>(impl->vertex_names.size())).second)
        throw SemanticError("duplicate vertex id: " + v);
      impl->vertex_names.push_back(v);
    }
    std::sort(edges.begin(), edges.end(), [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
    impl->out.resize(vertices.size());
    impl->in.resize(vertices.size());
    for (const auto& e : edges) {
      require_id(e.id);
      if (impl->vertex_lookup.count(e.id)) throw SemanticError("edge id collides with vertex id: " + e.id);
      if (!impl->edge_lookup.emplace(e.id, static_cast<std::uint32_t>(impl->edge_names.size())).second)
        throw SemanticError("duplicate edge id: " + e.id);
      auto s = impl->vertex_lookup.find(e.src);
      auto r = impl->vertex_lookup.find(e.rng);
      if (s == impl->vertex_lookup.end()) throw SemanticError("edge " + e.id + " has undeclared source " + e.src);
      if (r == impl->vertex_lookup.end()) throw SemanticError("edge " + e.id + " has undeclared range " + e.rng);
      EdgeId id{static_cast<std::uint32_t>(impl->edge_names.size())};
      impl->edge_names.push_back(e.id);
      impl->ends.emplace_back(s->second, r->second);
      impl->out[s->second].push_back(id);
      impl->in[r->second].push_back(id);
    }
    Graph g;
    g.impl_ = std::move(impl);
    return g;
  }

  // Graph file format: {"vertices": ["v1", ...],
  //                     "edges": [{"id": "e1", "src": "v1", "rng": "v2"}, ...]}
  static Graph from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("bad graph JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges") || !j["vertices"].is_array() ||
        !j["edges"].is_array())
      throw ParseError("graph JSON must be an object with \"vertices\" and \"edges\" arrays");
    std::vector<std::string> vertices;
    for (const auto& v : j["vertices"]) {
      if (!v.is_string()) throw ParseError("vertex entries must be strings");
      vertices.push_back(v.get<std::string>());
    }
    std::vector<EdgeSpec> edges;
    for (const auto& e : j["edges"]) {
      if (!e.is_object() || !e.contains("id") || !e.contains("src") || !e.contains("rng") || !e["id"].is_string() ||
          !e["src"].is_string() || !e["rng"].is_string())
        throw ParseError("edge entries must be objects with string \"id\", \"src\", \"rng\"");
      edges.push_back({e["id"].get<std::string>(), e["src"].get<std::string>(), e["rng"].get<std::string>()});
    }
    return from_parts(std::move(vertices), std::move(edges));
  }

  std::string to_json_text() const {
    nlohmann::ordered_json j;
    j["vertices"] = nlohmann::ordered_json::array();
    for (const auto& v : impl_->vertex_names) j["vertices"].push_back(v);
    j["edges"] = nlohmann::ordered_json::array();
    for (std::uint32_t i = 0; i < edge_count(); ++i) {
      nlohmann::ordered_json e;
      e["id"] = impl_->edge_names[i];
      e["src"] = impl_->vertex_names[impl_->ends[i].first];
      e["rng"] = impl_->vertex_names[impl_->ends[i].second];
      j["edges"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
  }

  bool valid() const { return impl_ != nullptr; }

  std::uint32_t vertex_count() const { return static_cast<std::uint32_t>(impl_->vertex_names.size()); }
  std::uint32_t edge_count() const { return static_cast<std::uint32_t>(impl_->edge_names.size()); }

  const std::string& vertex_name(VertexId v) const { return impl_->vertex_names[v.index]; }
  const std::string& edge_name(EdgeId e) const { return impl_->edge_names[e.index]; }

  std::optional<VertexId> find_vertex(std::string_view name) const {
    auto it = impl_->vertex_lookup.find(std::string(name));
    if (it == impl_->vertex_lookup.end()) return std::nullopt;
    return VertexId{it->second};
  }
  std::optional<EdgeId> find_edge(std::string_view name) const {
    auto it = impl_->edge_lookup.find(std::string(name));
    if (it == impl_->edge_lookup.end()) return std::nullopt;
    return EdgeId{it->second};
  }

  VertexId vertex(std::string_view name) const {
    auto v = find_vertex(name);
    if (!v) throw SemanticError("unknown vertex: " + std::string(name));
    return *v;
  }
  EdgeId edge(std::string_view name) const {
    auto e = find_edge(name);
    if (!e) throw SemanticError("unknown edge: " + std::string(name));
    return *e;
  }

  VertexId source(EdgeId e) const { return VertexId{impl_->ends[e.index].first}; }
  VertexId range(EdgeId e) const { return VertexId{impl_->ends[e.index].second}; }

  std::span<const EdgeId> out_edges(VertexId v) const { return impl_->out[v.index]; }
  std::span<const EdgeId> in_edges(VertexId v) const { return impl_->in[v.index]; }

  bool is_sink(VertexId v) const { return impl_->out[v.index].empty(); }
  bool is_source(VertexId v) const { return impl_->in[v.index].empty(); }

  std::vector<VertexId> all_vertices() const {
    std::vector<VertexId> vs;
    vs.reserve(vertex_count());
    for (std::uint32_t i = 0; i < vertex_count(); ++i) vs.push_back(VertexId{i});
    return vs;
  }
  std::vector<EdgeId> all_edges() const {
    std::vector<EdgeId> es;
    es.reserve(edge_count());
    for (std::uint32_t i = 0; i < edge_count(); ++i) es.push_back(EdgeId{i});
    return es;
  }

  std::vector<VertexId> sinks() const {
    std::vector<VertexId> r;
    for (auto v : all_vertices())
      if (is_sink(v)) r.push_back(v);
    return r;
  }
  std::vector<VertexId> sources() const {
    std::vector<VertexId> r;
    for (auto v : all_vertices())
      if (is_source(v)) r.push_back(v);
    return r;
  }

  // The distinguished out-edge used to orient the CK2 rewrite: the
  // lexicographically smallest edge emitted by v.
  EdgeId special_edge(VertexId v) const {
    if (is_sink(v)) throw SemanticError("special edge requested at sink " + vertex_name(v));
    return impl_->out[v.index].front();
  }

  bool same_graph(const Graph& o) const { return impl_ == o.impl_; }

private:
  static void require_id(const std::string& id) {
    if (id.empty() || !std::isalpha(static_cast<unsigned char>(id[0])))
      throw SemanticError("invalid id: \"" + id + "\" (want [A-Za-z][A-Za-z0-9_]*)");
    for (char c : id)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        throw SemanticError("invalid id: \"" + id + "\" (want [A-Za-z][A-Za-z0-9_]*)");
  }

  struct Impl {
    std::vector<std::string> vertex_names;  // sorted
    std::vector<std::string> edge_names;    // sorted
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ends;
    std::vector<std::vector<EdgeId>> out;  // ascending edge index = lex id order
    std::vector<std::vector<EdgeId>> in;
    std::unordered_map<std::string, std::uint32_t> vertex_lookup;
    std::unordered_map<std::string, std::uint32_t> edge_lookup;
  };

  std::shared_ptr<const Impl> impl_;
};

// Edge sequence mu_1...mu_n with r(mu_i) = s(mu_{i+1}), or a trivial path
// sitting at a single vertex. Paths remember their graph.
class Path {
public:
  static Path trivial(const Graph& g, VertexId v) { return Path(g, v, {}); }

  static Path of_edges(const Graph& g, std::vector<EdgeId> edges) {
    if (edges.empty()) throw SemanticError("edge path needs at least one edge");
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
      if (g.range(edges[i]) != g.source(edges[i + 1]))
        throw SemanticError("non-composable edges: " + g.edge_name(edges[i]) + " then " + g.edge_name(edges[i + 1]));
    const VertexId base = g.source(edges.front());
    return Path(g, base, std::move(edges));
  }

  static Path of_names(const Graph& g, std::initializer_list<const char*> names) {
    std::vector<EdgeId> edges;
    for (const char* n : names) edges.push_back(g.edge(n));
    return of_edges(g, std::move(edges));
  }

  const Graph& graph() const { return g_; }
  VertexId source() const { return base_; }
  VertexId range() const { return edges_.empty() ? base_ : g_.range(edges_.back()); }
  std::size_t length() const { return edges_.size(); }
  bool is_trivial() const { return edges_.empty(); }
  std::span<const EdgeId> edges() const { return edges_; }
  EdgeId edge_at(std::size_t i) const { return edges_[i]; }

  // Sub-path of the first n edges.
  Path prefix(std::size_t n) const {
    return Path(g_, base_, std::vector<EdgeId>(edges_.begin(), edges_.begin() + n));
  }
  // Sub-path dropping the first n edges; trivial at the cut vertex when n = length.
  Path suffix_from(std::size_t n) const {
    VertexId start = n == 0 ? base_ : g_.range(edges_[n - 1]);
    return Path(g_, start, std::vector<EdgeId>(edges_.begin() + n, edges_.end()));
  }

  bool operator==(const Path& o) const {
    return g_.same_graph(o.g_) && base_ == o.base_ && edges_ == o.edges_;
  }

  std::string str() const {
    if (edges_.empty()) return g_.vertex_name(base_);
    std::string s;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (i) s += '.';
      s += g_.edge_name(edges_[i]);
    }
    return s;
  }

private:
  Path(const Graph& g, VertexId base, std::vector<EdgeId> edges)
      : g_(g), base_(base), edges_(std::move(edges)) {}

  Graph g_;
  VertexId base_;  // source vertex; the whole path when edges are empty
  std::vector<EdgeId> edges_;
};

// a.b when range(a) = source(b), otherwise nothing.
inline std::optional<Path> concat(const Path& a, const Path& b) {
  if (!a.graph().same_graph(b.graph())) throw SemanticError("concat across graphs");
  if (a.range() != b.source()) return std::nullopt;
  if (a.is_trivial()) return b;
  if (b.is_trivial()) return a;
  std::vector<EdgeId> edges(a.edges().begin(), a.edges().end());
  edges.insert(edges.end(), b.edges().begin(), b.edges().end());
  return Path::of_edges(a.graph(), std::move(edges));
}

// Total order: length, then edge ids lexicographically, then base vertex.
inline bool path_less(const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  for (std::size_t i = 0; i < a.length(); ++i)
    if (a.edge_at(i) != b.edge_at(i)) return a.edge_at(i) < b.edge_at(i);
  return a.source() < b.source();
}

// Closed path s(mu) = r(mu) whose edge sources are pairwise distinct.
class Cycle {
public:
  static Cycle of(Path p) {
    if (p.length() == 0) throw SemanticError("cycle must have length >= 1");
    if (p.source() != p.range()) throw SemanticError("cycle must be closed");
    for (std::size_t i = 0; i < p.length(); ++i)
      for (std::size_t j = i + 1; j < p.length(); ++j)
        if (p.graph().source(p.edge_at(i)) == p.graph().source(p.edge_at(j)))
          throw SemanticError("cycle revisits a vertex");
    return Cycle(std::move(p));
  }

  // Rotate so the cycle starts at its lexicographically smallest vertex.
  static Cycle canonical(const Path& p) {
    Cycle c = of(p);
    const Graph& g = p.graph();
    std::size_t best = 0;
    for (std::size_t i = 1; i < p.length(); ++i)
      if (g.source(p.edge_at(i)) < g.source(p.edge_at(best))) best = i;
    if (best == 0) return c;
    std::vector<EdgeId> rotated;
    for (std::size_t i = 0; i < p.length(); ++i) rotated.push_back(p.edge_at((best + i) % p.length()));
    return Cycle(Path::of_edges(g, std::move(rotated)));
  }

  const Path& path() const { return p_; }
  VertexId base() const { return p_.source(); }
  bool operator==(const Cycle& o) const { return p_ == o.p_; }

private:
  explicit Cycle(Path p) : p_(std::move(p)) {}
  Path p_;
};

// Standard example families.

// n vertices v1..vn in a row, edges ei: vi -> v(i+1).
inline Graph line_graph(int n) {
  if (n < 1) throw SemanticError("line graph needs n >= 1");
  std::vector<std::string> vs;
  std::vector<EdgeSpec> es;
  for (int i = 1; i <= n; ++i) vs.push_back("v" + std::to_string(i));
  for (int i = 1; i < n; ++i)
    es.push_back({"e" + std::to_string(i), "v" + std::to_string(i), "v" + std::to_string(i + 1)});
  return Graph::from_parts(std::move(vs), std::move(es));
}

// n vertices v1..vn with edges forming a single cycle.
inline Graph cycle_graph(int n) {
  if (n < 1) throw SemanticError("cycle graph needs n >= 1");
  std::vector<std::string> vs;
  std::vector<EdgeSpec> es;
  for (int i = 1; i <= n; ++i) vs.push_back("v" + std::to_string(i));
  for (int i = 1; i <= n; ++i)
    es.push_back({"e" + std::to_string(i), "v" + std::to_string(i), "v" + std::to_string(i % n + 1)});
  return Graph::from_parts(std::move(vs), std::move(es));
}

// Single vertex v with one loop x.
inline Graph loop_graph() { return Graph::from_parts({"v"}, {{"x", "v", "v"}}); }

// Single vertex v with n loops y1..yn.
inline Graph rose_graph(int n) {
  if (n < 1) throw SemanticError("rose graph needs n >= 1");
  std::vector<EdgeSpec> es;
  for (int i = 1; i <= n; ++i) es.push_back({"y" + std::to_string(i), "v", "v"});
  return Graph::from_parts({"v"}, std::move(es));
}

}  // namespace lpa
