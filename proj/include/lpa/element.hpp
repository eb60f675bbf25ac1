#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lpa/errors.hpp"
#include "lpa/graph.hpp"
#include "lpa/scalar.hpp"

namespace lpa {

// One spanning-set monomial p.q*: a real path p and a ghost path q with a
// common range vertex. (trivial, trivial) at v is the vertex monomial v.
class Monomial {
public:
  static Monomial make(Path real, Path ghost) {
    if (!real.graph().same_graph(ghost.graph())) throw SemanticError("monomial parts from different graphs");
    if (real.range() != ghost.range())
      throw SemanticError("monomial parts must share their range vertex: " + real.str() + " vs " + ghost.str());
    return Monomial(std::move(real), std::move(ghost));
  }

  static Monomial vertex(const Graph& g, VertexId v) {
    return Monomial(Path::trivial(g, v), Path::trivial(g, v));
  }
  static Monomial real_path(const Path& p) { return Monomial(p, Path::trivial(p.graph(), p.range())); }
  static Monomial ghost_path(const Path& q) { return Monomial(Path::trivial(q.graph(), q.range()), q); }

  const Path& real() const { return real_; }
  const Path& ghost() const { return ghost_; }
  const Graph& graph() const { return real_.graph(); }

  bool is_vertex() const { return real_.is_trivial() && ghost_.is_trivial(); }
  std::size_t total_length() const { return real_.length() + ghost_.length(); }
  // Grading degree |p| - |q|.
  int degree() const { return static_cast<int>(real_.length()) - static_cast<int>(ghost_.length()); }

  VertexId left_vertex() const { return real_.source(); }    // s(p): acts from the left
  VertexId right_vertex() const { return ghost_.source(); }  // s(q): acts from the right

  Monomial involute() const { return Monomial(ghost_, real_); }

  bool operator==(const Monomial& o) const { return real_ == o.real_ && ghost_ == o.ghost_; }

  std::string str() const {
    if (is_vertex()) return graph().vertex_name(real_.source());
    std::string s;
    for (std::size_t i = 0; i < real_.length(); ++i) {
      if (!s.empty()) s += '.';
      s += graph().edge_name(real_.edge_at(i));
    }
    for (std::size_t i = ghost_.length(); i-- > 0;) {
      if (!s.empty()) s += '.';
      s += graph().edge_name(ghost_.edge_at(i));
      s += '*';
    }
    return s;
  }

private:
  Monomial(Path real, Path ghost) : real_(std::move(real)), ghost_(std::move(ghost)) {}
  Path real_;
  Path ghost_;
};

// Deterministic term order: total length, then real part, then ghost part.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.total_length() != b.total_length()) return a.total_length() < b.total_length();
    if (!(a.real() == b.real())) return path_less(a.real(), b.real());
    return path_less(a.ghost(), b.ghost());
  }
};

// Element of L(E) in canonical form: a finite K-weighted sum of monomials
// p.q* in which the CK2 junction has been rewritten away, i.e. no stored
// monomial has both parts nonempty and ending in the special edge of their
// shared source. Zero keeps its graph and field tag so mismatches stay
// detectable. Immutable value type.
template <Field K>
class Element {
public:
  using TermMap = std::map<Monomial, K, MonomialLess>;

  Element(const Graph& g, const K& one) : g_(g), one_(one.one()) {}

  static Element zero(const Graph& g, const K& one) { return Element(g, one); }

  static Element from_terms(const Graph& g, const K& one, const std::vector<std::pair<Monomial, K>>& raw) {
    Element r(g, one);
    TermMap acc;
    for (const auto& [m, c] : raw) {
      if (!m.graph().same_graph(g)) throw SemanticError("monomial from another graph");
      if (!c.same_field(one)) throw SemanticError("coefficient from another field");
      add_term(acc, m, c);
    }
    r.terms_ = normalize_terms(g, std::move(acc));
    return r;
  }

  const Graph& graph() const { return g_; }
  const K& one() const { return one_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  K coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? one_.zero() : it->second;
  }

  // max |p| + |q| over stored monomials.
  std::size_t degree() const {
    require_nonzero("degree");
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_length());
    return d;
  }
  // max |p| over stored monomials.
  std::size_t real_degree() const {
    require_nonzero("real degree");
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.real().length());
    return d;
  }

  bool is_only_real() const {
    for (const auto& [m, c] : terms_)
      if (!m.ghost().is_trivial()) return false;
    return true;
  }
  bool is_only_ghost() const {
    for (const auto& [m, c] : terms_)
      if (!m.real().is_trivial()) return false;
    return true;
  }

  Element operator+(const Element& o) const {
    check_compatible(o);
    Element r(g_, one_);
    r.terms_ = terms_;
    for (const auto& [m, c] : o.terms_) add_term(r.terms_, m, c);
    return r;  // summing canonical monomials cannot create a junction
  }

  Element operator-() const {
    Element r(g_, one_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  Element operator-(const Element& o) const { return *this + (-o); }

  Element scaled(const K& k) const {
    if (!k.same_field(one_)) throw SemanticError("scalar from another field");
    Element r(g_, one_);
    if (k.is_zero()) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * k);
    return r;
  }

  // Bilinear product; each monomial pair resolves through CK1 and the
  // result is renormalized (CK2).
  Element operator*(const Element& o) const {
    check_compatible(o);
    TermMap raw;
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_)
        if (auto m = monomial_product(ma, mb)) add_term(raw, *m, ca * cb);
    Element r(g_, one_);
    r.terms_ = normalize_terms(g_, std::move(raw));
    return r;
  }

  bool operator==(const Element& o) const {
    return g_.same_graph(o.g_) && one_.same_field(o.one_) && terms_ == o.terms_;
  }

  // Textual form accepted back by the expression parser: terms in canonical
  // order joined by " + ", coefficient omitted when 1, ghost edges starred
  // in reverse order. The zero element prints as "0".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      if (!s.empty()) s += " + ";
      if (!c.is_one()) {
        s += c.str();
        s += ' ';
      }
      s += m.str();
    }
    return s;
  }

private:
  void require_nonzero(const char* what) const {
    if (terms_.empty()) throw SemanticError(std::string(what) + " of the zero element is undefined");
  }

  void check_compatible(const Element& o) const {
    if (!g_.same_graph(o.g_)) throw SemanticError("elements over different graphs");
    if (!one_.same_field(o.one_)) throw SemanticError("elements over different fields");
  }

  static void add_term(TermMap& acc, const Monomial& m, const K& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = acc.emplace(m, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) acc.erase(it);
    }
  }

  // (p q*)(s t*): by CK1, q* s telescopes to a vertex exactly when one of
  // q, s is a prefix of the other, leaving (p u) t* or p (t u)*; any
  // mismatch kills the product.
  static std::optional<Monomial> monomial_product(const Monomial& a, const Monomial& b) {
    const Path& q = a.ghost();
    const Path& s = b.real();
    if (is_prefix(q, s)) {
      Path u = s.suffix_from(q.length());
      return Monomial::make(*concat(a.real(), u), b.ghost());
    }
    if (is_prefix(s, q)) {
      Path u = q.suffix_from(s.length());
      return Monomial::make(a.real(), *concat(b.ghost(), u));
    }
    return std::nullopt;
  }

  static bool is_prefix(const Path& a, const Path& b) {
    if (a.source() != b.source() || a.length() > b.length()) return false;
    for (std::size_t i = 0; i < a.length(); ++i)
      if (a.edge_at(i) != b.edge_at(i)) return false;
    return true;
  }

  // A monomial is reducible when both parts end in the special edge of
  // their common source vertex; CK2 oriented left-to-right replaces it by
  // the shortened monomial minus the sibling junctions, which are
  // irreducible at that position. Each step trades one reducible monomial
  // for one strictly shorter monomial plus equal-length irreducible ones,
  // so the rewrite terminates.
  static std::optional<EdgeId> reducible_junction(const Graph& g, const Monomial& m) {
    if (m.real().is_trivial() || m.ghost().is_trivial()) return std::nullopt;
    EdgeId last_real = m.real().edge_at(m.real().length() - 1);
    EdgeId last_ghost = m.ghost().edge_at(m.ghost().length() - 1);
    if (last_real != last_ghost) return std::nullopt;
    if (last_real != g.special_edge(g.source(last_real))) return std::nullopt;
    return last_real;
  }

  static TermMap normalize_terms(const Graph& g, TermMap raw) {
    std::vector<Monomial> work;
    work.reserve(raw.size());
    for (const auto& [m, c] : raw) work.push_back(m);
    while (!work.empty()) {
      Monomial m = work.back();
      work.pop_back();
      auto it = raw.find(m);
      if (it == raw.end()) continue;  // cancelled in the meantime
      auto gamma = reducible_junction(g, m);
      if (!gamma) continue;
      const K c = it->second;
      raw.erase(it);
      Monomial shorter = Monomial::make(m.real().prefix(m.real().length() - 1),
                                        m.ghost().prefix(m.ghost().length() - 1));
      add_term(raw, shorter, c);
      work.push_back(shorter);
      for (EdgeId e : g.out_edges(g.source(*gamma))) {
        if (e == *gamma) continue;
        Monomial sibling = Monomial::make(*concat(shorter.real(), Path::of_edges(g, {e})),
                                          *concat(shorter.ghost(), Path::of_edges(g, {e})));
        add_term(raw, sibling, -c);
      }
    }
    return raw;
  }

  Graph g_;
  K one_;
  TermMap terms_;
};

template <Field K>
Element<K> monomial_element(const Graph& g, const Monomial& m, const K& coeff) {
  return Element<K>::from_terms(g, coeff.one(), {{m, coeff}});
}

template <Field K>
Element<K> vertex_element(const Graph& g, VertexId v, const K& one) {
  return monomial_element(g, Monomial::vertex(g, v), one.one());
}

template <Field K>
Element<K> edge_element(const Graph& g, EdgeId e, const K& one) {
  return monomial_element(g, Monomial::real_path(Path::of_edges(g, {e})), one.one());
}

template <Field K>
Element<K> ghost_edge_element(const Graph& g, EdgeId e, const K& one) {
  return monomial_element(g, Monomial::ghost_path(Path::of_edges(g, {e})), one.one());
}

// p as the element p.(trivial)*.
template <Field K>
Element<K> path_element(const Path& p, const K& one) {
  return monomial_element(p.graph(), Monomial::real_path(p), one.one());
}

// q* as the element (trivial).q*.
template <Field K>
Element<K> ghost_path_element(const Path& q, const K& one) {
  return monomial_element(q.graph(), Monomial::ghost_path(q), one.one());
}

// The involution: linear extension of k p.q* -> k q.p*. Canonical form is
// preserved since the junction condition is symmetric in the two parts.
template <Field K>
Element<K> involution(const Element<K>& a) {
  std::vector<std::pair<Monomial, K>> raw;
  for (const auto& [m, c] : a.terms()) raw.emplace_back(m.involute(), c);
  return Element<K>::from_terms(a.graph(), a.one(), raw);
}

// Partition by grading degree |p| - |q|. Components sum to the input and
// are homogeneous.
template <Field K>
std::map<int, Element<K>> graded_components(const Element<K>& a) {
  std::map<int, Element<K>> parts;
  for (const auto& [m, c] : a.terms()) {
    auto [it, fresh] = parts.try_emplace(m.degree(), Element<K>::zero(a.graph(), a.one()));
    it->second = it->second + monomial_element(a.graph(), m, c);
  }
  return parts;
}

// Idempotent sum of vertices acting as a two-sided identity on every item:
// u = sum of all s(p), s(q) over the stored monomials of the items.
template <Field K>
Element<K> local_unit(std::span<const Element<K>> items) {
  if (items.empty()) throw SemanticError("local unit of an empty set");
  const Graph& g = items.front().graph();
  const K one = items.front().one();
  std::vector<bool> used(g.vertex_count(), false);
  for (const auto& a : items) {
    if (!a.graph().same_graph(g)) throw SemanticError("local unit across graphs");
    if (!a.one().same_field(one)) throw SemanticError("local unit across fields");
    if (a.is_zero()) throw SemanticError("local unit of a zero element");
    for (const auto& [m, c] : a.terms()) {
      used[m.left_vertex().index] = true;
      used[m.right_vertex().index] = true;
    }
  }
  Element<K> u = Element<K>::zero(g, one);
  for (std::uint32_t i = 0; i < g.vertex_count(); ++i)
    if (used[i]) u = u + vertex_element(g, VertexId{i}, one);
  return u;
}

template <Field K>
Element<K> local_unit(std::initializer_list<Element<K>> items) {
  return local_unit(std::span<const Element<K>>(items.begin(), items.size()));
}

// Sum of all vertices; the unit of L(E) for finite E.
template <Field K>
Element<K> full_unit(const Graph& g, const K& one) {
  Element<K> u = Element<K>::zero(g, one);
  for (VertexId v : g.all_vertices()) u = u + vertex_element(g, v, one);
  return u;
}

}  // namespace lpa
