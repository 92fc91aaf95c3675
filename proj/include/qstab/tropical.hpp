#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "monoid.hpp"
#include "partitions.hpp"

namespace qstab {

struct Vertex {
  int id = 0;
  int genus = 0;
  /// Subdivision point introduced by an operation rather than present in the input.
  bool synthetic = false;
  bool operator==(const Vertex&) const = default;
};

/// Unordered pair of endpoints; a == b is a loop.
struct Edge {
  int a = 0;
  int b = 0;
  MonoidElement length;
  bool is_loop() const { return a == b; }
  bool operator==(const Edge&) const = default;
};

/// Marking `marking` sits on vertex `root`. Leg slopes are always 1.
struct Leg {
  int marking = 0;
  int root = 0;
  bool operator==(const Leg&) const = default;
};

/// An n-marked tropical curve with edge lengths in the free monoid on
/// `generators`. Flags, root map and involution are encoded as endpoint pairs.
class TropicalCurve {
 public:
  TropicalCurve() = default;

  TropicalCurve(std::vector<std::string> generators, std::vector<Vertex> vertices, std::vector<Edge> edges, std::vector<Leg> legs)
      : generators_(std::move(generators)), vertices_(std::move(vertices)), edges_(std::move(edges)), legs_(std::move(legs)) {
    std::set<std::string> gens(generators_.begin(), generators_.end());
    if (gens.size() != generators_.size()) throw ArgumentError("duplicate generator name");
    std::sort(vertices_.begin(), vertices_.end(), [](const Vertex& x, const Vertex& y) { return x.id < y.id; });
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (i > 0 && vertices_[i].id == vertices_[i - 1].id) throw ArgumentError("duplicate vertex id " + std::to_string(vertices_[i].id));
      if (vertices_[i].genus < 0) throw ArgumentError("negative vertex genus");
    }
    for (auto& e : edges_) {
      if (e.a > e.b) std::swap(e.a, e.b);
      vertex_index(e.a);
      vertex_index(e.b);
      if (e.length.is_zero()) throw ArgumentError("edge " + std::to_string(e.a) + "-" + std::to_string(e.b) + " has zero length");
      for (const auto& [g, c] : e.length.coefficients())
        if (!gens.contains(g)) throw ArgumentError("edge length uses undeclared generator " + g);
    }
    std::sort(legs_.begin(), legs_.end(), [](const Leg& x, const Leg& y) { return x.marking < y.marking; });
    for (std::size_t i = 0; i < legs_.size(); ++i) {
      if (legs_[i].marking != static_cast<int>(i) + 1)
        throw ArgumentError("markings must be exactly 1.." + std::to_string(legs_.size()));
      vertex_index(legs_[i].root);
    }
  }

  int n() const { return static_cast<int>(legs_.size()); }
  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Leg>& legs() const { return legs_; }

  std::size_t vertex_index(int id) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id, [](const Vertex& v, int x) { return v.id < x; });
    if (it == vertices_.end() || it->id != id) throw ArgumentError("unknown vertex id " + std::to_string(id));
    return static_cast<std::size_t>(it - vertices_.begin());
  }
  const Vertex& vertex(int id) const { return vertices_[vertex_index(id)]; }
  bool has_vertex(int id) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), Vertex{id}, [](const Vertex& x, const Vertex& y) { return x.id < y.id; });
  }

  /// Legs plus edge ends; a loop contributes 2.
  int valence(int id) const {
    int v = 0;
    for (const auto& e : edges_) v += (e.a == id) + (e.b == id);
    for (const auto& l : legs_) v += l.root == id;
    return v;
  }

  std::vector<int> markings_at(int id) const {
    std::vector<int> out;
    for (const auto& l : legs_)
      if (l.root == id) out.push_back(l.marking);
    return out;
  }

  bool operator==(const TropicalCurve&) const = default;

 private:
  std::vector<std::string> generators_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<Leg> legs_;
};

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

inline std::size_t component_count(const TropicalCurve& g) {
  UnionFind uf(g.vertices().size());
  std::size_t count = g.vertices().size();
  for (const auto& e : g.edges()) count -= uf.unite(g.vertex_index(e.a), g.vertex_index(e.b));
  return count;
}

}  // namespace detail

inline bool is_connected(const TropicalCurve& g) { return !g.vertices().empty() && detail::component_count(g) == 1; }

/// First Betti number plus the vertex genera.
inline int genus(const TropicalCurve& g) {
  int total = static_cast<int>(g.edges().size()) - static_cast<int>(g.vertices().size()) + static_cast<int>(detail::component_count(g));
  for (const auto& v : g.vertices()) total += v.genus;
  return total;
}

inline bool is_stable(const TropicalCurve& g) {
  if (!is_connected(g)) return false;
  if (g.vertices().size() == 1 && g.vertices()[0].genus == 1 && g.edges().empty() && g.legs().empty()) return false;
  for (const auto& v : g.vertices())
    if (v.genus == 0 && g.valence(v.id) < 3) return false;
  return true;
}

inline void require_genus_one(const TropicalCurve& g, const char* what) {
  if (!is_connected(g)) throw UnsupportedError(std::string(what) + " needs a connected curve");
  if (genus(g) != 1) throw UnsupportedError(std::string(what) + " needs a curve of genus 1, got genus " + std::to_string(genus(g)));
}

/// Minimal connected vertex-induced subgraph of genus 1: the genus-1 vertex or
/// the vertices of the unique cycle. Sorted vertex ids.
inline std::vector<int> core_vertices(const TropicalCurve& g) {
  require_genus_one(g, "core");
  for (const auto& v : g.vertices())
    if (v.genus == 1) return {v.id};
  std::map<int, int> degree;
  for (const auto& v : g.vertices()) degree[v.id] = 0;
  for (const auto& e : g.edges()) {
    ++degree[e.a];
    ++degree[e.b];
  }
  std::set<int> alive;
  for (const auto& v : g.vertices()) alive.insert(v.id);
  bool pruned = true;
  while (pruned) {
    pruned = false;
    for (auto it = alive.begin(); it != alive.end();) {
      if (degree[*it] <= 1) {
        const int id = *it;
        for (const auto& e : g.edges()) {
          if (e.a == id && alive.contains(e.b) && e.b != id) --degree[e.b];
          if (e.b == id && alive.contains(e.a) && e.a != id) --degree[e.a];
        }
        it = alive.erase(it);
        pruned = true;
      } else {
        ++it;
      }
    }
  }
  return {alive.begin(), alive.end()};
}

/// Indices of edges with both ends in the core.
inline std::vector<std::size_t> core_edges(const TropicalCurve& g) {
  const auto core = core_vertices(g);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto& e = g.edges()[i];
    if (std::binary_search(core.begin(), core.end(), e.a) && std::binary_search(core.begin(), core.end(), e.b)) out.push_back(i);
  }
  return out;
}

/// Distance from the core: 0 on core vertices, otherwise the sum of edge
/// lengths along the unique path from the core.
inline std::map<int, MonoidElement> radial_distance(const TropicalCurve& g) {
  const auto core = core_vertices(g);
  std::map<int, MonoidElement> lambda;
  std::vector<int> frontier(core.begin(), core.end());
  for (int c : core) lambda[c] = MonoidElement{};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int v : frontier) {
      for (const auto& e : g.edges()) {
        if (e.is_loop()) continue;
        int other;
        if (e.a == v) other = e.b;
        else if (e.b == v) other = e.a;
        else continue;
        if (lambda.contains(other)) continue;
        lambda[other] = lambda[v] + e.length;
        next.push_back(other);
      }
    }
    frontier = std::move(next);
  }
  return lambda;
}

struct RadialData {
  /// Distinct nonzero values of the radial distance, strictly increasing.
  std::vector<MonoidElement> radii;
  std::vector<MonoidElement> core_edge_lengths;
  /// Length monoid freely generated by the radius differences and core edge lengths.
  bool basic = false;
};

class NotRadiallyAligned : public UnsupportedError {
 public:
  NotRadiallyAligned(int v, int w, const MonoidElement& lv, const MonoidElement& lw)
      : UnsupportedError("not radially aligned: vertex " + std::to_string(v) + " at " + lv.to_string() + " and vertex " +
                         std::to_string(w) + " at " + lw.to_string() + " are incomparable"),
        first(v),
        second(w) {}
  int first;
  int second;
};

/// A pair of vertices whose radial distances are incomparable, if any.
inline std::optional<std::pair<int, int>> alignment_witness(const TropicalCurve& g) {
  const auto lambda = radial_distance(g);
  for (auto a = lambda.begin(); a != lambda.end(); ++a)
    for (auto b = std::next(a); b != lambda.end(); ++b)
      if (!comparable(a->second, b->second)) return std::pair{a->first, b->first};
  return std::nullopt;
}

inline bool single_generator(const MonoidElement& m) { return m.coefficients().size() == 1 && m.coefficients().begin()->second == 1; }

inline RadialData radial_structure(const TropicalCurve& g) {
  const auto lambda = radial_distance(g);
  if (auto w = alignment_witness(g)) throw NotRadiallyAligned(w->first, w->second, lambda.at(w->first), lambda.at(w->second));
  RadialData data;
  std::set<MonoidElement> distinct;
  for (const auto& [v, value] : lambda)
    if (!value.is_zero()) distinct.insert(value);
  data.radii.assign(distinct.begin(), distinct.end());
  std::sort(data.radii.begin(), data.radii.end(), monoid_less);
  for (auto i : core_edges(g)) data.core_edge_lengths.push_back(g.edges()[i].length);

  std::vector<MonoidElement> basis;
  MonoidElement previous;
  for (const auto& r : data.radii) {
    basis.push_back(monoid_difference(r, previous));
    previous = r;
  }
  basis.insert(basis.end(), data.core_edge_lengths.begin(), data.core_edge_lengths.end());
  std::set<std::string> names;
  bool basic = basis.size() == g.generators().size();
  for (const auto& b : basis) {
    if (!basic) break;
    if (!single_generator(b)) basic = false;
    else basic = names.insert(b.coefficients().begin()->first).second;
  }
  data.basic = basic;
  return data;
}

/// Strictly increasing chain of non-discrete partitions.
class PartitionChain {
 public:
  PartitionChain() = default;
  PartitionChain(int n, std::vector<SetPartition> chain) : n_(n), chain_(std::move(chain)) {
    if (auto problem = check(n_, chain_)) throw ArgumentError(*problem);
  }

  static std::optional<std::string> check(int n, const std::vector<SetPartition>& chain) {
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (chain[i].n() != n) return "chain entry " + chain[i].to_string() + " is not a partition of 1.." + std::to_string(n);
      if (chain[i].is_discrete()) return "chain contains the discrete partition";
      if (i > 0 && !strictly_coarser(chain[i - 1], chain[i]))
        return "chain not strict: " + chain[i - 1].to_string() + " is not strictly coarser than " + chain[i].to_string();
    }
    return std::nullopt;
  }

  int n() const { return n_; }
  const std::vector<SetPartition>& partitions() const { return chain_; }
  std::size_t size() const { return chain_.size(); }
  bool empty() const { return chain_.empty(); }
  const SetPartition& operator[](std::size_t i) const { return chain_[i]; }

  PartitionChain without(std::size_t index) const {
    auto copy = chain_;
    copy.erase(copy.begin() + static_cast<std::ptrdiff_t>(index));
    return PartitionChain(n_, std::move(copy));
  }

  /// "1234 < 12|34 < 12|3|4" (commas inside blocks once n >= 10).
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < chain_.size(); ++i) {
      if (i) out += " < ";
      const auto& blocks = chain_[i].blocks();
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (b) out += '|';
        for (std::size_t k = 0; k < blocks[b].size(); ++k) {
          if (k && n_ >= 10) out += ',';
          out += std::to_string(blocks[b][k]);
        }
      }
    }
    return out;
  }

  auto operator<=>(const PartitionChain&) const = default;

 private:
  int n_ = 0;
  std::vector<SetPartition> chain_;
};

/// Every strict chain (including the empty one) of non-discrete partitions of 1..n.
inline std::vector<PartitionChain> enumerate_chains(int n) {
  auto parts = enumerate_partitions(n);
  std::erase_if(parts, [](const SetPartition& p) { return p.is_discrete(); });
  std::vector<PartitionChain> out;
  std::vector<SetPartition> current;
  auto recurse = [&](auto&& self) -> void {
    out.emplace_back(n, current);
    for (const auto& p : parts) {
      if (!current.empty() && !strictly_coarser(current.back(), p)) continue;
      current.push_back(p);
      self(self);
      current.pop_back();
    }
  };
  recurse(recurse);
  return out;
}

class InvalidRadius : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// part(ρ): markings grouped by the connected components of the curve cut at
/// radial distance ρ with the part closer to the core than ρ removed. A leg
/// rooted closer than ρ survives as its own component.
inline SetPartition partition_at_radius(const TropicalCurve& g, const MonoidElement& rho) {
  const auto lambda = radial_distance(g);
  for (const auto& [v, value] : lambda)
    if (!comparable(value, rho))
      throw InvalidRadius("radius " + rho.to_string() + " is incomparable with the distance " + value.to_string() + " of vertex " + std::to_string(v));
  detail::UnionFind uf(g.vertices().size());
  auto kept = [&](int id) { return monoid_leq(rho, lambda.at(id)); };
  for (const auto& e : g.edges())
    if (kept(e.a) && kept(e.b)) uf.unite(g.vertex_index(e.a), g.vertex_index(e.b));
  std::vector<int> labels(g.n());
  const int offset = static_cast<int>(g.vertices().size());
  for (const auto& l : g.legs())
    labels[l.marking - 1] = kept(l.root) ? static_cast<int>(uf.find(g.vertex_index(l.root))) : offset + l.marking;
  return SetPartition::from_labels(labels);
}

/// (part(ρ₁), …, part(ρ_k)); throws InvariantViolation if the chain is not strict.
inline PartitionChain partition_type(const TropicalCurve& g) {
  const auto data = radial_structure(g);
  std::vector<SetPartition> chain;
  for (const auto& r : data.radii) chain.push_back(partition_at_radius(g, r));
  if (auto problem = PartitionChain::check(g.n(), chain)) throw InvariantViolation("partition type: " + *problem);
  return PartitionChain(g.n(), std::move(chain));
}

/// Weighted edge contraction along a monoid map: lengths are pushed forward,
/// edges of image length zero are contracted, and each merged vertex receives
/// the genus of the contracted subgraph (sum of genera plus its first Betti number).
inline TropicalCurve contract(const TropicalCurve& g, const MonoidMap& phi) {
  const std::size_t nv = g.vertices().size();
  detail::UnionFind uf(nv);
  std::vector<MonoidElement> lengths;
  for (const auto& e : g.edges()) {
    lengths.push_back(phi(e.length));
    if (lengths.back().is_zero()) uf.unite(g.vertex_index(e.a), g.vertex_index(e.b));
  }
  std::map<std::size_t, int> class_genus, class_vertices, class_edges, class_id;
  for (std::size_t i = 0; i < nv; ++i) {
    const auto root = uf.find(i);
    class_genus[root] += g.vertices()[i].genus;
    ++class_vertices[root];
    if (!class_id.contains(root)) class_id[root] = g.vertices()[i].id;
  }
  for (std::size_t k = 0; k < g.edges().size(); ++k)
    if (lengths[k].is_zero()) ++class_edges[uf.find(g.vertex_index(g.edges()[k].a))];

  std::vector<Vertex> vertices;
  for (const auto& [root, id] : class_id) {
    Vertex v;
    v.id = id;
    v.genus = class_genus[root] + class_edges[root] - class_vertices[root] + 1;
    v.synthetic = class_vertices[root] == 1 && g.vertices()[root].synthetic;
    vertices.push_back(v);
  }
  auto image = [&](int id) { return class_id[uf.find(g.vertex_index(id))]; };
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < g.edges().size(); ++k)
    if (!lengths[k].is_zero()) edges.push_back({image(g.edges()[k].a), image(g.edges()[k].b), lengths[k]});
  std::vector<Leg> legs;
  for (const auto& l : g.legs()) legs.push_back({l.marking, image(l.root)});
  return TropicalCurve(phi.target_generators, std::move(vertices), std::move(edges), std::move(legs));
}

/// Face contraction setting each generator in `killed` to zero.
inline TropicalCurve face_contraction(const TropicalCurve& g, const std::vector<std::string>& killed) {
  return contract(g, MonoidMap::face(g.generators(), killed));
}

/// Removes unmarked genus-0 leaves, smooths unmarked genus-0 vertices of
/// valence 2 (adding the two lengths) and pushes a lone leg on a genus-0
/// valence-2 vertex onto its neighbour, until the curve is stable. Vertices are
/// visited in `order` (default: increasing id); the result does not depend on it.
inline TropicalCurve stabilize(const TropicalCurve& g, std::vector<int> order = {}) {
  require_genus_one(g, "stabilize");
  std::map<int, Vertex> vertices;
  for (const auto& v : g.vertices()) vertices[v.id] = v;
  std::vector<Edge> edges = g.edges();
  std::vector<Leg> legs = g.legs();
  if (order.empty())
    for (const auto& v : g.vertices()) order.push_back(v.id);

  auto valence = [&](int id) {
    int val = 0;
    for (const auto& e : edges) val += (e.a == id) + (e.b == id);
    for (const auto& l : legs) val += l.root == id;
    return val;
  };
  auto fail = [](const std::string& why) { throw UnsupportedError("curve cannot be stabilized: " + why); };

  bool changed = true;
  while (changed) {
    changed = false;
    for (int id : order) {
      if (!vertices.contains(id)) continue;
      const Vertex& v = vertices[id];
      const int val = valence(id);
      if (v.genus > 0) {
        if (v.genus == 1 && val == 0) fail("isolated genus-one vertex");
        continue;
      }
      if (val >= 3) continue;
      std::vector<std::size_t> incident;
      for (std::size_t k = 0; k < edges.size(); ++k)
        if (edges[k].a == id || edges[k].b == id) incident.push_back(k);
      std::vector<std::size_t> own_legs;
      for (std::size_t k = 0; k < legs.size(); ++k)
        if (legs[k].root == id) own_legs.push_back(k);

      if (val == 0) fail("isolated genus-zero vertex " + std::to_string(id));
      if (incident.size() == 1 && edges[incident[0]].is_loop()) fail("lone loop at vertex " + std::to_string(id));
      if (incident.empty()) fail("genus-zero vertex " + std::to_string(id) + " carries only legs");
      if (val == 1) {
        edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(incident[0]));
      } else if (own_legs.size() == 1) {
        const auto& e = edges[incident[0]];
        legs[own_legs[0]].root = e.a == id ? e.b : e.a;
        edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(incident[0]));
      } else {
        const Edge first = edges[incident[0]];
        const Edge second = edges[incident[1]];
        const int u = first.a == id ? first.b : first.a;
        const int w = second.a == id ? second.b : second.a;
        edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(incident[1]));
        edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(incident[0]));
        edges.push_back({std::min(u, w), std::max(u, w), first.length + second.length});
      }
      vertices.erase(id);
      changed = true;
      break;
    }
  }
  std::vector<Vertex> out;
  for (auto& [id, v] : vertices) out.push_back(v);
  return TropicalCurve(g.generators(), std::move(out), std::move(edges), std::move(legs));
}

/// Isomorphism fixing generator names and markings: a genus- and
/// leg-preserving vertex bijection carrying the multiset of edge lengths
/// between every pair of vertices onto the corresponding multiset.
inline bool isomorphic(const TropicalCurve& x, const TropicalCurve& y) {
  if (x.n() != y.n() || x.vertices().size() != y.vertices().size() || x.edges().size() != y.edges().size()) return false;
  if (std::set(x.generators().begin(), x.generators().end()) != std::set(y.generators().begin(), y.generators().end())) return false;
  const std::size_t nv = x.vertices().size();
  auto between = [](const TropicalCurve& g, int a, int b) {
    std::multiset<MonoidElement> out;
    for (const auto& e : g.edges())
      if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) out.insert(e.length);
    return out;
  };
  std::vector<int> image(nv, -1);
  std::vector<char> used(nv, 0);
  auto recurse = [&](auto&& self, std::size_t i) -> bool {
    if (i == nv) return true;
    const auto& v = x.vertices()[i];
    for (std::size_t j = 0; j < nv; ++j) {
      if (used[j]) continue;
      const auto& w = y.vertices()[j];
      if (v.genus != w.genus || x.markings_at(v.id) != y.markings_at(w.id)) continue;
      bool ok = between(x, v.id, v.id) == between(y, w.id, w.id);
      for (std::size_t k = 0; k < i && ok; ++k)
        ok = between(x, v.id, x.vertices()[k].id) == between(y, w.id, y.vertices()[static_cast<std::size_t>(image[k])].id);
      if (!ok) continue;
      image[i] = static_cast<int>(j);
      used[j] = 1;
      if (self(self, i + 1)) return true;
      used[j] = 0;
    }
    return false;
  };
  return recurse(recurse, 0);
}

struct AutomorphismInfo {
  int order = 1;
  std::string description;
};

/// Automorphism group of a basic radially aligned curve: the only possible
/// non-identity symmetry reverses a self-loop core or swaps the two edges of
/// a two-vertex core cycle.
inline AutomorphismInfo automorphisms(const TropicalCurve& g) {
  if (!radial_structure(g).basic) throw UnsupportedError("automorphisms are only classified for basic radially aligned curves");
  const auto core = core_vertices(g);
  const auto cedges = core_edges(g);
  if (core.size() == 1 && cedges.size() == 1) return {2, "reversal of the core loop"};
  if (core.size() == 2 && cedges.size() == 2) return {2, "exchange of the two core edges"};
  return {1, "trivial"};
}

/// Shape of the core of a test curve. A smooth core is one genus-1 vertex; a
/// cycle core is a ring of `cycle_length` rational vertices, and `attachment`
/// names the ring position carrying the subtree of each block of the first
/// partition (each marking, for the empty chain).
struct CoreKind {
  int cycle_length = 0;
  std::vector<int> attachment;

  static CoreKind smooth() { return {}; }
  static CoreKind cycle(int length, std::vector<int> attachment = {}) { return {length, std::move(attachment)}; }
  bool is_smooth() const { return cycle_length == 0; }

  std::string to_string() const {
    if (is_smooth()) return "smooth";
    std::string out = "cycle:" + std::to_string(cycle_length);
    if (!attachment.empty()) {
      out += ':';
      for (std::size_t i = 0; i < attachment.size(); ++i) out += (i ? "," : "") + std::to_string(attachment[i]);
    }
    return out;
  }
  auto operator<=>(const CoreKind&) const = default;
};

inline std::string radius_generator(std::size_t i) { return "e" + std::to_string(i); }
inline std::string core_generator(std::size_t j) { return "d" + std::to_string(j); }

/// The unstabilized nodal model of a test curve: a core, one vertex per block
/// of each partition of the chain joined to its parent block's vertex by an
/// edge of length e_i, and the markings on the vertices of the last layer.
inline TropicalCurve build_raw_test_curve(const PartitionChain& chain, const CoreKind& core) {
  const int n = chain.n();
  const std::size_t k = chain.size();
  const std::size_t top_blocks = k == 0 ? static_cast<std::size_t>(n) : chain[0].block_count();
  std::vector<int> attach = core.attachment;
  if (!core.is_smooth()) {
    if (core.cycle_length < 1) throw ArgumentError("cycle core needs at least one vertex");
    if (attach.empty()) {
      if (top_blocks < static_cast<std::size_t>(core.cycle_length))
        throw ArgumentError("cycle of length " + std::to_string(core.cycle_length) + " needs at least that many attached subtrees");
      for (std::size_t b = 0; b < top_blocks; ++b) attach.push_back(std::min<int>(static_cast<int>(b), core.cycle_length - 1));
    }
    if (attach.size() != top_blocks) throw ArgumentError("core attachment must list one ring position per top-level subtree");
    std::vector<char> hit(core.cycle_length, 0);
    for (int a : attach) {
      if (a < 0 || a >= core.cycle_length) throw ArgumentError("core attachment position out of range");
      hit[a] = 1;
    }
    for (char h : hit)
      if (!h) throw ArgumentError("every ring vertex of a cycle core needs an attached subtree");
  }

  std::vector<std::string> generators;
  for (std::size_t i = 1; i <= k; ++i) generators.push_back(radius_generator(i));
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Leg> legs;
  int next_id = 0;
  if (core.is_smooth()) {
    vertices.push_back({next_id++, 1, false});
  } else {
    for (int j = 0; j < core.cycle_length; ++j) {
      vertices.push_back({next_id++, 0, false});
      generators.push_back(core_generator(static_cast<std::size_t>(j) + 1));
    }
    for (int j = 0; j < core.cycle_length; ++j)
      edges.push_back({j, (j + 1) % core.cycle_length, MonoidElement::generator(core_generator(static_cast<std::size_t>(j) + 1))});
  }
  auto top_vertex = [&](std::size_t block) { return core.is_smooth() ? 0 : attach[block]; };

  if (k == 0) {
    for (int m = 1; m <= n; ++m) legs.push_back({m, top_vertex(static_cast<std::size_t>(m - 1))});
  } else {
    std::vector<int> previous;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<int> layer;
      const auto& blocks = chain[i].blocks();
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        const int id = next_id++;
        vertices.push_back({id, 0, false});
        int parent;
        if (i == 0) {
          parent = top_vertex(b);
        } else {
          parent = previous[static_cast<std::size_t>(chain[i - 1].block_of(blocks[b].front()))];
        }
        edges.push_back({parent, id, MonoidElement::generator(radius_generator(i + 1))});
        layer.push_back(id);
      }
      previous = std::move(layer);
    }
    for (int m = 1; m <= n; ++m) legs.push_back({m, previous[static_cast<std::size_t>(chain[k - 1].block_of(m))]});
  }
  return TropicalCurve(std::move(generators), std::move(vertices), std::move(edges), std::move(legs));
}

/// Stable, basic radially aligned curve whose partition type is `chain`.
inline TropicalCurve build_test_curve(const PartitionChain& chain, const CoreKind& core) {
  return stabilize(build_raw_test_curve(chain, core));
}

/// All surjective ring attachments for a cycle core of `length` over `subtrees` top-level subtrees.
inline std::vector<std::vector<int>> cycle_attachments(std::size_t subtrees, int length) {
  std::vector<std::vector<int>> out;
  if (length < 1 || subtrees < static_cast<std::size_t>(length)) return out;
  std::vector<int> current(subtrees, 0);
  while (true) {
    std::vector<char> hit(length, 0);
    for (int a : current) hit[a] = 1;
    if (std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; })) out.push_back(current);
    std::size_t i = 0;
    while (i < subtrees && current[i] == length - 1) current[i++] = 0;
    if (i == subtrees) break;
    ++current[i];
  }
  return out;
}

/// Every core kind usable with `chain`: the smooth core and each cycle with
/// each surjective attachment of the top-level subtrees.
inline std::vector<CoreKind> core_kinds_for(const PartitionChain& chain) {
  std::vector<CoreKind> out{CoreKind::smooth()};
  const std::size_t top = chain.empty() ? static_cast<std::size_t>(chain.n()) : chain[0].block_count();
  for (int length = 1; length <= static_cast<int>(top); ++length)
    for (auto& a : cycle_attachments(top, length)) out.push_back(CoreKind::cycle(length, std::move(a)));
  return out;
}

}  // namespace qstab
