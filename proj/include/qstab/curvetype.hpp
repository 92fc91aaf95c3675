#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "partitions.hpp"
#include "qcond.hpp"
#include "tropical.hpp"

namespace qstab {

struct Component {
  int id = 0;
  int genus = 0;
  std::vector<int> markings;
  bool operator==(const Component&) const = default;
};

/// A node (genus 0, two branches) or an elliptic m-fold point (genus 1, m
/// branches). `branches` maps a component id to the number of branches it carries.
struct Singularity {
  int id = 0;
  int genus = 0;
  std::map<int, int> branches;

  int branch_count() const {
    int total = 0;
    for (const auto& [c, m] : branches) total += m;
    return total;
  }
  bool is_elliptic() const { return genus == 1; }
  bool operator==(const Singularity&) const = default;
};

/// Combinatorial type of an n-marked Gorenstein curve of arithmetic genus 1
/// whose singularities are nodes and at most one elliptic m-fold point.
class CombinatorialType {
 public:
  CombinatorialType() = default;

  CombinatorialType(int n, std::vector<Component> components, std::vector<Singularity> singularities)
      : n_(n), components_(std::move(components)), singularities_(std::move(singularities)) {
    std::sort(components_.begin(), components_.end(), [](const Component& a, const Component& b) { return a.id < b.id; });
    std::sort(singularities_.begin(), singularities_.end(), [](const Singularity& a, const Singularity& b) { return a.id < b.id; });
    for (auto& c : components_) std::sort(c.markings.begin(), c.markings.end());
    if (auto problem = check()) throw ArgumentError("invalid combinatorial type: " + *problem);
  }

  int n() const { return n_; }
  const std::vector<Component>& components() const { return components_; }
  const std::vector<Singularity>& singularities() const { return singularities_; }

  const Component& component(int id) const {
    for (const auto& c : components_)
      if (c.id == id) return c;
    throw ArgumentError("unknown component id " + std::to_string(id));
  }

  std::vector<int> component_ids() const {
    std::vector<int> out;
    for (const auto& c : components_) out.push_back(c.id);
    return out;
  }

  const Singularity* elliptic() const {
    for (const auto& s : singularities_)
      if (s.is_elliptic()) return &s;
    return nullptr;
  }

  bool operator==(const CombinatorialType&) const = default;

 private:
  std::optional<std::string> check() const;

  int n_ = 0;
  std::vector<Component> components_;
  std::vector<Singularity> singularities_;
};

namespace detail {

/// Components of the curve restricted to `keep`, glued through nodes and
/// through whichever elliptic point is not listed in `cut_singularities`.
inline std::map<int, int> glue_components(const CombinatorialType& t, const std::set<int>& keep, const std::set<int>& cut_singularities) {
  std::vector<int> ids(keep.begin(), keep.end());
  UnionFind uf(ids.size());
  auto index = [&](int id) { return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin()); };
  for (const auto& s : t.singularities()) {
    if (cut_singularities.contains(s.id)) continue;
    std::optional<int> first;
    for (const auto& [c, m] : s.branches) {
      if (!keep.contains(c)) continue;
      if (first) uf.unite(index(*first), index(c));
      else first = c;
    }
  }
  std::map<int, int> label;
  for (int id : ids) label[id] = static_cast<int>(uf.find(index(id)));
  return label;
}

}  // namespace detail

/// Genus of the sub-curve on the components `z`: component genera, plus the
/// first Betti number of the component/singularity incidence graph restricted
/// to z, plus 1 if every branch of the elliptic point lies on z.
inline int subcurve_genus(const CombinatorialType& t, const std::set<int>& z) {
  int genus = 0;
  for (int c : z) genus += t.component(c).genus;
  int vertices = static_cast<int>(z.size());
  int edges = 0;
  std::set<int> none;
  for (const auto& s : t.singularities()) {
    int inside = 0;
    for (const auto& [c, m] : s.branches)
      if (z.contains(c)) inside += m;
    if (inside == 0) continue;
    ++vertices;
    edges += inside;
    if (s.is_elliptic() && inside == s.branch_count()) genus += 1;
  }
  const auto label = detail::glue_components(t, z, none);
  std::set<int> classes;
  for (const auto& [c, l] : label) classes.insert(l);
  return genus + edges - vertices + static_cast<int>(classes.size());
}

inline bool subcurve_connected(const CombinatorialType& t, const std::set<int>& z) {
  if (z.empty()) return false;
  const auto label = detail::glue_components(t, z, {});
  std::set<int> classes;
  for (const auto& [c, l] : label) classes.insert(l);
  return classes.size() == 1;
}

inline int arithmetic_genus(const CombinatorialType& t) {
  const auto ids = t.component_ids();
  return subcurve_genus(t, std::set<int>(ids.begin(), ids.end()));
}

inline std::optional<std::string> CombinatorialType::check() const {
  if (n_ < 0) return "negative marking count";
  if (components_.empty()) return "no components";
  std::set<int> ids;
  std::vector<int> seen(static_cast<std::size_t>(n_) + 1, 0);
  for (const auto& c : components_) {
    if (!ids.insert(c.id).second) return "duplicate component id " + std::to_string(c.id);
    if (c.genus < 0 || c.genus > 1) return "component genus must be 0 or 1";
    for (int m : c.markings) {
      if (m < 1 || m > n_) return "marking " + std::to_string(m) + " out of range";
      if (seen[static_cast<std::size_t>(m)]++) return "marking " + std::to_string(m) + " appears twice";
    }
  }
  for (int m = 1; m <= n_; ++m)
    if (!seen[static_cast<std::size_t>(m)]) return "marking " + std::to_string(m) + " is missing";
  std::set<int> sids;
  int elliptic = 0;
  for (const auto& s : singularities_) {
    if (!sids.insert(s.id).second) return "duplicate singularity id " + std::to_string(s.id);
    for (const auto& [c, m] : s.branches) {
      if (!ids.contains(c)) return "singularity " + std::to_string(s.id) + " meets unknown component " + std::to_string(c);
      if (m < 1) return "branch multiplicity must be positive";
    }
    if (s.genus == 0 && s.branch_count() != 2) return "node " + std::to_string(s.id) + " must have exactly two branches";
    if (s.genus == 1 && s.branch_count() < 1) return "elliptic point needs at least one branch";
    if (s.genus < 0 || s.genus > 1) return "singularity genus must be 0 or 1";
    elliptic += s.genus;
  }
  if (elliptic > 1) return "more than one elliptic singularity";
  if (!subcurve_connected(*this, ids)) return "curve is not connected";
  if (const int g = arithmetic_genus(*this); g != 1) return "arithmetic genus is " + std::to_string(g) + ", expected 1";
  return std::nullopt;
}

/// How the minimal genus-one subcurve gets its genus.
enum class CoreStructure { SmoothComponent, NodeCycle, EllipticPoint };

inline std::string to_string(CoreStructure s) {
  switch (s) {
    case CoreStructure::SmoothComponent: return "smooth genus-one component";
    case CoreStructure::NodeCycle: return "cycle of nodes";
    case CoreStructure::EllipticPoint: return "elliptic singularity";
  }
  return "";
}

struct MinimalSubcurve {
  std::set<int> components;
  CoreStructure structure = CoreStructure::SmoothComponent;
};

/// The unique minimal connected subcurve of arithmetic genus 1.
inline MinimalSubcurve minimal_genus_one_subcurve(const CombinatorialType& t) {
  for (const auto& c : t.components())
    if (c.genus == 1) return {{c.id}, CoreStructure::SmoothComponent};
  if (const auto* q = t.elliptic()) {
    MinimalSubcurve out{{}, CoreStructure::EllipticPoint};
    for (const auto& [c, m] : q->branches) out.components.insert(c);
    return out;
  }
  std::map<int, int> degree;
  for (const auto& c : t.components()) degree[c.id] = 0;
  for (const auto& s : t.singularities())
    for (const auto& [c, m] : s.branches) degree[c] += m;
  std::set<int> alive;
  for (int id : t.component_ids()) alive.insert(id);
  bool pruned = true;
  while (pruned) {
    pruned = false;
    for (int c : std::set<int>(alive)) {
      if (degree[c] > 1) continue;
      alive.erase(c);
      pruned = true;
      for (const auto& s : t.singularities()) {
        if (!s.branches.contains(c)) continue;
        for (const auto& [other, m] : s.branches)
          if (other != c && alive.contains(other)) degree[other] -= m;
      }
    }
  }
  return {alive, CoreStructure::NodeCycle};
}

/// Every connected subcurve of arithmetic genus 1 (brute force over component subsets).
inline std::vector<std::set<int>> genus_one_subcurves(const CombinatorialType& t) {
  const auto ids = t.component_ids();
  if (ids.size() > 20) throw BoundsError("too many components for subcurve enumeration");
  std::vector<std::set<int>> out;
  for (std::uint32_t mask = 1; mask < (1u << ids.size()); ++mask) {
    std::set<int> z;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (mask & (1u << i)) z.insert(ids[i]);
    if (subcurve_connected(t, z) && subcurve_genus(t, z) == 1) out.push_back(std::move(z));
  }
  return out;
}

/// Singletons: marked points on Z are isolated points of (C - Z) ∪ Σ.
/// Grouped: the markings on Z share one block, as if Z were kept.
enum class MarkingsOnSubcurve { Singletons, Grouped };

/// lev(Z): markings grouped by the connected components of (C - Z) ∪ Σ.
/// Removing Z removes every singular point lying on Z, so an elliptic point
/// with a branch on Z no longer joins its other branches.
inline SetPartition level_of_subcurve(const CombinatorialType& t, const std::set<int>& z,
                                      MarkingsOnSubcurve mode = MarkingsOnSubcurve::Singletons) {
  if (!subcurve_connected(t, z)) throw ArgumentError("subcurve is not connected");
  if (subcurve_genus(t, z) != 1) throw ArgumentError("subcurve does not have genus 1");
  std::set<int> rest;
  for (int id : t.component_ids())
    if (!z.contains(id)) rest.insert(id);
  std::set<int> cut;
  for (const auto& s : t.singularities())
    for (const auto& [c, m] : s.branches)
      if (z.contains(c)) cut.insert(s.id);
  const auto label = detail::glue_components(t, rest, cut);
  std::vector<int> labels(static_cast<std::size_t>(t.n()));
  int fresh = 1 << 20;
  std::vector<int> on_z;
  for (const auto& c : t.components()) {
    for (int m : c.markings) {
      if (z.contains(c.id)) {
        labels[static_cast<std::size_t>(m - 1)] = fresh++;
        on_z.push_back(m);
      } else {
        labels[static_cast<std::size_t>(m - 1)] = label.at(c.id);
      }
    }
  }
  if (mode == MarkingsOnSubcurve::Grouped)
    for (int m : on_z) labels[static_cast<std::size_t>(m - 1)] = -1;
  return SetPartition::from_labels(labels);
}

/// lev(q): markings grouped by the connected components of the normalization at q.
inline SetPartition level_of_singularity(const CombinatorialType& t, int singularity_id) {
  const Singularity* q = nullptr;
  for (const auto& s : t.singularities())
    if (s.id == singularity_id) q = &s;
  if (!q) throw ArgumentError("unknown singularity id " + std::to_string(singularity_id));
  if (!q->is_elliptic()) throw ArgumentError("level is only defined for elliptic singularities, " + std::to_string(singularity_id) + " is a node");
  const auto ids = t.component_ids();
  const auto label = detail::glue_components(t, std::set<int>(ids.begin(), ids.end()), {q->id});
  std::vector<int> labels(static_cast<std::size_t>(t.n()));
  for (const auto& c : t.components())
    for (int m : c.markings) labels[static_cast<std::size_t>(m - 1)] = label.at(c.id);
  return SetPartition::from_labels(labels);
}

inline int special_points(const CombinatorialType& t, int component_id) {
  int count = static_cast<int>(t.component(component_id).markings.size());
  for (const auto& s : t.singularities()) {
    auto it = s.branches.find(component_id);
    if (it != s.branches.end()) count += it->second;
  }
  return count;
}

/// Whether the curve has nonzero infinitesimal automorphisms, by the
/// special-point criterion for Gorenstein genus-one curves.
inline std::optional<std::string> infinitesimal_automorphism_reason(const CombinatorialType& t) {
  const Singularity* q = t.elliptic();
  for (const auto& c : t.components()) {
    const int special = special_points(t, c.id);
    if (c.genus == 1 && special < 1) return "genus-one component C" + std::to_string(c.id) + " has no special point";
    if (c.genus == 0 && (!q || !q->branches.contains(c.id)) && special < 3)
      return "rational component C" + std::to_string(c.id) + " has only " + std::to_string(special) + " special points";
  }
  if (q) {
    bool some_two = false;
    for (const auto& [c, m] : q->branches) {
      const int other = special_points(t, c) - m;
      if (other < 1) return "branch C" + std::to_string(c) + " of the elliptic point has no other special point";
      some_two = some_two || other >= 2;
    }
    if (!some_two) return "no branch of the elliptic point has two other special points";
  }
  return std::nullopt;
}

inline bool has_infinitesimal_automorphisms(const CombinatorialType& t) { return infinitesimal_automorphism_reason(t).has_value(); }

struct StabilityVerdict {
  bool stable = true;
  /// Short tag of the failing clause, empty when stable.
  std::string clause;
  std::string reason;
  explicit operator bool() const { return stable; }
};

inline StabilityVerdict is_Q_stable(const CombinatorialType& t, const QCondition& q) {
  if (q.n() != t.n()) throw ArgumentError("condition and curve have different numbers of markings");
  const auto zmin = minimal_genus_one_subcurve(t);
  const auto lz = level_of_subcurve(t, zmin.components);
  if (q.contains(lz)) return {false, "subcurve-level", "lev(Z_min) = " + lz.to_string() + " lies in Q"};
  if (const auto* e = t.elliptic()) {
    const auto lq = level_of_singularity(t, e->id);
    if (!q.contains(lq)) return {false, "singularity-level", "lev(q) = " + lq.to_string() + " is not in Q"};
  }
  if (auto why = infinitesimal_automorphism_reason(t)) return {false, "automorphisms", *why};
  return {};
}

/// The four level clauses for a pair (Q_sing, Q_curve) of partition sets.
inline StabilityVerdict is_level_stable(const CombinatorialType& t, const std::set<SetPartition>& q_sing, const std::set<SetPartition>& q_curve) {
  if (const auto* e = t.elliptic()) {
    const auto lq = level_of_singularity(t, e->id);
    if (!q_sing.contains(lq)) return {false, "singularity-level", "lev(q) = " + lq.to_string() + " is not in Q_sing"};
  }
  const auto subcurves = genus_one_subcurves(t);
  std::vector<SetPartition> levels;
  for (const auto& z : subcurves) {
    levels.push_back(level_of_subcurve(t, z));
    if (!q_curve.contains(levels.back())) return {false, "subcurve-level", "a genus-one subcurve has level " + levels.back().to_string() + " outside Q_curve"};
  }
  for (std::size_t i = 0; i < subcurves.size(); ++i)
    for (std::size_t j = 0; j < subcurves.size(); ++j) {
      if (i == j || subcurves[i].size() >= subcurves[j].size()) continue;
      if (!std::includes(subcurves[j].begin(), subcurves[j].end(), subcurves[i].begin(), subcurves[i].end())) continue;
      if (!strictly_coarser(levels[i], levels[j]))
        return {false, "level-increase", "levels " + levels[i].to_string() + " and " + levels[j].to_string() + " do not increase strictly along an inclusion"};
    }
  const auto zmin = minimal_genus_one_subcurve(t);
  for (int c : zmin.components) {
    if (!t.component(c).markings.empty()) continue;
    bool meets = false;
    for (const auto& s : t.singularities()) {
      if (!s.branches.contains(c)) continue;
      for (const auto& [other, m] : s.branches) meets = meets || !zmin.components.contains(other);
    }
    if (!meets) return {false, "core-component", "component C" + std::to_string(c) + " of Z_min meets neither the rest of the curve nor a marking"};
  }
  return {};
}

namespace detail {

inline std::string encode_type(const CombinatorialType& t, const std::vector<int>& order) {
  std::map<int, int> position;
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = static_cast<int>(i);
  std::string out;
  for (int id : order) {
    const auto& c = t.component(id);
    out += "C" + std::to_string(c.genus) + "[";
    for (int m : c.markings) out += std::to_string(m) + ",";
    out += "]";
  }
  std::vector<std::string> sings;
  for (const auto& s : t.singularities()) {
    std::vector<std::pair<int, int>> b;
    for (const auto& [c, m] : s.branches) b.emplace_back(position.at(c), m);
    std::sort(b.begin(), b.end());
    std::string e = (s.is_elliptic() ? "E(" : "N(");
    for (const auto& [p, m] : b) e += std::to_string(p) + "x" + std::to_string(m) + ",";
    sings.push_back(e + ")");
  }
  std::sort(sings.begin(), sings.end());
  for (const auto& s : sings) out += s;
  return out;
}

/// Refines component colours by the colours seen through each singularity.
inline std::map<int, std::string> component_colours(const CombinatorialType& t) {
  std::map<int, std::string> colour;
  for (const auto& c : t.components()) {
    colour[c.id] = std::to_string(c.genus) + "[";
    for (int m : c.markings) colour[c.id] += std::to_string(m) + ",";
    colour[c.id] += "]";
  }
  for (std::size_t round = 0; round < t.components().size(); ++round) {
    std::map<int, std::vector<std::string>> seen;
    for (const auto& s : t.singularities())
      for (const auto& [c, m] : s.branches) {
        std::vector<std::string> others;
        for (const auto& [d, k] : s.branches) others.push_back(colour[d] + "x" + std::to_string(k));
        std::sort(others.begin(), others.end());
        std::string key = (s.is_elliptic() ? "E" : "N") + std::to_string(m) + "{";
        for (const auto& o : others) key += o + ";";
        seen[c].push_back(key + "}");
      }
    std::map<int, std::string> next;
    for (const auto& c : t.components()) {
      auto& list = seen[c.id];
      std::sort(list.begin(), list.end());
      std::string key = colour[c.id] + "<";
      for (const auto& s : list) key += s;
      next[c.id] = key + ">";
    }
    std::set<std::string> before, after;
    for (const auto& [c, s] : colour) before.insert(s);
    for (const auto& [c, s] : next) after.insert(s);
    colour = std::move(next);
    if (after.size() == before.size()) break;
  }
  return colour;
}

}  // namespace detail

/// Lexicographically least encoding over all component orders compatible with
/// a colour refinement; two types are isomorphic iff their forms agree.
inline std::string canonical_form(const CombinatorialType& t) {
  const auto colour = detail::component_colours(t);
  std::vector<int> order = t.component_ids();
  std::sort(order.begin(), order.end(), [&](int a, int b) { return std::pair(colour.at(a), a) < std::pair(colour.at(b), b); });
  std::vector<std::pair<std::size_t, std::size_t>> classes;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && colour.at(order[j]) == colour.at(order[i])) ++j;
    classes.emplace_back(i, j);
    i = j;
  }
  std::string best;
  bool first = true;
  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (k == classes.size()) {
      auto code = detail::encode_type(t, order);
      if (first || code < best) best = std::move(code);
      first = false;
      return;
    }
    auto [lo, hi] = classes[k];
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(lo), order.begin() + static_cast<std::ptrdiff_t>(hi));
    do {
      self(self, k + 1);
    } while (std::next_permutation(order.begin() + static_cast<std::ptrdiff_t>(lo), order.begin() + static_cast<std::ptrdiff_t>(hi)));
  };
  recurse(recurse, 0);
  return std::to_string(t.n()) + ":" + best;
}

inline bool isomorphic(const CombinatorialType& a, const CombinatorialType& b) {
  return a.n() == b.n() && canonical_form(a) == canonical_form(b);
}

}  // namespace qstab
