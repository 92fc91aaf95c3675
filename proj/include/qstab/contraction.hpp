#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "curvetype.hpp"
#include "errors.hpp"
#include "monoid.hpp"
#include "qcond.hpp"
#include "tropical.hpp"
#include "uradius.hpp"

namespace qstab {

/// Dual type of the nodal curve: vertices become components, edges nodes, legs markings.
inline CombinatorialType nodal_type(const TropicalCurve& g) {
  std::vector<Component> components;
  for (const auto& v : g.vertices()) components.push_back({v.id, v.genus, g.markings_at(v.id)});
  std::vector<Singularity> singularities;
  int next = 0;
  for (const auto& e : g.edges()) {
    Singularity s{next++, 0, {}};
    s.branches[e.a] += 1;
    s.branches[e.b] += 1;
    singularities.push_back(std::move(s));
  }
  return CombinatorialType(g.n(), std::move(components), std::move(singularities));
}

/// Subdivides Γ where λ = ρ and contracts the locus λ < ρ to one elliptic
/// point meeting each boundary point of the remaining locus once. Edges and
/// legs crossing λ = ρ in their interior leave a synthetic rational component.
inline CombinatorialType contract_at_radius(const TropicalCurve& g, const MonoidElement& rho) {
  const auto data = radial_structure(g);
  if (rho.is_zero()) return nodal_type(g);
  if (std::find(data.radii.begin(), data.radii.end(), rho) == data.radii.end())
    throw InvalidRadius(rho.to_string() + " is not a radius of the curve");
  const auto lambda = radial_distance(g);
  auto kept = [&](int id) { return monoid_leq(rho, lambda.at(id)); };

  std::vector<Component> components;
  int next_component = 0;
  for (const auto& v : g.vertices()) {
    next_component = std::max(next_component, v.id + 1);
    if (kept(v.id)) components.push_back({v.id, v.genus, {}});
  }
  auto component_ref = [&](int id) -> Component& {
    for (auto& c : components)
      if (c.id == id) return c;
    throw InvariantViolation("missing component");
  };

  std::vector<Singularity> singularities;
  int next_singularity = 0;
  Singularity q{next_singularity++, 1, {}};
  auto node = [&](int a, int b) {
    Singularity s{next_singularity++, 0, {}};
    s.branches[a] += 1;
    s.branches[b] += 1;
    singularities.push_back(std::move(s));
  };

  for (const auto& e : g.edges()) {
    const bool ka = kept(e.a), kb = kept(e.b);
    if (ka && kb) {
      node(e.a, e.b);
    } else if (ka != kb) {
      const int outer = ka ? e.a : e.b;
      if (lambda.at(outer) == rho) {
        q.branches[outer] += 1;
      } else {
        const int s = next_component++;
        components.push_back({s, 0, {}});
        q.branches[s] += 1;
        node(s, outer);
      }
    }
  }
  for (const auto& l : g.legs()) {
    if (kept(l.root)) {
      component_ref(l.root).markings.push_back(l.marking);
    } else {
      const int s = next_component++;
      components.push_back({s, 0, {l.marking}});
      q.branches[s] += 1;
    }
  }
  singularities.insert(singularities.begin(), std::move(q));
  return CombinatorialType(g.n(), std::move(components), std::move(singularities));
}

/// Contraction at the radius the condition selects; the result is checked to be Q-stable.
inline CombinatorialType contract_for_Q(const TropicalCurve& g, const QCondition& q) {
  if (!is_stable(g)) throw UnsupportedError("contract_for_Q needs a stable curve");
  auto t = contract_at_radius(g, beta_eval(q, g));
  if (auto verdict = is_Q_stable(t, q); !verdict)
    throw InvariantViolation("contraction selected by the condition is not Q-stable: " + verdict.reason);
  return t;
}

/// Contractions of the test curve of `chain` at 0, ρ₁, …, ρ_k.
inline std::vector<CombinatorialType> contraction_family(const PartitionChain& chain, const CoreKind& core) {
  const auto g = build_test_curve(chain, core);
  std::vector<CombinatorialType> out{contract_at_radius(g, {})};
  for (const auto& r : radial_structure(g).radii) out.push_back(contract_at_radius(g, r));
  return out;
}

/// The unique index i with Γᵢ Q-stable; throws InvariantViolation if there is none or several.
inline std::size_t verify_exactly_one(const PartitionChain& chain, const CoreKind& core, const QCondition& q) {
  if (q.n() != chain.n()) throw ArgumentError("condition and chain have different numbers of markings");
  const auto family = contraction_family(chain, core);
  std::vector<std::size_t> stable;
  std::string reasons;
  for (std::size_t i = 0; i < family.size(); ++i) {
    auto verdict = is_Q_stable(family[i], q);
    if (verdict) stable.push_back(i);
    else reasons += " [" + std::to_string(i) + ": " + verdict.reason + "]";
  }
  if (stable.size() == 1) return stable.front();
  if (stable.empty()) throw InvariantViolation("no member of the contraction family of " + chain.to_string() + " is Q-stable:" + reasons);
  std::string list;
  for (auto i : stable) list += (list.empty() ? "" : ", ") + std::to_string(i);
  throw InvariantViolation("several members of the contraction family of " + chain.to_string() + " are Q-stable: " + list);
}

inline constexpr int kMaxTypeEnumerationSize = 4;

/// Contractions of every test curve over every chain, core shape and radius,
/// one representative per isomorphism class, ordered by canonical form.
inline std::vector<CombinatorialType> enumerate_types(int n) {
  if (n < 1 || n > kMaxTypeEnumerationSize)
    throw BoundsError("type enumeration supports 1 <= n <= " + std::to_string(kMaxTypeEnumerationSize) + ", got " + std::to_string(n));
  std::map<std::string, CombinatorialType> seen;
  for (const auto& chain : enumerate_chains(n))
    for (const auto& core : core_kinds_for(chain))
      for (auto& t : contraction_family(chain, core)) {
        auto key = canonical_form(t);
        seen.emplace(std::move(key), std::move(t));
      }
  std::vector<CombinatorialType> out;
  for (auto& [k, t] : seen) out.push_back(std::move(t));
  return out;
}

}  // namespace qstab
