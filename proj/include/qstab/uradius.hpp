#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "monoid.hpp"
#include "partitions.hpp"
#include "qcond.hpp"
#include "tropical.hpp"

namespace qstab {

/// The stable curve with one radius and an irreducible genus-1 core whose
/// partition at that radius is `p`.
inline TropicalCurve one_layer_tree(const SetPartition& p) {
  if (p.is_discrete()) throw ArgumentError("1-layer trees exist only for non-discrete partitions, got " + p.to_string());
  return build_test_curve(PartitionChain(p.n(), {p}), CoreKind::smooth());
}

/// A choice of radius on every 1-layer tree, keyed by partition: true for ρ₁, false for 0.
using RadiusAssignment = std::map<SetPartition, bool>;

class NotUniversal : public InvariantViolation {
 public:
  NotUniversal(SetPartition chosen, SetPartition below, TropicalCurve witness)
      : InvariantViolation("assignment is not a universal radius: " + chosen.to_string() + " gets a nonzero radius but " + below.to_string() +
                           " does not; the 2-layer curve of type " + below.to_string() + " < " + chosen.to_string() + " contracts to both"),
        chosen(std::move(chosen)),
        below(std::move(below)),
        witness(std::move(witness)) {}
  SetPartition chosen;
  SetPartition below;
  TropicalCurve witness;
};

/// The condition of partitions whose 1-layer tree receives the nonzero radius.
inline QCondition alpha(int n, const RadiusAssignment& radii) {
  std::set<SetPartition> chosen;
  for (const auto& p : enumerate_partitions(n)) {
    if (p.is_discrete()) continue;
    auto it = radii.find(p);
    if (it == radii.end()) throw ArgumentError("assignment has no entry for the 1-layer tree of " + p.to_string());
    if (it->second) chosen.insert(p);
  }
  for (const auto& [p, nonzero] : radii)
    if (p.n() != n || p.is_discrete()) throw ArgumentError("assignment key " + p.to_string() + " is not a non-discrete partition of 1.." + std::to_string(n));
  for (const auto& p : chosen)
    for (const auto& c : covers_below(p))
      if (!chosen.contains(c)) throw NotUniversal(p, c, build_test_curve(PartitionChain(n, {c, p}), CoreKind::smooth()));
  return QCondition(n, std::move(chosen));
}

inline RadiusAssignment beta(const QCondition& q) {
  RadiusAssignment out;
  for (const auto& p : enumerate_partitions(q.n()))
    if (!p.is_discrete()) out[p] = q.contains(p);
  return out;
}

/// ρ_r for the largest r with part(ρ_r) in `members`, or 0; `members` need not be a condition.
inline MonoidElement radius_rule(const std::set<SetPartition>& members, const TropicalCurve& g) {
  const auto data = radial_structure(g);
  MonoidElement chosen;
  for (const auto& r : data.radii)
    if (members.contains(partition_at_radius(g, r))) chosen = r;
  return chosen;
}

inline MonoidElement beta_eval(const QCondition& q, const TropicalCurve& g) {
  if (q.n() != g.n()) throw ArgumentError("condition and curve have different numbers of markings");
  require_genus_one(g, "beta_eval");
  return radius_rule(q.members(), g);
}

/// First generator whose face contraction does not carry the chosen radius of
/// `g` to the chosen radius of the contracted curve.
inline std::optional<std::string> compatibility_failure(const std::set<SetPartition>& members, const TropicalCurve& g) {
  if (!radial_structure(g).basic) throw UnsupportedError("compatibility is checked on basic radially aligned curves");
  const auto rho = radius_rule(members, g);
  for (const auto& gen : g.generators()) {
    const auto face = MonoidMap::face(g.generators(), {gen});
    const auto contracted = contract(g, face);
    if (face(rho) != radius_rule(members, contracted)) return gen;
  }
  return std::nullopt;
}

inline bool check_compatibility(const QCondition& q, const TropicalCurve& g) {
  if (q.n() != g.n()) throw ArgumentError("condition and curve have different numbers of markings");
  return !compatibility_failure(q.members(), g).has_value();
}

}  // namespace qstab
