#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "curvetype.hpp"
#include "errors.hpp"
#include "partitions.hpp"
#include "qcond.hpp"

namespace qstab {

using Rational = boost::rational<long long>;

// Comparisons go through Rational on both sides: mixing in a bare int recurses
// under C++20 rewritten operators with this Boost version.
inline const Rational kZero{0};
inline const Rational kOne{1};

inline std::string rational_to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

struct CubeViolation {
  enum class Kind { OutOfRange, DiscreteNonzero, Unsaturated, WrongGroundSet };
  Kind kind;
  SetPartition first;
  /// For Unsaturated: first ≺ second, c(second) > 0 and c(first) < 1.
  SetPartition second;

  std::string describe() const {
    switch (kind) {
      case Kind::OutOfRange: return "coordinate at " + first.to_string() + " is outside [0,1]";
      case Kind::DiscreteNonzero: return "coordinate at the discrete partition must be 0";
      case Kind::Unsaturated:
        return "coordinate at " + second.to_string() + " is positive but the coarser " + first.to_string() + " is not 1";
      case Kind::WrongGroundSet: return "partition " + first.to_string() + " has the wrong ground set";
    }
    return "invalid cube point";
  }
};

class InvalidCubePoint : public ArgumentError {
 public:
  explicit InvalidCubePoint(CubeViolation v) : ArgumentError(v.describe()), violation(std::move(v)) {}
  CubeViolation violation;
};

inline std::optional<CubeViolation> check_cube_point(int n, const std::map<SetPartition, Rational>& coords) {
  for (const auto& [p, v] : coords) {
    if (p.n() != n) return CubeViolation{CubeViolation::Kind::WrongGroundSet, p, {}};
    if (v < kZero || v > kOne) return CubeViolation{CubeViolation::Kind::OutOfRange, p, {}};
  }
  for (const auto& [p, v] : coords)
    if (p.is_discrete() && v != kZero) return CubeViolation{CubeViolation::Kind::DiscreteNonzero, p, {}};
  auto value = [&](const SetPartition& p) {
    auto it = coords.find(p);
    return it == coords.end() ? kZero : it->second;
  };
  for (const auto& p2 : enumerate_partitions(n)) {
    if (value(p2) == kZero) continue;
    for (const auto& p1 : enumerate_partitions(n))
      if (strictly_coarser(p1, p2) && value(p1) != kOne) return CubeViolation{CubeViolation::Kind::Unsaturated, p1, p2};
  }
  return std::nullopt;
}

/// A point of the cube complex: coordinates in [0,1] indexed by Part(n),
/// zero at the discrete partition, and equal to 1 below any positive coordinate.
/// Absent coordinates are 0.
class CubePoint {
 public:
  CubePoint(int n, std::map<SetPartition, Rational> coords) : n_(n) {
    check_enumeration_size(n);
    if (auto v = check_cube_point(n, coords)) throw InvalidCubePoint(*v);
    for (auto& [p, v] : coords)
      if (v != kZero) coords_.emplace(p, v);
  }

  int n() const { return n_; }
  /// Nonzero coordinates only.
  const std::map<SetPartition, Rational>& coords() const { return coords_; }
  Rational at(const SetPartition& p) const {
    auto it = coords_.find(p);
    return it == coords_.end() ? kZero : it->second;
  }
  bool is_vertex() const {
    for (const auto& [p, v] : coords_)
      if (v != kOne) return false;
    return true;
  }
  bool operator==(const CubePoint&) const = default;

 private:
  int n_;
  std::map<SetPartition, Rational> coords_;
};

inline CubePoint validate_point(int n, const std::map<SetPartition, Rational>& coords) { return CubePoint(n, coords); }

/// {P : c_P > 0}.
inline std::set<SetPartition> q_sing(const CubePoint& c) {
  std::set<SetPartition> out;
  for (const auto& [p, v] : c.coords()) out.insert(p);
  return out;
}

/// {P : c_P < 1}, including the discrete partition.
inline std::set<SetPartition> q_curve(const CubePoint& c) {
  std::set<SetPartition> out;
  for (const auto& p : enumerate_partitions(c.n()))
    if (c.at(p) < kOne) out.insert(p);
  return out;
}

inline QCondition vertex_to_Q(const CubePoint& c) {
  if (!c.is_vertex()) throw ArgumentError("cube point is not a vertex: it has a coordinate strictly between 0 and 1");
  return QCondition(c.n(), q_sing(c));
}

inline CubePoint Q_to_vertex(const QCondition& q) {
  std::map<SetPartition, Rational> coords;
  for (const auto& p : q.members()) coords[p] = kOne;
  return CubePoint(q.n(), std::move(coords));
}

/// True iff d lies in a closed face of the cube containing c: d agrees with c
/// at every coordinate where c is 0 or 1.
inline bool face_contains(const CubePoint& c, const CubePoint& d) {
  if (c.n() != d.n()) throw ArgumentError("cube points of different dimension");
  for (const auto& p : enumerate_partitions(c.n())) {
    const auto v = c.at(p);
    if ((v == kZero || v == kOne) && d.at(p) != v) return false;
  }
  return true;
}

/// (c_P)-stability: the four level clauses with Q_sing and Q_curve read off c.
inline StabilityVerdict is_cP_stable(const CombinatorialType& t, const CubePoint& c) {
  if (t.n() != c.n()) throw ArgumentError("cube point and curve have different numbers of markings");
  return is_level_stable(t, q_sing(c), q_curve(c));
}

/// Open cell: coordinates in `ones` are 1, those in `free` range over (0,1),
/// all others are 0. `ones ∪ free` is a condition and `free` consists of
/// maximal elements of it.
struct Cell {
  int n = 0;
  std::set<SetPartition> ones;
  std::set<SetPartition> free;

  std::size_t dimension() const { return free.size(); }
  /// Fixed value of P, or nullopt when P is free.
  std::optional<int> fixed(const SetPartition& p) const {
    if (free.contains(p)) return std::nullopt;
    return ones.contains(p) ? 1 : 0;
  }
  CubePoint sample() const {
    std::map<SetPartition, Rational> coords;
    for (const auto& p : ones) coords[p] = kOne;
    for (const auto& p : free) coords[p] = Rational(1, 2);
    return CubePoint(n, std::move(coords));
  }
  /// The 0/1 corners of the closed cell.
  std::vector<CubePoint> corners() const {
    std::vector<SetPartition> f(free.begin(), free.end());
    std::vector<CubePoint> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << f.size()); ++mask) {
      std::map<SetPartition, Rational> coords;
      for (const auto& p : ones) coords[p] = kOne;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (mask & (std::size_t{1} << i)) coords[f[i]] = kOne;
      out.emplace_back(n, std::move(coords));
    }
    return out;
  }
  auto operator<=>(const Cell&) const = default;
};

inline std::set<SetPartition> maximal_elements(const QCondition& q) {
  std::set<SetPartition> out;
  for (const auto& p : q.members()) {
    bool maximal = true;
    for (const auto& r : q.members()) maximal = maximal && !strictly_coarser(p, r);
    if (maximal) out.insert(p);
  }
  return out;
}

/// Every open cell, ordered by dimension and then by the underlying condition.
inline std::vector<Cell> enumerate_cells(int n) {
  std::vector<Cell> out;
  for (const auto& q : enumerate_conditions(n)) {
    const auto top = maximal_elements(q);
    std::vector<SetPartition> m(top.begin(), top.end());
    for (std::size_t mask = 0; mask < (std::size_t{1} << m.size()); ++mask) {
      Cell cell{n, q.members(), {}};
      for (std::size_t i = 0; i < m.size(); ++i)
        if (mask & (std::size_t{1} << i)) {
          cell.free.insert(m[i]);
          cell.ones.erase(m[i]);
        }
      out.push_back(std::move(cell));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Cell& a, const Cell& b) { return a.dimension() < b.dimension(); });
  return out;
}

/// True iff `face` lies in the closure of `cell`: every coordinate fixed in
/// `cell` is fixed to the same value in `face`.
inline bool face_relation(const Cell& face, const Cell& cell) {
  if (face.n != cell.n) return false;
  for (const auto& p : face.free)
    if (!cell.free.contains(p)) return false;
  for (const auto& p : enumerate_partitions(cell.n)) {
    auto v = cell.fixed(p);
    if (v && face.fixed(p) != v) return false;
  }
  return true;
}

}  // namespace qstab
