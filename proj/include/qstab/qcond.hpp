#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "partitions.hpp"

namespace qstab {

/// Why a set of partitions fails to be a stability condition.
struct ConditionViolation {
  enum class Kind { ContainsDiscrete, NotDownwardClosed, WrongGroundSet };
  Kind kind;
  /// For NotDownwardClosed: `member` is in the set, `missing` ⪯ member is not.
  SetPartition member;
  SetPartition missing;

  std::string describe() const {
    switch (kind) {
      case Kind::ContainsDiscrete:
        return "contains the discrete partition " + member.to_string();
      case Kind::NotDownwardClosed:
        return "not downward closed: " + member.to_string() + " is a member but " + missing.to_string() + " is not";
      case Kind::WrongGroundSet:
        return "partition " + member.to_string() + " has the wrong ground set";
    }
    return "invalid condition";
  }
};

class InvalidCondition : public ArgumentError {
 public:
  explicit InvalidCondition(ConditionViolation v) : ArgumentError(v.describe()), violation_(std::move(v)) {}
  const ConditionViolation& violation() const { return violation_; }

 private:
  ConditionViolation violation_;
};

/// Returns the first violated axiom, scanning members in partition order.
inline std::optional<ConditionViolation> check_condition(int n, const std::set<SetPartition>& members) {
  for (const auto& p : members) {
    if (p.n() != n) return ConditionViolation{ConditionViolation::Kind::WrongGroundSet, p, {}};
    if (p.is_discrete()) return ConditionViolation{ConditionViolation::Kind::ContainsDiscrete, p, {}};
  }
  for (const auto& p : members)
    for (const auto& coarser : covers_below(p))
      if (!members.contains(coarser)) return ConditionViolation{ConditionViolation::Kind::NotDownwardClosed, p, coarser};
  return std::nullopt;
}

/// A Q-stability condition: a downward-closed subset of Part(n) that avoids the
/// discrete partition. Instances are valid by construction.
class QCondition {
 public:
  /// Validates; throws InvalidCondition with a witness.
  QCondition(int n, std::set<SetPartition> members) : n_(n), members_(std::move(members)) {
    if (n_ < 1) throw ArgumentError("condition ground set must be nonempty");
    if (auto v = check_condition(n_, members_)) throw InvalidCondition(*v);
  }

  static QCondition empty(int n) { return QCondition(n, {}); }

  int n() const { return n_; }
  const std::set<SetPartition>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(const SetPartition& p) const { return members_.contains(p); }

  bool operator==(const QCondition&) const = default;
  auto operator<=>(const QCondition& other) const {
    if (auto c = n_ <=> other.n_; c != 0) return c;
    return members_ <=> other.members_;
  }

 private:
  int n_;
  std::set<SetPartition> members_;
};

inline QCondition validate(int n, std::set<SetPartition> members) { return QCondition(n, std::move(members)); }

/// Nonempty set of pairwise incomparable partitions.
class Antichain {
 public:
  Antichain(int n, std::set<SetPartition> elements) : n_(n), elements_(std::move(elements)) {
    if (elements_.empty()) throw ArgumentError("antichain must be nonempty");
    for (const auto& p : elements_)
      if (p.n() != n_) throw ArgumentError("antichain element " + p.to_string() + " has the wrong ground set");
    for (auto a = elements_.begin(); a != elements_.end(); ++a)
      for (auto b = std::next(a); b != elements_.end(); ++b)
        if (coarser_or_equal(*a, *b) || coarser_or_equal(*b, *a))
          throw ArgumentError("antichain elements " + a->to_string() + " and " + b->to_string() + " are comparable");
  }

  int n() const { return n_; }
  const std::set<SetPartition>& elements() const { return elements_; }
  bool operator==(const Antichain&) const = default;

 private:
  int n_;
  std::set<SetPartition> elements_;
};

/// Minimal elements of Part(n) − Q.
inline Antichain to_antichain(const QCondition& q) {
  std::set<SetPartition> minimal;
  const auto& all = enumerate_partitions(q.n());
  for (const auto& p : all) {
    if (q.contains(p)) continue;
    bool is_minimal = true;
    for (const auto& c : covers_below(p))
      if (!q.contains(c)) {
        is_minimal = false;
        break;
      }
    if (is_minimal) minimal.insert(p);
  }
  return Antichain(q.n(), std::move(minimal));
}

/// Complement of the upward closure of `a`.
inline QCondition from_antichain(const Antichain& a) {
  std::set<SetPartition> members;
  for (const auto& p : enumerate_partitions(a.n())) {
    bool above = false;
    for (const auto& x : a.elements())
      if (coarser_or_equal(x, p)) {
        above = true;
        break;
      }
    if (!above) members.insert(p);
  }
  return QCondition(a.n(), std::move(members));
}

inline QCondition lattice_meet(const QCondition& a, const QCondition& b) {
  if (a.n() != b.n()) throw ArgumentError("conditions on different ground sets");
  std::set<SetPartition> out;
  std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
                        std::inserter(out, out.end()));
  return QCondition(a.n(), std::move(out));
}

inline QCondition lattice_join(const QCondition& a, const QCondition& b) {
  if (a.n() != b.n()) throw ArgumentError("conditions on different ground sets");
  std::set<SetPartition> out = a.members();
  out.insert(b.members().begin(), b.members().end());
  return QCondition(a.n(), std::move(out));
}

/// The m-stable condition: every partition with at most m blocks.
inline QCondition m_stable(int n, int m) {
  if (m < 0 || m >= n)
    throw ArgumentError("m-stable condition needs 0 <= m < n (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")");
  std::set<SetPartition> members;
  for (const auto& p : enumerate_partitions(n))
    if (static_cast<int>(p.block_count()) <= m) members.insert(p);
  return QCondition(n, std::move(members));
}

inline bool is_symmetric(const QCondition& q) {
  // Invariance under transpositions (i i+1) generates invariance under S_n.
  for (int i = 1; i < q.n(); ++i) {
    for (const auto& p : q.members()) {
      auto blocks = p.blocks();
      for (auto& block : blocks)
        for (int& x : block) x = (x == i) ? i + 1 : (x == i + 1) ? i : x;
      if (!q.contains(SetPartition(q.n(), std::move(blocks)))) return false;
    }
  }
  return true;
}

/// Antichains of Part(n) restricted to n <= 5 by the 64-bit row width.
inline constexpr int kMaxCountSize = 5;

namespace detail {

/// Comparability rows of Part(n): bit j of incomparable_after[i] is set iff
/// j > i and elements i, j are incomparable.
inline std::vector<std::uint64_t> incomparable_after_rows(const PartitionLattice& lattice) {
  const std::size_t size = lattice.size();
  std::vector<std::uint64_t> rows(size, 0);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j)
      if (!lattice.comparable(i, j)) rows[i] |= std::uint64_t{1} << j;
  return rows;
}

/// Number of antichains (including the empty one) all of whose elements come
/// from `candidates`, where every candidate is incomparable with the elements
/// already chosen.
inline std::uint64_t count_antichains_from(std::uint64_t candidates, const std::vector<std::uint64_t>& rows) {
  std::uint64_t total = 1;
  while (candidates) {
    const int i = __builtin_ctzll(candidates);
    candidates &= candidates - 1;
    total += count_antichains_from(candidates & rows[i], rows);
  }
  return total;
}

}  // namespace detail

/// Progress callback: (first elements finished, first elements total).
using CountProgress = std::function<void(std::size_t, std::size_t)>;

/// |𝔔ₙ|, the number of nonempty antichains of Part(n).
///
/// Depth-first over antichains with candidate sets kept as bit rows of the
/// comparability matrix; nothing is materialized. Work is sharded by the
/// antichain's first element across `threads` workers (0 = hardware).
inline std::uint64_t count_conditions(int n, unsigned threads = 0, const CountProgress& progress = {}) {
  if (n < 1 || n > kMaxCountSize)
    throw BoundsError("condition counting supports 1 <= n <= " + std::to_string(kMaxCountSize) + ", got " + std::to_string(n));
  const auto& lattice = PartitionLattice::of(n);
  const auto rows = detail::incomparable_after_rows(lattice);
  const std::size_t size = lattice.size();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(size));

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> finished{0};
  std::vector<std::uint64_t> partial(threads, 0);
  std::mutex progress_mutex;
  auto worker = [&](unsigned w) {
    for (std::size_t i = next++; i < size; i = next++) {
      partial[w] += detail::count_antichains_from(rows[i], rows);
      const std::size_t done = ++finished;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(done, size);
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }
  std::uint64_t total = 0;
  for (auto p : partial) total += p;
  return total;
}

/// Every condition of Part(n), in increasing (size, members) order.
/// Materializes all of 𝔔ₙ, so only n <= 4 is accepted.
inline std::vector<QCondition> enumerate_conditions(int n) {
  if (n < 1 || n > 4) throw BoundsError("condition enumeration supports 1 <= n <= 4, got " + std::to_string(n));
  const auto& lattice = PartitionLattice::of(n);
  const auto rows = detail::incomparable_after_rows(lattice);
  std::vector<QCondition> out;
  std::vector<std::size_t> chosen;
  auto emit = [&] {
    std::set<SetPartition> elements;
    for (auto i : chosen) elements.insert(lattice.at(i));
    out.push_back(from_antichain(Antichain(n, std::move(elements))));
  };
  auto recurse = [&](auto&& self, std::uint64_t candidates) -> void {
    while (candidates) {
      const int i = __builtin_ctzll(candidates);
      candidates &= candidates - 1;
      chosen.push_back(static_cast<std::size_t>(i));
      emit();
      self(self, candidates & rows[i]);
      chosen.pop_back();
    }
  };
  std::uint64_t all = lattice.size() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << lattice.size()) - 1);
  recurse(recurse, all);
  std::sort(out.begin(), out.end(), [](const QCondition& a, const QCondition& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
  });
  return out;
}

/// Order on integer partitions induced from Part(n): s ⪯ t iff some set
/// partition of shape s is coarser than or equal to one of shape t.
inline bool shape_leq(const IntegerPartition& s, const IntegerPartition& t, const std::vector<SetPartition>& part_n) {
  for (const auto& a : part_n) {
    if (shape(a) != s) continue;
    for (const auto& b : part_n)
      if (shape(b) == t && coarser_or_equal(a, b)) return true;
  }
  return false;
}

/// S_n-fixed conditions, obtained from downward-closed sets of integer
/// partitions (excluding 1+1+...+1) by pulling back along `shape`.
inline std::vector<QCondition> symmetric_conditions(int n) {
  if (n < 1 || n > 6) throw BoundsError("symmetric conditions support 1 <= n <= 6, got " + std::to_string(n));
  const auto part_n = enumerate_partitions(n);
  auto shapes = enumerate_integer_partitions(n);
  std::erase_if(shapes, [n](const IntegerPartition& s) { return static_cast<int>(s.parts.size()) == n; });
  const std::size_t k = shapes.size();
  std::vector<std::vector<char>> leq(k, std::vector<char>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) leq[i][j] = shape_leq(shapes[i], shapes[j], part_n);

  std::vector<QCondition> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    bool closed = true;
    for (std::size_t j = 0; j < k && closed; ++j) {
      if (!(mask >> j & 1)) continue;
      for (std::size_t i = 0; i < k; ++i)
        if (leq[i][j] && !(mask >> i & 1)) {
          closed = false;
          break;
        }
    }
    if (!closed) continue;
    std::set<IntegerPartition> chosen;
    for (std::size_t j = 0; j < k; ++j)
      if (mask >> j & 1) chosen.insert(shapes[j]);
    std::set<SetPartition> members;
    for (const auto& p : part_n)
      if (chosen.contains(shape(p))) members.insert(p);
    out.emplace_back(n, std::move(members));
  }
  std::sort(out.begin(), out.end(), [](const QCondition& a, const QCondition& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
  });
  return out;
}

/// The m for which `q` equals m_stable(n, m), if any.
inline std::optional<int> m_stable_level(const QCondition& q) {
  for (int m = 0; m < q.n(); ++m)
    if (m_stable(q.n(), m) == q) return m;
  return std::nullopt;
}

}  // namespace qstab
