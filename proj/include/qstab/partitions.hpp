#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace qstab {

/// Largest ground set accepted by the exhaustive enumerators (Bell(10) = 115975).
inline constexpr int kMaxEnumerationSize = 10;

/// A partition of {1, ..., n}.
///
/// Stored canonically: elements ascending inside each block, blocks ordered by
/// their minimum. Structural equality therefore coincides with equality of
/// partitions, and the defaulted ordering is a total order usable as a map key.
class SetPartition {
 public:
  SetPartition() = default;

  SetPartition(int n, std::vector<std::vector<int>> blocks) : n_(n), blocks_(std::move(blocks)) {
    if (n_ < 1) throw ArgumentError("partition ground set must be nonempty");
    std::vector<int> seen(n_ + 1, 0);
    for (auto& block : blocks_) {
      if (block.empty()) throw ArgumentError("partition block is empty");
      std::sort(block.begin(), block.end());
      for (int x : block) {
        if (x < 1 || x > n_) throw ArgumentError("partition element " + std::to_string(x) + " outside 1.." + std::to_string(n_));
        if (seen[x]++) throw ArgumentError("partition element " + std::to_string(x) + " repeated");
      }
    }
    for (int x = 1; x <= n_; ++x)
      if (!seen[x]) throw ArgumentError("partition misses element " + std::to_string(x));
    std::sort(blocks_.begin(), blocks_.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  }

  /// Builds the partition whose block of element i+1 is labels[i]; labels are arbitrary ints.
  static SetPartition from_labels(std::span<const int> labels) {
    std::map<int, std::vector<int>> groups;
    for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(static_cast<int>(i) + 1);
    std::vector<std::vector<int>> blocks;
    blocks.reserve(groups.size());
    for (auto& [label, block] : groups) blocks.push_back(std::move(block));
    return SetPartition(static_cast<int>(labels.size()), std::move(blocks));
  }

  static SetPartition one_block(int n) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i + 1;
    return SetPartition(n, {all});
  }

  static SetPartition discrete(int n) {
    std::vector<std::vector<int>> blocks;
    for (int i = 1; i <= n; ++i) blocks.push_back({i});
    return SetPartition(n, std::move(blocks));
  }

  int n() const { return n_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  bool is_discrete() const { return static_cast<int>(blocks_.size()) == n_; }
  bool is_one_block() const { return blocks_.size() == 1; }

  /// Dense encoding: entry i is the index of the block containing i+1.
  std::vector<int> labels() const {
    std::vector<int> out(n_);
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      for (int x : blocks_[b]) out[x - 1] = static_cast<int>(b);
    return out;
  }

  int block_of(int element) const {
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      if (std::binary_search(blocks_[b].begin(), blocks_[b].end(), element)) return static_cast<int>(b);
    throw ArgumentError("element " + std::to_string(element) + " not in partition");
  }

  /// Brace form, e.g. "{1,2}{3}".
  std::string to_string() const {
    std::ostringstream out;
    for (const auto& block : blocks_) {
      out << '{';
      for (std::size_t i = 0; i < block.size(); ++i) out << (i ? "," : "") << block[i];
      out << '}';
    }
    return out.str();
  }

  auto operator<=>(const SetPartition&) const = default;

 private:
  int n_ = 0;
  std::vector<std::vector<int>> blocks_;
};

inline std::ostream& operator<<(std::ostream& os, const SetPartition& p) { return os << p.to_string(); }

/// Weakly decreasing positive parts; the block-size profile of a set partition.
struct IntegerPartition {
  std::vector<int> parts;

  int total() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
  }
  std::string to_string() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? "," : "") << parts[i];
    out << ')';
    return out.str();
  }
  auto operator<=>(const IntegerPartition&) const = default;
};

inline void require_same_n(const SetPartition& a, const SetPartition& b) {
  if (a.n() != b.n())
    throw ArgumentError("partitions of different ground sets (" + std::to_string(a.n()) + " vs " + std::to_string(b.n()) + ")");
}

/// The lattice order on Part(n): true iff coarse ⪯ fine, i.e. every block of
/// `fine` lies inside a block of `coarse`. The one-block partition is the minimum.
inline bool coarser_or_equal(const SetPartition& coarse, const SetPartition& fine) {
  require_same_n(coarse, fine);
  const auto label = coarse.labels();
  for (const auto& block : fine.blocks())
    for (int x : block)
      if (label[x - 1] != label[block.front() - 1]) return false;
  return true;
}

inline bool strictly_coarser(const SetPartition& coarse, const SetPartition& fine) {
  return coarse != fine && coarser_or_equal(coarse, fine);
}

/// All partitions obtained by merging exactly two blocks of `p`.
inline std::vector<SetPartition> covers_below(const SetPartition& p) {
  std::vector<SetPartition> out;
  const auto& blocks = p.blocks();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      std::vector<std::vector<int>> merged;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (b == j) continue;
        merged.push_back(blocks[b]);
        if (b == i) merged.back().insert(merged.back().end(), blocks[j].begin(), blocks[j].end());
      }
      out.emplace_back(p.n(), std::move(merged));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline IntegerPartition shape(const SetPartition& p) {
  IntegerPartition s;
  for (const auto& block : p.blocks()) s.parts.push_back(static_cast<int>(block.size()));
  std::sort(s.parts.rbegin(), s.parts.rend());
  return s;
}

/// Canonical member of the S_n-orbit of `p`: consecutive runs, largest block first.
inline SetPartition orbit_representative(const SetPartition& p) {
  const auto s = shape(p);
  std::vector<std::vector<int>> blocks;
  int next = 1;
  for (int size : s.parts) {
    blocks.emplace_back();
    for (int i = 0; i < size; ++i) blocks.back().push_back(next++);
  }
  return SetPartition(p.n(), std::move(blocks));
}

inline void check_enumeration_size(int n) {
  if (n < 1 || n > kMaxEnumerationSize)
    throw BoundsError("partition enumeration supports 1 <= n <= " + std::to_string(kMaxEnumerationSize) + ", got " + std::to_string(n));
}

/// Every partition of {1..n} exactly once, in lexicographic order of restricted
/// growth strings (so the one-block partition is first, the discrete one last).
inline std::vector<SetPartition> enumerate_partitions(int n) {
  check_enumeration_size(n);
  std::vector<SetPartition> out;
  std::vector<int> rgs(n, 0);
  std::vector<int> prefix_max(n, 0);
  while (true) {
    out.push_back(SetPartition::from_labels(rgs));
    int i = n - 1;
    while (i > 0 && rgs[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) break;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (int j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[j - 1];
    }
  }
  return out;
}

/// All integer partitions of n, parts weakly decreasing, in reverse lexicographic order.
inline std::vector<IntegerPartition> enumerate_integer_partitions(int n) {
  std::vector<IntegerPartition> out;
  std::vector<int> current;
  auto recurse = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back({current});
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      current.push_back(part);
      self(self, remaining - part, part);
      current.pop_back();
    }
  };
  recurse(recurse, n, n);
  return out;
}

/// Part(n) with a fixed indexing (enumeration order) and the order relation
/// precomputed, shared by the counting kernel and the cube complex.
class PartitionLattice {
 public:
  static constexpr int kMaxSize = 7;

  explicit PartitionLattice(int n) : n_(n), elements_((check_lattice_size(n), enumerate_partitions(n))) {
    const std::size_t size = elements_.size();
    for (std::size_t i = 0; i < size; ++i) index_.emplace(elements_[i], static_cast<int>(i));
    below_.assign(size, std::vector<char>(size, 0));
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) below_[i][j] = coarser_or_equal(elements_[i], elements_[j]);
  }

  /// Shared instance per n; construction is O(Bell(n)^2) so callers should reuse it.
  static const PartitionLattice& of(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<PartitionLattice>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<PartitionLattice>(n);
    return *slot;
  }

  int n() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<SetPartition>& elements() const { return elements_; }
  const SetPartition& at(std::size_t i) const { return elements_[i]; }
  int index_of(const SetPartition& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw ArgumentError("partition " + p.to_string() + " is not in Part(" + std::to_string(n_) + ")");
    return it->second;
  }
  /// True iff element i ⪯ element j.
  bool leq(std::size_t i, std::size_t j) const { return below_[i][j] != 0; }
  bool comparable(std::size_t i, std::size_t j) const { return leq(i, j) || leq(j, i); }
  std::size_t discrete_index() const { return elements_.size() - 1; }

 private:
  static void check_lattice_size(int n) {
    if (n < 1 || n > kMaxSize)
      throw BoundsError("dense partition lattice supports 1 <= n <= " + std::to_string(kMaxSize) + ", got " + std::to_string(n));
  }

  int n_;
  std::vector<SetPartition> elements_;
  std::map<SetPartition, int> index_;
  std::vector<std::vector<char>> below_;
};

}  // namespace qstab
