#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "qstab/qstab.hpp"

namespace qstab::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

inline std::size_t uniform(std::size_t bound) { return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng()); }

inline std::vector<SetPartition> non_discrete(int n) {
  auto parts = enumerate_partitions(n);
  std::erase_if(parts, [](const SetPartition& p) { return p.is_discrete(); });
  return parts;
}

/// Random strict chain, built by repeatedly picking a strictly finer partition.
inline PartitionChain random_chain(int n, std::size_t max_length = 8) {
  const auto parts = non_discrete(n);
  std::vector<SetPartition> chain;
  while (chain.size() < max_length) {
    std::vector<SetPartition> options;
    for (const auto& p : parts)
      if (chain.empty() || strictly_coarser(chain.back(), p)) options.push_back(p);
    if (options.empty() || (!chain.empty() && uniform(4) == 0)) break;
    chain.push_back(options[uniform(options.size())]);
  }
  return PartitionChain(n, chain);
}

/// Downward closure of a few random non-discrete partitions.
inline QCondition random_condition(int n) {
  const auto parts = non_discrete(n);
  std::set<SetPartition> members;
  const std::size_t generators = uniform(4);
  for (std::size_t g = 0; g < generators; ++g) {
    const auto& top = parts[uniform(parts.size())];
    for (const auto& p : parts)
      if (coarser_or_equal(p, top)) members.insert(p);
  }
  return QCondition(n, members);
}

inline CoreKind random_core(const PartitionChain& chain) {
  const auto kinds = core_kinds_for(chain);
  return kinds[uniform(kinds.size())];
}

/// Number of leading chain entries lying in q.
inline std::size_t prefix_in(const PartitionChain& chain, const QCondition& q) {
  std::size_t i = 0;
  while (i < chain.size() && q.contains(chain[i])) ++i;
  return i;
}

}  // namespace qstab::testing
