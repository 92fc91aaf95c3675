#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace qstab;
using qstab::testing::non_discrete;

namespace {

/// All downward-closed subsets of the non-discrete partitions, by subset enumeration.
std::vector<std::set<SetPartition>> brute_force_conditions(int n) {
  const auto parts = non_discrete(n);
  std::vector<std::set<SetPartition>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << parts.size()); ++mask) {
    bool closed = true;
    for (std::size_t j = 0; j < parts.size() && closed; ++j) {
      if (!(mask >> j & 1)) continue;
      for (std::size_t i = 0; i < parts.size(); ++i)
        if (!(mask >> i & 1) && coarser_or_equal(parts[i], parts[j])) {
          closed = false;
          break;
        }
    }
    if (!closed) continue;
    std::set<SetPartition> q;
    for (std::size_t j = 0; j < parts.size(); ++j)
      if (mask >> j & 1) q.insert(parts[j]);
    out.push_back(std::move(q));
  }
  return out;
}

/// Invariance under every transposition of two markings.
bool invariant_under_transpositions(const QCondition& q) {
  for (const auto& p : q.members())
    for (int a = 1; a <= q.n(); ++a)
      for (int b = a + 1; b <= q.n(); ++b) {
        auto blocks = p.blocks();
        for (auto& block : blocks)
          for (auto& x : block) x = x == a ? b : x == b ? a : x;
        if (!q.contains(SetPartition(q.n(), blocks))) return false;
      }
  return true;
}

SetPartition P(int n, std::vector<std::vector<int>> blocks) { return SetPartition(n, std::move(blocks)); }

}  // namespace

TEST(QCondition, Validation) {
  EXPECT_NO_THROW(QCondition::empty(3));
  EXPECT_THROW(QCondition(3, {SetPartition::discrete(3)}), InvalidCondition);
  try {
    QCondition(3, {P(3, {{1, 2}, {3}})});
    FAIL();
  } catch (const InvalidCondition& e) {
    EXPECT_EQ(e.violation().kind, ConditionViolation::Kind::NotDownwardClosed);
    EXPECT_EQ(e.violation().member, P(3, {{1, 2}, {3}}));
    EXPECT_EQ(e.violation().missing, SetPartition::one_block(3));
  }
  EXPECT_NO_THROW(QCondition(3, {SetPartition::one_block(3), P(3, {{1, 2}, {3}})}));
}

TEST(QCondition, SmallCounts) {
  EXPECT_EQ(count_conditions(1, 1), 1u);
  EXPECT_EQ(count_conditions(2, 1), 2u);
  EXPECT_EQ(count_conditions(3, 1), 9u);
  EXPECT_EQ(count_conditions(4, 1), 346u);
  EXPECT_THROW(count_conditions(6), BoundsError);
}

TEST(QCondition, CountsMatchSubsetEnumeration) {
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(count_conditions(n, 1), brute_force_conditions(n).size()) << "n=" << n;
}

TEST(QCondition, CountFiveMarkings) { EXPECT_EQ(count_conditions(5), 79814831u); }

TEST(QCondition, ThreadCountDoesNotChangeResult) { EXPECT_EQ(count_conditions(4, 3), count_conditions(4, 1)); }

TEST(QCondition, EnumerationMatchesSubsetEnumeration) {
  for (int n = 1; n <= 4; ++n) {
    std::set<std::set<SetPartition>> expected;
    for (auto& q : brute_force_conditions(n)) expected.insert(q);
    std::set<std::set<SetPartition>> got;
    for (const auto& q : enumerate_conditions(n)) got.insert(q.members());
    EXPECT_EQ(got, expected);
  }
}

TEST(Antichain, DualityIsBijective) {
  for (int n = 1; n <= 4; ++n) {
    std::set<std::set<SetPartition>> seen;
    for (const auto& q : enumerate_conditions(n)) {
      const auto a = to_antichain(q);
      EXPECT_EQ(from_antichain(a), q);
      seen.insert(a.elements());
    }
    EXPECT_EQ(seen.size(), enumerate_conditions(n).size());
  }
  EXPECT_EQ(to_antichain(QCondition::empty(3)).elements(), std::set<SetPartition>{SetPartition::one_block(3)});
}

TEST(Antichain, RejectsComparablePairs) {
  EXPECT_THROW(Antichain(3, {SetPartition::one_block(3), P(3, {{1, 2}, {3}})}), ArgumentError);
  EXPECT_THROW(Antichain(3, {}), ArgumentError);
}

TEST(Lattice, MeetAndJoinAreIntersectionAndUnion) {
  const auto all = enumerate_conditions(3);
  for (const auto& a : all)
    for (const auto& b : all) {
      std::set<SetPartition> inter, uni = a.members();
      for (const auto& p : a.members())
        if (b.contains(p)) inter.insert(p);
      uni.insert(b.members().begin(), b.members().end());
      EXPECT_EQ(lattice_meet(a, b).members(), inter);
      EXPECT_EQ(lattice_join(a, b).members(), uni);
    }
}

TEST(MStable, BlockCountThreshold) {
  for (int n = 1; n <= 5; ++n)
    for (int m = 0; m < n; ++m) {
      const auto q = m_stable(n, m);
      for (const auto& p : enumerate_partitions(n)) EXPECT_EQ(q.contains(p), static_cast<int>(p.block_count()) <= m);
      EXPECT_EQ(m_stable_level(q), m);
    }
  EXPECT_THROW(m_stable(3, 3), ArgumentError);
  EXPECT_TRUE(m_stable(4, 0).members().empty());
}

TEST(Symmetric, FiveMarkings) {
  const auto conditions = symmetric_conditions(5);
  EXPECT_EQ(conditions.size(), 9u);
  int m_stable_count = 0;
  for (const auto& q : conditions) {
    EXPECT_TRUE(is_symmetric(q));
    EXPECT_TRUE(invariant_under_transpositions(q));
    m_stable_count += m_stable_level(q).has_value();
  }
  EXPECT_EQ(m_stable_count, 5);
}

TEST(Symmetric, MatchesFilteredEnumeration) {
  for (int n = 1; n <= 4; ++n) {
    std::set<QCondition> expected;
    for (const auto& q : enumerate_conditions(n))
      if (invariant_under_transpositions(q)) expected.insert(q);
    const auto got = symmetric_conditions(n);
    EXPECT_EQ(std::set<QCondition>(got.begin(), got.end()), expected) << "n=" << n;
  }
}
