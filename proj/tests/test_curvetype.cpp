#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "oracles.hpp"
#include "support.hpp"

using namespace qstab;

namespace {

SetPartition P(int n, std::vector<std::vector<int>> blocks) { return SetPartition(n, std::move(blocks)); }

Singularity node(int id, int a, int b) {
  Singularity s{id, 0, {}};
  s.branches[a] += 1;
  s.branches[b] += 1;
  return s;
}

Singularity elliptic(int id, std::vector<int> branches) {
  Singularity s{id, 1, {}};
  for (int c : branches) s.branches[c] += 1;
  return s;
}

const std::vector<CombinatorialType>& types3() {
  static const auto types = enumerate_types(3);
  return types;
}

bool brute_force_isomorphic(const CombinatorialType& a, const CombinatorialType& b) {
  if (a.n() != b.n() || a.components().size() != b.components().size() || a.singularities().size() != b.singularities().size()) return false;
  auto ids_b = b.component_ids();
  const auto ids_a = a.component_ids();
  std::sort(ids_b.begin(), ids_b.end());
  do {
    std::map<int, int> f;
    for (std::size_t i = 0; i < ids_a.size(); ++i) f[ids_a[i]] = ids_b[i];
    bool ok = true;
    for (const auto& c : a.components()) ok = ok && b.component(f[c.id]).genus == c.genus && b.component(f[c.id]).markings == c.markings;
    if (!ok) continue;
    std::multiset<std::pair<int, std::map<int, int>>> sa, sb;
    for (const auto& s : a.singularities()) {
      std::map<int, int> mapped;
      for (const auto& [c, m] : s.branches) mapped[f[c]] = m;
      sa.insert({s.genus, mapped});
    }
    for (const auto& s : b.singularities()) sb.insert({s.genus, s.branches});
    if (sa == sb) return true;
  } while (std::next_permutation(ids_b.begin(), ids_b.end()));
  return false;
}

}  // namespace

TEST(Genus, Examples) {
  EXPECT_EQ(arithmetic_genus(CombinatorialType(1, {{0, 0, {1}}}, {node(0, 0, 0)})), 1);
  EXPECT_EQ(arithmetic_genus(CombinatorialType(1, {{0, 0, {1}}}, {elliptic(0, {0})})), 1);
  EXPECT_EQ(arithmetic_genus(CombinatorialType(2, {{0, 0, {1}}, {1, 0, {2}}}, {elliptic(0, {0, 1})})), 1);
  EXPECT_THROW(CombinatorialType(1, {{0, 0, {1}}}, {}), ArgumentError);
  EXPECT_THROW(CombinatorialType(2, {{0, 1, {1}}, {1, 0, {1}}}, {node(0, 0, 1)}), ArgumentError);
  EXPECT_THROW(CombinatorialType(1, {{0, 0, {1}}}, {Singularity{0, 0, {{0, 1}}}}), ArgumentError);
}

TEST(Genus, SubcurveGenusMatchesOracle) {
  for (const auto& t : types3()) {
    const auto ids = t.component_ids();
    for (unsigned mask = 1; mask < (1u << ids.size()); ++mask) {
      std::set<int> z;
      for (std::size_t i = 0; i < ids.size(); ++i)
        if (mask >> i & 1) z.insert(ids[i]);
      ASSERT_EQ(subcurve_genus(t, z), qstab::testing::oracle_genus(t, z));
    }
    ASSERT_EQ(arithmetic_genus(t), 1);
  }
}

TEST(MinimalSubcurve, Examples) {
  CombinatorialType smooth(3, {{0, 1, {}}, {1, 0, {1, 2}}, {2, 0, {3}}}, {node(0, 0, 1), node(1, 0, 2)});
  EXPECT_EQ(minimal_genus_one_subcurve(smooth).components, std::set<int>{0});
  EXPECT_EQ(minimal_genus_one_subcurve(smooth).structure, CoreStructure::SmoothComponent);
  CombinatorialType tacnode(3, {{0, 0, {1, 2}}, {1, 0, {3}}}, {elliptic(0, {0, 1})});
  EXPECT_EQ(minimal_genus_one_subcurve(tacnode).components, (std::set<int>{0, 1}));
  CombinatorialType ring(4, {{0, 0, {1}}, {1, 0, {2}}, {2, 0, {}}, {3, 0, {3, 4}}},
                         {node(0, 0, 1), node(1, 1, 2), node(2, 2, 0), node(3, 2, 3)});
  EXPECT_EQ(minimal_genus_one_subcurve(ring).components, (std::set<int>{0, 1, 2}));
  EXPECT_EQ(minimal_genus_one_subcurve(ring).structure, CoreStructure::NodeCycle);
}

TEST(MinimalSubcurve, IsTheUniqueMinimalOne) {
  for (const auto& t : types3()) {
    const auto subs = qstab::testing::connected_genus_one(t);
    std::set<int> smallest = subs.front();
    for (const auto& z : subs)
      if (z.size() < smallest.size()) smallest = z;
    for (const auto& z : subs) ASSERT_TRUE(std::includes(z.begin(), z.end(), smallest.begin(), smallest.end()));
    ASSERT_EQ(minimal_genus_one_subcurve(t).components, smallest);
    ASSERT_EQ(genus_one_subcurves(t), subs);
  }
}

TEST(Level, Examples) {
  CombinatorialType smooth(3, {{0, 1, {}}, {1, 0, {1, 2}}, {2, 0, {3}}}, {node(0, 0, 1), node(1, 0, 2)});
  EXPECT_EQ(level_of_subcurve(smooth, {0}), P(3, {{1, 2}, {3}}));
  EXPECT_TRUE(level_of_subcurve(smooth, {0, 1, 2}).is_discrete());
  EXPECT_THROW(level_of_subcurve(smooth, {1}), ArgumentError);
  CombinatorialType cusp(3, {{0, 0, {1, 2, 3}}}, {elliptic(0, {0})});
  EXPECT_TRUE(level_of_singularity(cusp, 0).is_one_block());
  CombinatorialType tacnode(3, {{0, 0, {1, 2}}, {1, 0, {3}}}, {elliptic(0, {0, 1})});
  EXPECT_EQ(level_of_singularity(tacnode, 0), P(3, {{1, 2}, {3}}));
  EXPECT_THROW(level_of_singularity(smooth, 0), ArgumentError);
}

TEST(Level, MarkingsOnSubcurveSemantics) {
  CombinatorialType t(3, {{0, 1, {1, 2}}, {1, 0, {3}}}, {node(0, 0, 1)});
  EXPECT_TRUE(level_of_subcurve(t, {0}).is_discrete());
  EXPECT_EQ(level_of_subcurve(t, {0}, MarkingsOnSubcurve::Grouped), P(3, {{1, 2}, {3}}));
}

TEST(Level, MonotoneUnderInclusion) {
  for (const auto& t : types3()) {
    const auto subs = genus_one_subcurves(t);
    for (const auto& a : subs)
      for (const auto& b : subs)
        if (std::includes(b.begin(), b.end(), a.begin(), a.end())) ASSERT_TRUE(coarser_or_equal(level_of_subcurve(t, a), level_of_subcurve(t, b)));
  }
}

TEST(Automorphisms, Examples) {
  CombinatorialType dm(3, {{0, 1, {1}}, {1, 0, {2, 3}}}, {node(0, 0, 1)});
  EXPECT_FALSE(has_infinitesimal_automorphisms(dm));
  CombinatorialType bare_tacnode(2, {{0, 0, {1}}, {1, 0, {2}}}, {elliptic(0, {0, 1})});
  EXPECT_TRUE(has_infinitesimal_automorphisms(bare_tacnode));
  CombinatorialType cusp(3, {{0, 0, {1, 2, 3}}}, {elliptic(0, {0})});
  EXPECT_FALSE(has_infinitesimal_automorphisms(cusp));
  CombinatorialType bare_elliptic(0, {{0, 1, {}}}, {});
  EXPECT_TRUE(has_infinitesimal_automorphisms(bare_elliptic));
}

TEST(QStability, SmoothCurveStableForEveryQ) {
  CombinatorialType smooth(3, {{0, 1, {1, 2, 3}}}, {});
  for (const auto& q : enumerate_conditions(3)) EXPECT_TRUE(is_Q_stable(smooth, q).stable);
}

TEST(QStability, CuspWithTails) {
  CombinatorialType cusp(4, {{0, 0, {}}, {1, 0, {1, 2}}, {2, 0, {3, 4}}}, {elliptic(0, {0}), node(1, 0, 1), node(2, 0, 2)});
  for (int m = 0; m < 4; ++m) {
    const auto verdict = is_Q_stable(cusp, m_stable(4, m));
    EXPECT_EQ(verdict.stable, m >= 1 && m < 2);
  }
  const auto verdict = is_Q_stable(cusp, QCondition::empty(4));
  EXPECT_EQ(verdict.clause, "singularity-level");
  CombinatorialType thin(2, {{0, 0, {}}, {1, 0, {1, 2}}}, {elliptic(0, {0}), node(1, 0, 1)});
  EXPECT_EQ(is_Q_stable(thin, m_stable(2, 1)).clause, "subcurve-level");
  EXPECT_EQ(is_Q_stable(thin, m_stable(2, 0)).clause, "singularity-level");
}

TEST(QStability, AgreesWithMStableOracle) {
  for (int n = 1; n <= 3; ++n) {
    const auto& types = n == 3 ? types3() : enumerate_types(n);
    for (const auto& t : types)
      for (int m = 0; m < n; ++m) ASSERT_EQ(is_Q_stable(t, m_stable(n, m)).stable, qstab::testing::oracle_m_stable(t, m)) << io::print_type(t) << " m=" << m;
  }
}

TEST(QStability, EveryTypeStableForSomeCondition) {
  const auto conditions = enumerate_conditions(3);
  for (const auto& t : types3()) {
    bool some = false;
    for (const auto& q : conditions) some = some || is_Q_stable(t, q).stable;
    EXPECT_TRUE(some) << io::print_type(t);
  }
}

TEST(Canonical, AgreesWithBruteForceIsomorphism) {
  const auto& types = types3();
  for (std::size_t i = 0; i < types.size(); ++i)
    for (std::size_t j = 0; j < types.size(); ++j) ASSERT_EQ(isomorphic(types[i], types[j]), i == j);
  std::vector<CombinatorialType> relabelled;
  for (const auto& t : types) {
    std::vector<Component> comps;
    const auto count = static_cast<int>(t.components().size());
    for (const auto& c : t.components()) comps.push_back({count - c.id + 7, c.genus, c.markings});
    std::vector<Singularity> sings;
    for (const auto& s : t.singularities()) {
      Singularity r{s.id + 3, s.genus, {}};
      for (const auto& [c, m] : s.branches) r.branches[count - c + 7] = m;
      sings.push_back(r);
    }
    CombinatorialType u(t.n(), comps, sings);
    ASSERT_TRUE(isomorphic(t, u));
    ASSERT_TRUE(brute_force_isomorphic(t, u));
  }
  for (std::size_t i = 0; i < types.size(); ++i)
    for (std::size_t j = i + 1; j < types.size(); ++j) ASSERT_FALSE(brute_force_isomorphic(types[i], types[j]));
}

TEST(Enumeration, OneMarking) {
  const auto types = enumerate_types(1);
  CombinatorialType smooth(1, {{0, 1, {1}}}, {});
  CombinatorialType nodal(1, {{0, 0, {1}}}, {node(0, 0, 0)});
  CombinatorialType cusp(1, {{0, 0, {1}}}, {elliptic(0, {0})});
  auto has = [&](const CombinatorialType& t) {
    return std::any_of(types.begin(), types.end(), [&](const CombinatorialType& u) { return isomorphic(t, u); });
  };
  EXPECT_TRUE(has(smooth));
  EXPECT_TRUE(has(nodal));
  EXPECT_FALSE(has(cusp));
  EXPECT_TRUE(has_infinitesimal_automorphisms(cusp));
  EXPECT_EQ(types.size(), 2u);
}

TEST(Enumeration, AllTypesValid) {
  for (int n = 1; n <= 3; ++n)
    for (const auto& t : enumerate_types(n)) {
      EXPECT_EQ(arithmetic_genus(t), 1);
      EXPECT_FALSE(has_infinitesimal_automorphisms(t));
    }
  EXPECT_THROW(enumerate_types(5), BoundsError);
}

TEST(CPStability, TacnodeAtInteriorCoordinate) {
  CombinatorialType t(3, {{0, 0, {1}}, {1, 0, {}}, {2, 0, {2, 3}}}, {elliptic(0, {0, 1}), node(1, 1, 2)});
  EXPECT_TRUE(has_infinitesimal_automorphisms(t));
  const auto level = P(3, {{1}, {2, 3}});
  EXPECT_EQ(level_of_singularity(t, 0), level);
  EXPECT_EQ(level_of_subcurve(t, minimal_genus_one_subcurve(t).components), level);
  const std::set<SetPartition> sing{SetPartition::one_block(3), level};
  std::set<SetPartition> curve;
  for (const auto& p : enumerate_partitions(3))
    if (!p.is_one_block()) curve.insert(p);
  EXPECT_TRUE(is_level_stable(t, sing, curve).stable);
  curve.erase(level);
  EXPECT_FALSE(is_level_stable(t, sing, curve).stable);
  for (const auto& q : enumerate_conditions(3)) EXPECT_FALSE(is_Q_stable(t, q).stable);
}
