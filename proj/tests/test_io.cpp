#include <gtest/gtest.h>

#include "support.hpp"

using namespace qstab;

namespace {

SetPartition P(int n, std::vector<std::vector<int>> blocks) { return SetPartition(n, std::move(blocks)); }

/// Random genus-1 curve: a test curve, optionally face-contracted and stabilized,
/// with vertex ids shifted so they are not contiguous.
TropicalCurve random_curve() {
  using qstab::testing::uniform;
  const int n = 2 + static_cast<int>(uniform(4));
  const auto chain = qstab::testing::random_chain(n);
  auto g = build_test_curve(chain, qstab::testing::random_core(chain));
  if (!g.generators().empty() && uniform(2)) {
    const auto& gen = g.generators()[uniform(g.generators().size())];
    g = stabilize(contract(g, MonoidMap::face(g.generators(), {gen})));
  }
  const int shift = static_cast<int>(uniform(5));
  std::vector<Vertex> vertices;
  for (auto v : g.vertices()) vertices.push_back({v.id * 2 + shift, v.genus, false});
  std::vector<Edge> edges;
  for (auto e : g.edges()) edges.push_back({e.a * 2 + shift, e.b * 2 + shift, e.length});
  std::vector<Leg> legs;
  for (auto l : g.legs()) legs.push_back({l.marking, l.root * 2 + shift});
  return TropicalCurve(g.generators(), vertices, edges, legs);
}

template <class F>
ParseError parse_failure(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "expected a parse error";
  return ParseError("none");
}

}  // namespace

TEST(Chain, ThreeStep) {
  const auto chain = io::parse_chain("1234 < 12|34 < 12|3|4");
  EXPECT_EQ(chain, PartitionChain(4, {SetPartition::one_block(4), P(4, {{1, 2}, {3, 4}}), P(4, {{1, 2}, {3}, {4}})}));
  EXPECT_EQ(io::print_chain(chain), "1234 < 12|34 < 12|3|4");
  EXPECT_EQ(io::parse_chain(io::print_chain(chain)), chain);
}

TEST(Chain, NotStrict) {
  const auto e = parse_failure([] { io::parse_chain("12|3 < 12|3"); });
  EXPECT_NE(std::string(e.what()).find("semantic error"), std::string::npos);
}

TEST(Chain, EmptyNeedsN) {
  EXPECT_EQ(io::parse_chain("", 3).size(), 0u);
  EXPECT_THROW(io::parse_chain(""), ParseError);
}

TEST(Chain, RoundTripAllChains) {
  for (int n = 1; n <= 4; ++n)
    for (const auto& c : enumerate_chains(n)) ASSERT_EQ(io::parse_chain(io::print_chain(c), n), c);
}

TEST(Partition, Forms) {
  EXPECT_EQ(io::parse_partition("{1,2}{3}"), P(3, {{1, 2}, {3}}));
  EXPECT_EQ(io::parse_partition("12|3"), P(3, {{1, 2}, {3}}));
  EXPECT_EQ(io::parse_partition("1,2|3"), P(3, {{1, 2}, {3}}));
  EXPECT_THROW(io::parse_partition("1|2", 3), ParseError);
  EXPECT_THROW(io::parse_partition("{1,2}{2}"), ParseError);
}

TEST(Curve, DslExample) {
  const auto g = io::parse_curve("gens e1,e2; v0:1; v1:0; v2:0\ne 0-1:e1; e 1-2:e2\nl1@2; l2@2; l3@1");
  EXPECT_EQ(g.n(), 3);
  EXPECT_EQ(radial_structure(g).radii.size(), 2u);
  EXPECT_EQ(io::print_curve(g), "gens e1,e2; v0:1; v1:0; v2:0; e 0-1:e1; e 1-2:e2; l1@2; l2@2; l3@1");
}

TEST(Curve, Comments) {
  const auto g = io::parse_curve("# header\ngens a # one generator\nv0:1; v1:0\ne 0-1:a\nl1@1; l2@1; l3@1 # legs\n");
  EXPECT_EQ(io::print_curve(g), "gens a; v0:1; v1:0; e 0-1:a; l1@1; l2@1; l3@1");
}

TEST(Curve, RoundTripRandom) {
  for (int t = 0; t < 1000; ++t) {
    const auto g = random_curve();
    ASSERT_EQ(io::parse_curve(io::print_curve(g)), g) << io::print_curve(g);
    ASSERT_EQ(io::curve_from_json(io::parse_json(io::curve_to_json(g).dump())), g);
  }
}

TEST(Curve, SyntaxErrorPosition) {
  const auto e = parse_failure([] { io::parse_curve("gens a\nv0:1\nx 0-1:a"); });
  EXPECT_EQ(e.line(), 3);
  EXPECT_EQ(e.column(), 1);
  const auto f = parse_failure([] { io::parse_curve("gens a; v0:1; e 0-1 a"); });
  EXPECT_EQ(f.line(), 1);
  EXPECT_EQ(f.column(), 21);
}

TEST(Curve, SemanticError) {
  const auto e = parse_failure([] { io::parse_curve("gens a; v0:1; l2@0"); });
  EXPECT_NE(std::string(e.what()).find("semantic error"), std::string::npos);
}

TEST(Json, SyntaxErrorPosition) {
  const auto e = parse_failure([] { io::parse_json("{\n  \"n\": 3,\n  \"partitions\": [[[1,2],[3]] \n}"); });
  EXPECT_EQ(e.line(), 4);
}

TEST(Json, MissingFieldNamesThePath) {
  const auto e = parse_failure([] { io::curve_from_json(io::parse_json(R"({"generators":[],"vertices":[{"id":0}],"edges":[],"legs":[]})")); });
  EXPECT_NE(std::string(e.what()).find("curve.vertices[0]"), std::string::npos);
}

TEST(Type, RoundTrip) {
  for (const auto& t : enumerate_types(3)) {
    const auto text = io::print_type(t);
    const auto back = io::parse_type(text);
    ASSERT_EQ(io::print_type(back), text);
    ASSERT_TRUE(isomorphic(back, t));
    ASSERT_EQ(io::type_from_json(io::parse_json(io::type_to_json(t).dump())), t);
  }
  EXPECT_EQ(io::print_type(io::parse_type("C0 g0 {1,2}; C1 g0 {3}; E2(C0,C1)")), "C0 g0 {1,2}; C1 g0 {3}; E2(C0,C1)");
  EXPECT_THROW(io::parse_type("C0 g0 {1}; E2(C0)"), ParseError);
}

TEST(Condition, JsonRoundTrip) {
  for (const auto& q : enumerate_conditions(4)) ASSERT_EQ(io::condition_from_json(io::parse_json(io::condition_to_json(q).dump())), q);
  const auto e = parse_failure([] { io::condition_from_json(io::parse_json(R"({"n":3,"partitions":[[[1],[2,3]]]})")); });
  EXPECT_NE(std::string(e.what()).find("semantic error"), std::string::npos);
}

TEST(Cube, JsonRoundTrip) {
  for (const auto& cell : enumerate_cells(3)) {
    const auto c = cell.sample();
    ASSERT_EQ(io::cube_point_from_json(io::parse_json(io::cube_point_to_json(c).dump())), c);
  }
  const auto j = io::parse_json(R"({"n":3,"coords":[{"partition":[[1,2,3]],"value":1},{"partition":[[1],[2,3]],"value":"2/4"}]})");
  EXPECT_EQ(io::cube_point_from_json(j).at(P(3, {{1}, {2, 3}})), Rational(1, 2));
  EXPECT_THROW(io::cube_point_from_json(io::parse_json(R"({"n":3,"coords":[{"partition":[[1,2,3]],"value":"1/0"}]})")), ParseError);
  EXPECT_THROW(io::cube_point_from_json(io::parse_json(R"({"n":3,"coords":[{"partition":[[1],[2,3]],"value":"1/2"}]})")), ParseError);
}
