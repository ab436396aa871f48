#include <gtest/gtest.h>

#include <set>

#include "qgl/error.hpp"
#include "qgl/groupoid.hpp"

namespace qgl {
namespace {

TEST(Groupoid, PairGroupoidIsValid) {
  auto g = pair_groupoid(3);
  EXPECT_EQ(g.size(), 9);
  EXPECT_EQ(g.units().size(), 3u);
  EXPECT_TRUE(validate_groupoid(g).verdict());
  int p = g.index("(0,1)");
  EXPECT_EQ(g.name(g.target(p)), "(0,0)");
  EXPECT_EQ(g.name(g.source(p)), "(1,1)");
  EXPECT_EQ(g.name(g.product(p, g.index("(1,2)"))), "(0,2)");
  EXPECT_EQ(g.product(p, p), -1);
}

TEST(Groupoid, GroupsAreOneUnitGroupoids) {
  for (const auto& g : {cyclic_group(2), cyclic_group(5), symmetric_group_3()}) {
    EXPECT_EQ(g.units().size(), 1u);
    EXPECT_TRUE(validate_groupoid(g).verdict());
  }
  auto s3 = symmetric_group_3();
  EXPECT_NE(s3.product(s3.index("213"), s3.index("132")), s3.product(s3.index("132"), s3.index("213")));
}

TEST(Groupoid, BrokenAssociativityHasWitness) {
  auto g = cyclic_group(3).with_product("g1", "g1", "g0");
  auto r = validate_groupoid(g);
  EXPECT_FALSE(r.verdict());
  const Check* c = r.find("groupoid.associativity");
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE(c->pass);
  EXPECT_NE(c->detail.find("g1"), std::string::npos);
}

TEST(Groupoid, StructuralDefectsThrowParseErrors) {
  auto g = pair_groupoid(2);
  auto inverse = g.inverse_map();
  inverse.erase("(0,1)");
  try {
    FiniteGroupoid(g.names(), g.unit_names(), g.source_map(), g.target_map(), g.mult_entries(),
                   inverse);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
    EXPECT_NE(std::string(e.what()).find("(0,1)"), std::string::npos);
  }
  auto mult = g.mult_entries();
  mult.pop_back();
  EXPECT_THROW(FiniteGroupoid(g.names(), g.unit_names(), g.source_map(), g.target_map(), mult,
                              g.inverse_map()),
               Error);
  auto names = g.names();
  names.push_back(names.front());
  EXPECT_THROW(FiniteGroupoid(names, g.unit_names(), g.source_map(), g.target_map(),
                              g.mult_entries(), g.inverse_map()),
               Error);
}

TEST(Groupoid, WrongInverseFails) {
  auto g0 = cyclic_group(3);
  auto inv = g0.inverse_map();
  inv["g1"] = "g1";
  FiniteGroupoid g(g0.names(), g0.unit_names(), g0.source_map(), g0.target_map(),
                   g0.mult_entries(), inv);
  EXPECT_FALSE(validate_groupoid(g).find("groupoid.inverse")->pass);
}

TEST(Groupoid, DisjointUnionAndProducts) {
  auto u = disjoint_union(cyclic_group(2), pair_groupoid(2), "z2.", "pair.");
  EXPECT_EQ(u.size(), 6);
  EXPECT_EQ(u.units().size(), 3u);
  EXPECT_TRUE(validate_groupoid(u).verdict());
  auto pc = pair_times_cyclic(2, 3);
  EXPECT_EQ(pc.size(), 12);
  EXPECT_EQ(pc.units().size(), 2u);
  EXPECT_TRUE(validate_groupoid(pc).verdict());
}

TEST(RandomGroupoid, SmallCases) {
  auto trivial = random_groupoid(1, 1, {1}, 1);
  EXPECT_EQ(trivial.size(), 1);
  EXPECT_EQ(trivial.units().size(), 1u);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = random_groupoid(1, 3, {1}, seed);
    EXPECT_LE(g.size(), 9);
    EXPECT_EQ(static_cast<int>(g.units().size() * g.units().size()), g.size());
    EXPECT_TRUE(validate_groupoid(g).verdict());
    auto h = random_groupoid(2, 2, {2}, seed);
    EXPECT_LE(h.size(), 30);
    EXPECT_TRUE(validate_groupoid(h).verdict());
  }
}

TEST(RandomGroupoid, DeterministicPerSeed) {
  auto a = random_groupoid(3, 3, {1, 2, 3}, 42);
  auto b = random_groupoid(3, 3, {1, 2, 3}, 42);
  EXPECT_EQ(a.names(), b.names());
  EXPECT_EQ(a.mult_entries(), b.mult_entries());
  EXPECT_LE(a.size(), 30);
}

}  // namespace
}  // namespace qgl
