#include <gtest/gtest.h>

#include <peiffer/enumerate.hpp>

#include "helpers.hpp"

using namespace peiffer;
using testing_support::to_set;

namespace {

TEST(GroupCatalog, TablesAreGroups)
{
  for (const auto& g : group_catalog()) {
    auto o = oracle::group_of(g);
    EXPECT_EQ(o.e(), g.identity()) << g.name();
    for (std::uint32_t a = 0; a < o.n; ++a) {
      EXPECT_EQ(o(a, o.inv(a)), o.e());
      for (std::uint32_t b = 0; b < o.n; ++b)
        for (std::uint32_t c = 0; c < o.n; ++c)
          ASSERT_EQ(o(o(a, b), c), o(a, o(b, c))) << g.name();
    }
  }
}

TEST(GroupCatalog, FourteenPairwiseNonIsomorphicGroups)
{
  const auto& cat = group_catalog();
  ASSERT_EQ(cat.size(), 14u);
  std::set<std::string> prints;
  for (const auto& g : cat)
    prints.insert(fingerprint(g));
  EXPECT_EQ(prints.size(), cat.size());
}

TEST(GroupCatalog, RejectsBrokenTables)
{
  EXPECT_THROW(FiniteGroup::from_table({{0, 0}, {0, 0}}), Error);
  EXPECT_THROW(FiniteGroup::from_table({{0, 1}, {1, 1}}), Error);
  try {
    FiniteGroup::from_table({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}});
    FAIL() << "non-group accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AxiomViolation);
  }
}

TEST(Subgroups, ClosureMatchesOracleOnAllPairs)
{
  for (const auto& g : group_catalog()) {
    auto o = oracle::group_of(g);
    for (GroupElement a = 0; a < g.order(); ++a)
      for (GroupElement b = 0; b < g.order(); ++b) {
        const GroupElement gens[] = {a, b};
        EXPECT_EQ(to_set(generated_subobject(g, gens, false)), oracle::closure(o, {a, b}));
        EXPECT_EQ(to_set(generated_subobject(g, gens, true)), oracle::normal_closure(o, {a, b}));
      }
  }
}

TEST(Subgroups, AllSubobjectsMatchesOracle)
{
  for (const auto& g : group_catalog()) {
    std::set<oracle::Set> lib;
    for (const auto& s : all_subobjects(g))
      lib.insert(to_set(s));
    EXPECT_EQ(lib, oracle::all_subgroups(oracle::group_of(g))) << g.name();
  }
}

TEST(Subgroups, NormalityAndCommutators)
{
  for (const auto& g : group_catalog()) {
    auto o = oracle::group_of(g);
    for (const auto& s : all_subobjects(g)) {
      EXPECT_EQ(is_normal(s), oracle::is_normal(o, to_set(s)));
      EXPECT_EQ(to_set(huq_commutator(s, whole(g))), oracle::commutator(o, to_set(s), oracle::whole(o)));
    }
  }
}

TEST(Subgroups, DerivedSubgroupOrders)
{
  // Orders of [G,G]: S3 -> 3, D4 and Q8 -> 2, abelian -> 1.
  EXPECT_EQ(size_of(huq_commutator(whole(catalog_group("S3")), whole(catalog_group("S3")))), 3u);
  EXPECT_EQ(size_of(huq_commutator(whole(catalog_group("D4")), whole(catalog_group("D4")))), 2u);
  EXPECT_EQ(size_of(huq_commutator(whole(catalog_group("Q8")), whole(catalog_group("Q8")))), 2u);
  auto z8 = cyclic_group(8);
  EXPECT_EQ(size_of(huq_commutator(whole(z8), whole(z8))), 1u);
}

TEST(Quotients, LagrangeAndProjection)
{
  for (const auto& g : group_catalog())
    for (const auto& s : all_subobjects(g)) {
      if (!is_normal(s))
        continue;
      auto q = quotient_by(s);
      EXPECT_EQ(q.object.order() * s.size(), g.order());
      EXPECT_EQ(to_set(kernel(q.projection)), to_set(s));
      EXPECT_TRUE(is_surjective(q.projection));
    }
}

TEST(Quotients, NonNormalRejected)
{
  const auto& s3 = catalog_group("S3");
  const GroupElement gens[] = {1};
  auto s = generated_subobject(s3, gens, false);
  ASSERT_FALSE(is_normal(s));
  try {
    quotient_by(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotNormal);
  }
}

TEST(Homs, CountsMatchOracle)
{
  const auto& cat = group_catalog();
  for (const auto& x : cat)
    for (const auto& b : cat) {
      if (x.order() * b.order() > 24)
        continue;
      std::size_t n = 0;
      for_each_hom(x, b, [&](const GroupHom&) { ++n; });
      EXPECT_EQ(n, oracle::all_homs(oracle::group_of(x), oracle::group_of(b)).size())
          << x.name() << " -> " << b.name();
    }
}

TEST(Homs, AutomorphismGroupOrders)
{
  for (const auto& g : group_catalog())
    EXPECT_EQ(automorphism_group(g).group.order(),
              oracle::automorphisms(oracle::group_of(g)).size())
        << g.name();
}

TEST(LieCatalog, JacobiAndDistinct)
{
  for (int p : {2, 3}) {
    std::set<std::string> prints;
    for (const auto& l : lie_catalog(p)) {
      auto o = oracle::lie_of(l);
      auto all = o.elements();
      for (const auto& a : all)
        for (const auto& b : all)
          for (const auto& c : all) {
            auto s = o.add(o.add(o.bracket(a, o.bracket(b, c)), o.bracket(b, o.bracket(c, a))),
                           o.bracket(c, o.bracket(a, b)));
            ASSERT_EQ(s, oracle::Vec(o.n, 0)) << l.name();
          }
      prints.insert(fingerprint(l));
    }
    EXPECT_EQ(prints.size(), lie_catalog(p).size());
  }
}

TEST(LieCatalog, RejectsNonLieStructure)
{
  // [e0, e1] = e0 but [e1, e0] = e0: antisymmetry fails over F3.
  std::vector<std::vector<std::vector<long long>>> t{{{0, 0}, {1, 0}}, {{1, 0}, {0, 0}}};
  EXPECT_THROW(LieAlgebra::from_structure(3, t), Error);
  EXPECT_THROW(LieAlgebra::from_structure(4, {}), Error);
}

TEST(LieSubspaces, IdealsAndDerivedMatchOracle)
{
  for (int p : {2, 3})
    for (const auto& l : lie_catalog(p)) {
      auto o = oracle::lie_of(l);
      EXPECT_EQ(to_set(huq_commutator(whole(l), whole(l))), oracle::derived(o)) << l.name();
      for (const auto& v : all_elements(l)) {
        const fp::Vector gens[] = {v};
        oracle::Vec ov(v.begin(), v.end());
        EXPECT_EQ(to_set(generated_subobject(l, gens, false)), oracle::span(o, {ov}));
        EXPECT_EQ(to_set(generated_subobject(l, gens, true)), oracle::ideal(o, {ov}));
      }
    }
}

TEST(LieSubspaces, QuotientDimensions)
{
  for (const auto& l : lie_catalog(3))
    for (const auto& s : all_subobjects(l)) {
      if (!is_normal(s))
        continue;
      auto q = quotient_by(s);
      EXPECT_EQ(q.object.dim() + s.dim(), l.dim());
      EXPECT_EQ(to_set(kernel(q.projection)), to_set(s));
    }
}

TEST(Limits, OrderCapEnforced)
{
  auto saved = limits::group_order_cap();
  limits::set_group_order_cap(4);
  EXPECT_THROW(cyclic_group(5), Error);
  limits::set_group_order_cap(saved);
  EXPECT_NO_THROW(cyclic_group(5));
}

} // namespace
