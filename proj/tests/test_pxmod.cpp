#include <gtest/gtest.h>

#include <map>

#include <peiffer/enumerate.hpp>

#include "helpers.hpp"

using namespace peiffer;
using testing_support::raw;
using testing_support::to_set;

namespace {

Bounds small_groups()
{
  Bounds b;
  b.max_order = 24;
  return b;
}

const std::vector<Instance<PrecrossedModule<FiniteGroup>>>& group_pxmods()
{
  static const auto v = enumerate_pxmods<FiniteGroup>(small_groups());
  return v;
}

const std::vector<Instance<PrecrossedModule<LieAlgebra>>>& lie_pxmods()
{
  static const auto v = enumerate_pxmods<LieAlgebra>(Bounds{});
  return v;
}

TEST(Enumeration, GroupCountsMatchOracle)
{
  std::map<std::string, std::size_t> lib;
  for (const auto& i : group_pxmods())
    ++lib[i.value.X.name() + " over " + i.value.B.name()];
  for (const auto& x : group_catalog())
    for (const auto& b : group_catalog()) {
      if (x.order() * b.order() > 24)
        continue;
      std::string key = x.name() + " over " + b.name();
      EXPECT_EQ(lib[key], oracle::count_pxmods(oracle::group_of(x), oracle::group_of(b))) << key;
    }
}

TEST(Enumeration, LieCountsMatchOracle)
{
  std::map<std::string, std::size_t> lib;
  for (const auto& i : lie_pxmods())
    ++lib[i.value.X.name() + " over " + i.value.B.name() + " F" + std::to_string(i.value.X.prime())];
  std::size_t total = 0;
  for (int p : {2, 3})
    for (const auto& x : lie_catalog(p))
      for (const auto& b : lie_catalog(p)) {
        if (x.dim() + b.dim() > 3)
          continue;
        std::string key = x.name() + " over " + b.name() + " F" + std::to_string(p);
        std::size_t n = oracle::count_lie_pxmods(oracle::lie_of(x), oracle::lie_of(b));
        EXPECT_EQ(lib[key], n) << key;
        total += n;
      }
  EXPECT_EQ(lie_pxmods().size(), total);
}

TEST(PeifferCommutator, WholeMatchesOracleForGroups)
{
  for (const auto& i : group_pxmods()) {
    const auto& p = i.value;
    auto o = raw(p);
    auto all = oracle::whole(o.X);
    auto lib = peiffer_commutator(p, whole(p.X), whole(p.X));
    ASSERT_EQ(to_set(lib.carrier), oracle::peiffer(o, all, all)) << i.label;
    EXPECT_TRUE(lib.normal_in_parent) << i.label;
  }
}

TEST(PeifferCommutator, SubgroupPairsMatchOracle)
{
  // Every pair of stable subgroups of X for the pxmods on S3 and D4 over Z/2.
  for (const auto& i : group_pxmods()) {
    const auto& p = i.value;
    if (p.X.order() != 6 && p.X.order() != 8)
      continue;
    if (p.B.order() != 2)
      continue;
    auto o = raw(p);
    auto subs = all_submodules(p, all_subobjects(p.X), false);
    for (const auto& m : subs)
      for (const auto& n : subs)
        ASSERT_EQ(to_set(peiffer_commutator(p, m, n).carrier), oracle::peiffer(o, to_set(m), to_set(n)))
            << i.label;
  }
}

TEST(PeifferCommutator, WholeMatchesOracleForLie)
{
  for (const auto& i : lie_pxmods()) {
    const auto& p = i.value;
    auto o = raw(p);
    auto b = testing_support::basis(o.X);
    ASSERT_EQ(to_set(peiffer_commutator(p, whole(p.X), whole(p.X)).carrier), oracle::peiffer(o, b, b))
        << i.label;
  }
}

TEST(Crossed, MatchesOracleAndTrivialPeiffer)
{
  std::size_t crossed = 0;
  for (const auto& i : group_pxmods()) {
    bool c = is_crossed(i.value).holds;
    EXPECT_EQ(c, oracle::crossed(raw(i.value))) << i.label;
    EXPECT_EQ(c, is_trivial(peiffer_commutator(i.value, whole(i.value.X), whole(i.value.X)).carrier));
    crossed += c;
  }
  EXPECT_GT(crossed, 0u);
  EXPECT_LT(crossed, group_pxmods().size());
}

TEST(Crossed, IdentityWithConjugationIsCrossed)
{
  for (const auto& g : group_catalog()) {
    auto p = make_pxmod<FiniteGroup>(identity_hom(g), conjugation_action(g));
    EXPECT_TRUE(is_crossed(p).holds) << g.name();
  }
}

TEST(Crossed, WitnessNamesFailingPair)
{
  const auto& s3 = catalog_group("S3");
  FiniteGroup one;
  auto p = make_pxmod<FiniteGroup>(zero_hom(s3, one), trivial_action(one, s3));
  auto v = is_crossed(p);
  EXPECT_FALSE(v.holds);
  EXPECT_FALSE(v.witness.empty());
}

TEST(MakePxmod, RejectsNonEquivariantBoundary)
{
  const auto& s3 = catalog_group("S3");
  try {
    make_pxmod<FiniteGroup>(identity_hom(s3), trivial_action(s3, s3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotEquivariant);
    EXPECT_FALSE(e.witness().empty());
  }
}

TEST(Reflection, QuotientByPeifferIsCrossed)
{
  for (const auto& i : group_pxmods()) {
    const auto& p = i.value;
    auto q = reflect_to_xmod(p);
    auto o = raw(p);
    auto pc = oracle::peiffer(o, oracle::whole(o.X), oracle::whole(o.X));
    EXPECT_EQ(q.object.X.order() * pc.size(), p.X.order()) << i.label;
    EXPECT_TRUE(is_crossed(q.object).holds) << i.label;
    EXPECT_FALSE(q.closure_proper) << i.label;
  }
}

TEST(Reflection, GraphCorrespondenceAndRoundtrip)
{
  for (const auto& i : group_pxmods()) {
    EXPECT_TRUE(reflection_correspondence(i.value).holds) << i.label;
    EXPECT_TRUE(normalize_roundtrip(i.value).holds) << i.label;
  }
  for (const auto& i : lie_pxmods()) {
    EXPECT_TRUE(reflection_correspondence(i.value).holds) << i.label;
    EXPECT_TRUE(normalize_roundtrip(i.value).holds) << i.label;
  }
}

TEST(Reflection, LieQuotientDimension)
{
  for (const auto& i : lie_pxmods()) {
    auto q = reflect_to_xmod(i.value);
    auto o = raw(i.value);
    auto b = testing_support::basis(o.X);
    std::size_t size = oracle::peiffer(o, b, b).size();
    std::size_t quotient = 1;
    for (std::size_t k = 0; k < q.object.X.dim(); ++k)
      quotient *= static_cast<std::size_t>(o.X.p);
    EXPECT_EQ(quotient * size, o.X.elements().size()) << i.label;
  }
}

TEST(Quotient, ErrorKinds)
{
  const auto& s3 = catalog_group("S3");
  FiniteGroup one;
  auto over_zero = make_pxmod<FiniteGroup>(zero_hom(s3, one), trivial_action(one, s3));
  auto ident = make_pxmod<FiniteGroup>(identity_hom(s3), conjugation_action(s3));
  const GroupElement t[] = {1};
  const GroupElement r[] = {2};
  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::BadSpec;
  };
  EXPECT_EQ(kind([&] { quotient_pxmod(over_zero, generated_subobject(s3, t, false)); }),
            ErrorKind::NotNormal);
  EXPECT_EQ(kind([&] { quotient_pxmod(ident, generated_subobject(s3, r, true)); }),
            ErrorKind::NonzeroBoundary);

  bool found = false;
  for (const auto& i : group_pxmods()) {
    const auto& p = i.value;
    for (const auto& s : all_subobjects(p.X)) {
      if (!is_normal(s) || is_stable(p.action, s) || !includes(kernel(p.boundary), s))
        continue;
      EXPECT_EQ(kind([&] { quotient_pxmod(p, s); }), ErrorKind::StabilityViolation);
      found = true;
      break;
    }
    if (found)
      break;
  }
  EXPECT_TRUE(found);
}

TEST(Quotient, ByClosureReportsEnlargement)
{
  const auto& s3 = catalog_group("S3");
  FiniteGroup one;
  auto p = make_pxmod<FiniteGroup>(zero_hom(s3, one), trivial_action(one, s3));
  const GroupElement t[] = {1};
  auto q = quotient_by_closure(p, generated_subobject(s3, t, false));
  EXPECT_TRUE(q.closure_proper);
  EXPECT_EQ(q.object.X.order(), 1u);
}

TEST(Pullback, OrderMatchesOracle)
{
  // Kernel pairs of quotient maps and pullbacks along identities; the pullback has
  // |{(x, y) : f x = g y}| elements.
  for (const auto& i : group_pxmods()) {
    const auto& p = i.value;
    if (p.X.order() < 4 || p.B.order() != 1)
      continue;
    std::vector<PXMorphism<FiniteGroup>> qs;
    for (const auto& s : all_subobjects(p.X))
      if (is_normal(s) && is_stable(p.action, s))
        qs.push_back(quotient_pxmod(p, s).projection);
    for (const auto& f : qs)
      for (const auto& g : {f, identity_morphism(f.target)}) {
        std::size_t n = 0;
        for (GroupElement x = 0; x < f.source.X.order(); ++x)
          for (GroupElement y = 0; y < g.source.X.order(); ++y)
            n += f.map.map[x] == g.map.map[y];
        auto pb = pullback(f, g);
        EXPECT_EQ(pb.object.X.order(), n);
        EXPECT_EQ(compose(f, pb.first).map.map, compose(g, pb.second).map.map);
      }
  }
}

TEST(Submodules, KernelAndImage)
{
  for (const auto& i : group_pxmods()) {
    const auto& p = i.value;
    auto ker = kernel(p.boundary);
    auto m = make_submodule(p, stable_closure(p.action, ker, true));
    EXPECT_TRUE(has_zero_boundary(m)) << i.label;
    EXPECT_TRUE(m.normal_in_parent) << i.label;
  }
}

} // namespace
