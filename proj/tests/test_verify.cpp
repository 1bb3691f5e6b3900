#include <gtest/gtest.h>

#include <peiffer/io/tasks.hpp>
#include <peiffer/verify.hpp>

using namespace peiffer;

namespace {

VerifyOptions small(std::size_t order = 12)
{
  VerifyOptions o;
  o.bounds.max_order = order;
  o.bounds.max_dim = 2;
  o.timing = false;
  o.pair_cap = 500;
  o.samples = 50;
  return o;
}

TEST(Verify, CatalogAndUnknownProperty)
{
  EXPECT_EQ(property_catalog().size(), 18u);
  try {
    verify_property("no-such-property", "group", small());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownProperty);
  }
  EXPECT_THROW(verify_property("five-term", "rings", small()), Error);
}

TEST(Verify, EveryPropertyHoldsOnSmallBounds)
{
  for (const auto& info : property_catalog())
    for (const char* theory : {"group", "lie"}) {
      auto r = verify_property(info.name, theory, small());
      EXPECT_TRUE(r.holds()) << info.name << " " << theory << ": "
                             << (r.first_failure ? r.first_failure->witness : "");
      EXPECT_EQ(r.passed + r.failed, r.instances);
    }
}

TEST(Verify, EmptyStreamHoldsVacuously)
{
  auto o = small(0);
  auto r = verify_property("crossed-iff-trivial-peiffer", "group", o);
  EXPECT_EQ(r.instances, 0u);
  EXPECT_TRUE(r.holds());
}

TEST(Verify, ReportsAreDeterministicAcrossRunsAndThreads)
{
  for (const char* name : {"peiffer-image-preservation", "pullback-stability", "main-theorem-equivalence"}) {
    auto o = small(16);
    auto a = to_json(verify_property(name, "group", o)).dump();
    auto b = to_json(verify_property(name, "group", o)).dump();
    o.threads = 3;
    auto c = to_json(verify_property(name, "group", o)).dump();
    EXPECT_EQ(a, b) << name;
    EXPECT_EQ(a, c) << name;
  }
}

TEST(Verify, SeedChangesSampledStream)
{
  auto o = small(24);
  o.samples = 30;
  auto a = verify_property("peiffer-image-preservation", "group", o);
  o.seed = 99;
  auto b = verify_property("peiffer-image-preservation", "group", o);
  EXPECT_EQ(a.instances, b.instances);
  EXPECT_TRUE(a.holds() && b.holds());
}

TEST(Verify, MergeKeepsEarliestFailureByStreamPosition)
{
  // Chunk 0 passes 3, chunk 1 fails at local 1, chunk 2 fails at local 0.
  auto chunks = detail::run_chunks(3, 2, [](std::size_t chunk, detail::Tally& t) {
    for (std::size_t k = 0; k < 3; ++k)
      t.check([&] { return std::to_string(chunk) + ":" + std::to_string(k); },
              [] { return io::Json(); },
              [&] { return (chunk == 1 && k == 1) || chunk == 2 ? fail("x") : Verdict{}; });
  });
  PropertyReport r;
  detail::merge_into(r, chunks);
  EXPECT_EQ(r.instances, 9u);
  EXPECT_EQ(r.failed, 4u);
  ASSERT_TRUE(r.first_failure);
  EXPECT_EQ(r.first_failure->index, 4u);
  EXPECT_EQ(r.first_failure->label, "1:1");
}

TEST(Verify, LibraryErrorsCountAsFailures)
{
  detail::Tally t;
  t.check([] { return std::string("boom"); }, [] { return io::Json(); },
          []() -> Verdict { throw Error(ErrorKind::NotCentral, "x"); });
  auto r = t.take();
  EXPECT_EQ(r.failed, 1u);
  EXPECT_NE(r.first->witness.find("NotCentral"), std::string::npos);
}

TEST(Verify, ReplayDocumentsReproduceTheInstance)
{
  Bounds b;
  b.max_order = 12;
  auto pxmods = enumerate_pxmods<FiniteGroup>(b);
  ExtensionEnumerator<FiniteGroup> ext(pxmods);
  std::size_t n = 0;
  for (std::size_t i = 0; i < pxmods.size() && n < 200; ++i)
    ext.for_each_from(i, [&](const Instance<Extension<FiniteGroup>>& e) {
      auto doc = io::load_document(detail::replay_extension(e.value, "central"));
      auto r = io::run_task("central", doc);
      EXPECT_EQ(r.verdict, is_central(e.value).central) << e.label;
      ++n;
    });
  EXPECT_GT(n, 0u);
}

TEST(Verify, JsonShape)
{
  auto j = to_json(verify_property("reflection-is-crossed", "lie", small()));
  EXPECT_EQ(j["property"], "reflection-is-crossed");
  EXPECT_EQ(j["theory"], "lie");
  EXPECT_TRUE(j["bounds"].contains("max_dim"));
  EXPECT_EQ(j["failures"], 0);
  EXPECT_TRUE(j["first_failure"].is_null());
  EXPECT_FALSE(j.contains("seconds"));
}

} // namespace
