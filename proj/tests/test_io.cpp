#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <peiffer/io/tasks.hpp>

using namespace peiffer;
using namespace peiffer::io;

namespace {

std::string slurp(const std::string& name)
{
  std::ifstream in(std::string(SAMPLES_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Report run_sample(const std::string& file, const std::string& op = {})
{
  auto doc = parse_document(slurp(file));
  std::string task = op;
  if (task.empty())
    std::visit([&](const auto& d) { task = d.task.at("op").template get<std::string>(); }, doc);
  return run_task(task, doc);
}

ErrorKind kind_of(const std::string& text)
{
  try {
    parse_document(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorKind::BadSpec;
}

std::string message_of(const std::string& text)
{
  try {
    parse_document(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

TEST(Document, WriterRoundTripGroups)
{
  Bounds b;
  b.max_order = 16;
  for (const auto& i : enumerate_pxmods<FiniteGroup>(b)) {
    DocumentWriter<FiniteGroup> w;
    auto name = w.pxmod(i.value);
    auto doc = std::get<Document<FiniteGroup>>(load_document(Json::parse(w.document().dump())));
    const auto& p = doc.pxmod(name);
    EXPECT_EQ(p.X.table(), i.value.X.table());
    EXPECT_EQ(p.boundary.map, i.value.boundary.map);
    EXPECT_EQ(p.action.table, i.value.action.table);
  }
}

TEST(Document, WriterRoundTripLie)
{
  for (const auto& i : enumerate_pxmods<LieAlgebra>(Bounds{})) {
    DocumentWriter<LieAlgebra> w;
    auto name = w.pxmod(i.value);
    auto doc = std::get<Document<LieAlgebra>>(load_document(Json::parse(w.document().dump())));
    const auto& p = doc.pxmod(name);
    EXPECT_EQ(p.boundary.matrix, i.value.boundary.matrix);
    EXPECT_EQ(p.action.derivations, i.value.action.derivations);
    EXPECT_EQ(p.X.prime(), i.value.X.prime());
  }
}

TEST(Document, ErrorsNameKindAndPath)
{
  EXPECT_EQ(kind_of("{"), ErrorKind::BadSpec);
  EXPECT_EQ(kind_of(R"({"objects": {"G": {"table": [[0,0],[0,0]]}}})"), ErrorKind::AxiomViolation);
  EXPECT_NE(message_of(R"({"objects": {"G": {"table": [[0,0],[0,0]]}}})").find("objects.G"),
            std::string::npos);
  EXPECT_EQ(kind_of(R"({"objects": {"G": {"catalog": "S3"}}, "pxmods": {"P": {"X": "H", "B": "G",
              "boundary": "zero", "action": "trivial"}}})"),
            ErrorKind::BadSpec);
  EXPECT_EQ(kind_of(R"({"objects": {"G": {"catalog": "S3"}, "L": {"prime": 2, "abelian": 1}}})"),
            ErrorKind::BadSpec);
  EXPECT_EQ(kind_of(R"({"objects": {"L": {"prime": 4, "abelian": 1}}})"), ErrorKind::BadSpec);
  EXPECT_EQ(kind_of(R"({"objects": {"G": {"catalog": "S3"}, "H": {"cyclic": 2}},
              "pxmods": {"P": {"X": "G", "B": "H", "boundary": "identity", "action": "trivial"}}})"),
            ErrorKind::AmbientMismatch);
  std::ifstream in(std::string(TEST_DATA_DIR) + "/not_equivariant.json");
  std::ostringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(kind_of(ss.str()), ErrorKind::NotEquivariant);
}

TEST(Document, QuotientRegistersProjection)
{
  auto doc = std::get<Document<FiniteGroup>>(parse_document(slurp("q8_over_center.json")));
  EXPECT_EQ(doc.pxmod("Q").X.order(), 4u);
  EXPECT_EQ(doc.morphism("Q.projection").target.X.order(), 4u);
}

TEST(Report, JsonRoundTrip)
{
  Report r{"central", "group", false, {{"a", 1}}, "m=1 n=2", {"c"}, 0.25};
  EXPECT_EQ(report_from_json(Json::parse(to_json(r).dump())), r);
  Report bare{"peiffer", "lie", std::nullopt, Json::object(), nullptr, {}, std::nullopt};
  auto j = to_json(bare);
  EXPECT_FALSE(j.contains("verdict"));
  EXPECT_FALSE(j.contains("witness"));
  EXPECT_FALSE(j.contains("seconds"));
  EXPECT_EQ(report_from_json(j), bare);
}

TEST(Report, TextRendering)
{
  Report r{"crossed", "group", true, {{"pxmod", {{"order", 6}}}}, nullptr, {}, std::nullopt};
  EXPECT_EQ(render_text(r), "task: crossed\ntheory: group\nverdict: true\nresult:\n  pxmod:\n"
                            "    order: 6\ncaveats: []\n");
}

TEST(Tasks, SampleVerdicts)
{
  EXPECT_EQ(run_sample("s3_over_zero.json").result["commutator"]["order"], 3);
  EXPECT_EQ(run_sample("s3_identity.json").verdict, true);
  EXPECT_EQ(run_sample("s3_onto_z2.json").verdict, false);
  EXPECT_EQ(run_sample("z4_onto_z2.json").verdict, true);
  EXPECT_EQ(run_sample("q8_over_center.json").result["galois_group"]["order"], 2);
  EXPECT_EQ(run_sample("q8_over_center.json", "hopf2").result["quotient"]["order"], 2);
  EXPECT_EQ(run_sample("q8_over_center.json", "trivial").verdict, false);
  EXPECT_EQ(run_sample("q8_over_center.json", "central").verdict, true);
  EXPECT_EQ(run_sample("q8_over_center.json", "central-crosscheck").verdict, true);
  EXPECT_EQ(run_sample("d4_square.json", "double").verdict, true);
  EXPECT_EQ(run_sample("d4_square.json").verdict, false);
  EXPECT_EQ(run_sample("d4_square.json", "double-centralize").result["double_central_after"], true);
  auto five = run_sample("s3_five_term.json");
  EXPECT_EQ(five.verdict, true);
  EXPECT_EQ(five.result["exact_at_1_2"], kNotChecked);
  EXPECT_EQ(run_sample("r2_adjoint.json").verdict, true);
  EXPECT_EQ(run_sample("r2_adjoint.json", "reflect").result["crossed_after"], true);
}

TEST(Tasks, PeifferOfLieOverZeroIsDerivedAlgebra)
{
  auto doc = parse_document(R"({"objects": {"R": {"prime": 3, "catalog": "r2"},
      "Z": {"prime": 3, "abelian": 0}},
      "pxmods": {"U": {"X": "R", "B": "Z", "boundary": "zero", "action": "trivial"}},
      "task": {"pxmod": "U"}})");
  auto r = run_task("peiffer", doc, {true});
  EXPECT_EQ(r.result["commutator"]["order"], 3);
  EXPECT_TRUE(r.result["commutator"].contains("carrier"));
}

TEST(Tasks, MissingArgumentsAreBadSpec)
{
  auto doc = parse_document(slurp("s3_identity.json"));
  try {
    run_task("central", doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadSpec);
  }
  EXPECT_THROW(run_task("no-such-task", doc), Error);
}

TEST(Tasks, DoubleReportsFailureInsteadOfThrowing)
{
  auto doc = parse_document(R"({"objects": {"Z4": {"cyclic": 4}, "One": {"cyclic": 1}},
      "pxmods": {"P": {"X": "Z4", "B": "One", "boundary": "zero", "action": "trivial"},
                 "Q": {"quotient": "P", "by": {"generators": [2]}},
                 "R": {"quotient": "Q", "by": {"generators": [1]}}},
      "task": {"f": "Q.projection", "g": "Q.projection", "h": "R.projection", "j": "R.projection"}})");
  auto r = run_task("double", doc);
  EXPECT_EQ(r.verdict, false);
  EXPECT_EQ(r.result["reason"], "NotDouble");
}

} // namespace
