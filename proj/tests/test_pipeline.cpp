#include <gtest/gtest.h>

#include <nashe8/pipeline.hpp>

using namespace nashe8;

namespace {

PipelineOptions up_to(const std::string& stage) {
  PipelineOptions o;
  o.stage = stage;
  return o;
}

// every leaf of the certificate is a string, bool, array or object: no JSON numbers
bool no_numbers(const Json& j) {
  if (j.is_number()) return false;
  if (j.is_structured())
    for (const auto& x : j) if (!no_numbers(x)) return false;
  return true;
}

}  // namespace

TEST(Pipeline, CleanRunRefutesEveryPair) {
  const auto r = run_pipeline(reference_tables(), up_to("strata"));
  EXPECT_EQ(r.exit_code(), 0) << text_report(r);
  ASSERT_TRUE(r.verdict.has_value());
  EXPECT_TRUE(r.verdict->complete());
  EXPECT_EQ(r.verdict->refuted, 56);
  EXPECT_EQ(r.verdict->by_semicontinuity + r.verdict->by_minimum_return + r.verdict->by_strata, 56);
}

TEST(Pipeline, StageSelectionStopsEarly) {
  const auto r = run_pipeline(reference_tables(), up_to("tables"));
  EXPECT_EQ(r.exit_code(), 0);
  EXPECT_FALSE(r.verdict.has_value());
  EXPECT_NE(r.stage("tables"), nullptr);
  EXPECT_EQ(r.stage("strata"), nullptr);
}

TEST(Certificate, SchemaAndByteStability) {
  const auto o = up_to("strata");
  const auto a = certificate_string(run_pipeline(reference_tables(), o), o);
  const auto b = certificate_string(run_pipeline(reference_tables(), o), o);
  EXPECT_EQ(a, b);
  const auto j = Json::parse(a);
  EXPECT_EQ(j["schema"], kSchema);
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["verdict"]["status"], "refuted");
  EXPECT_EQ(j["verdict"]["refuted"], "56");
  EXPECT_TRUE(no_numbers(j));
  EXPECT_EQ(a.back(), '\n');
}

TEST(Tamper, DeletedStrataRowLeavesCaseUnresolved) {
  auto t = reference_tables();
  const auto it = std::find_if(t.strata.begin(), t.strata.end(),
                               [](const StratumRow& r) { return case_label(r.i, r.returns) == "N8:3+5"; });
  ASSERT_NE(it, t.strata.end());
  t.strata.erase(it);
  const auto r = run_pipeline(t, up_to("strata"));
  EXPECT_EQ(r.exit_code(), 2);
  ASSERT_TRUE(r.verdict.has_value());
  EXPECT_FALSE(r.verdict->complete());
  bool named = false;
  for (const auto& u : r.verdict->unresolved) named = named || u.find("N8:3+5") != std::string::npos;
  EXPECT_TRUE(named);
}

TEST(Tamper, SingleEditsAreDetected) {
  std::mt19937_64 rng(2024);
  for (int n = 0; n < 12; ++n) {
    auto t = reference_tables();
    const auto what = tamper(t, rng);
    EXPECT_EQ(run_pipeline(t, up_to("strata")).exit_code(), 2) << what;
  }
}

TEST(Tamper, StoredDeltaEdit) {
  auto t = reference_tables();
  t.strata.front().delta += 1;
  const auto r = run_pipeline(t, up_to("strata"));
  EXPECT_EQ(r.exit_code(), 2);
  ASSERT_NE(r.stage("strata"), nullptr);
  EXPECT_FALSE(r.stage("strata")->failures().empty());
}
