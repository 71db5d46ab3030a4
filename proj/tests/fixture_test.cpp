#include <gtest/gtest.h>

#include "accex/callgraph.hpp"
#include "accex/error.hpp"
#include "test_support.hpp"

namespace accex {
namespace {

using fixture::WorkloadSpec;

TEST(Oracle, WorkedTotals) {
  const auto totals = fixture::oracle_totals(testing::load_spec("worked.spec.json"));
  EXPECT_EQ(totals.at("func5").total, Rational(688, 100));
  EXPECT_EQ(totals.at("func4").total, Rational(688, 100) * 2 / 3);
  EXPECT_EQ(totals.at("main").total, Rational(934, 100));
  EXPECT_EQ(totals.at("main").self, Rational(46, 100));
}

TEST(Oracle, SelfOverride) {
  const auto spec = testing::load_spec("worked.spec.json");
  const std::map<std::string, Rational> over = {{"func5", Rational(18, 100)}};
  const auto totals = fixture::oracle_totals(spec, &over);
  EXPECT_EQ(totals.at("main").total, Rational(264, 100));
}

TEST(Oracle, RecursionUnsupported) {
  WorkloadSpec spec;
  spec.functions = {{"a"}, {"b"}};
  spec.calls = {{"a", "b", 1, Rational(1, 100)}, {"b", "a", 1, Rational(1, 100)}};
  try {
    fixture::oracle_totals(spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CycleUnsupported);
  }
}

TEST(Oracle, RecordsMatchEngineIds) {
  const auto spec = testing::load_spec("minisat.spec.json");
  const auto expected = fixture::oracle_records(spec);
  const LoadedProfile loaded = testing::load_fixture("minisat.spec.json");
  ASSERT_EQ(loaded.whatif.records.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(loaded.whatif.records[i].caller, expected[i].caller);
    EXPECT_EQ(loaded.whatif.records[i].callee, expected[i].callee);
    EXPECT_EQ(loaded.whatif.records[i].samples, expected[i].samples);
  }
}

TEST(Generate, HistogramHoldsExactSelfTimes) {
  const auto spec = testing::load_spec("minisat.spec.json");
  const auto gen = fixture::generate(spec);
  EXPECT_EQ(gen.profile.histograms.at(0).total_samples(), 11000u);
  const CallGraph g = analyze(gen.profile, gen.symbols);
  const auto oracle = fixture::oracle_totals(spec);
  for (const auto& [name, t] : oracle) EXPECT_EQ(g.find(name)->self_time, t.self) << name;
}

TEST(Generate, SpecErrors) {
  auto code = [](const WorkloadSpec& spec) {
    try {
      fixture::generate(spec);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  WorkloadSpec spec;
  EXPECT_EQ(code(spec), ErrorCode::SpecError);
  spec.functions = {{"a"}, {"a"}};
  EXPECT_EQ(code(spec), ErrorCode::SpecError);
  spec.functions = {{"a"}};
  spec.calls = {{"a", "ghost", 1, 0}};
  EXPECT_EQ(code(spec), ErrorCode::SpecError);
  spec.calls = {};
  spec.roots = {{"a", Rational(1, 1000)}};
  EXPECT_EQ(code(spec), ErrorCode::SpecError);
}

TEST(Generate, SpecTextRoundTrip) {
  const auto spec = testing::load_spec("worked.spec.json");
  const auto again = fixture::parse_workload_spec(fixture::write_workload_spec(spec));
  EXPECT_EQ(fixture::generate(again).portable, fixture::generate(spec).portable);
}

TEST(Generate, RandomWorkloadsAreDeterministic) {
  EXPECT_EQ(fixture::write_workload_spec(fixture::random_workload(42)),
            fixture::write_workload_spec(fixture::random_workload(42)));
  EXPECT_NE(fixture::write_workload_spec(fixture::random_workload(42)),
            fixture::write_workload_spec(fixture::random_workload(43)));
}

}  // namespace
}  // namespace accex
