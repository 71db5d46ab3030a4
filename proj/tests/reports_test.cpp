#include <gtest/gtest.h>

#include "accex/reports.hpp"
#include "accex/whatif.hpp"
#include "test_support.hpp"

namespace accex {
namespace {

using testing::Builder;

std::vector<std::string> flat_names(const CallGraph& g, ReportOptions options = {}) {
  std::vector<std::string> names;
  for (const FlatRow& row : flat_profile(g, options)) names.push_back(row.name);
  return names;
}

TEST(Golden, WorkedFlatAndCallGraph) {
  const auto loaded = testing::load_fixture("worked.spec.json");
  const CallGraph& g = loaded.whatif.base;
  EXPECT_EQ(render_flat(g, flat_profile(g)),
            read_file_text(testing::golden_path("worked.flat.txt")));
  EXPECT_EQ(render_callgraph(g, callgraph_profile(g)),
            read_file_text(testing::golden_path("worked.callgraph.txt")));
  EXPECT_EQ(ids_table(loaded.whatif.records, g.quantum),
            read_file_text(testing::golden_path("worked.ids.txt")));
}

TEST(Golden, GmonInputRendersTheSame) {
  const auto gen = fixture::generate(testing::load_spec("worked.spec.json"));
  const auto loaded = testing::load_via_gmon(gen);
  const CallGraph& g = loaded.whatif.base;
  EXPECT_EQ(render_flat(g, flat_profile(g)),
            read_file_text(testing::golden_path("worked.flat.txt")));
}

TEST(Flat, TieOrderSelfThenCallsThenName) {
  Builder b;
  b.fn("zz", 50).fn("main", 0).fn("bb", 50).fn("aa", 50).fn("cc", 10).fn("dd", 10);
  b.call("main", "bb", 3).call("main", "aa", 1).call("main", "zz", 3);
  b.call("main", "cc", 2).call("main", "dd", 2);
  const CallGraph g = b.run();
  EXPECT_EQ(flat_names(g), (std::vector<std::string>{"bb", "zz", "aa", "cc", "dd", "main"}));
}

TEST(Flat, ComparatorIsStrictWeakOrder) {
  FlatRow a, b;
  a.self_seconds = b.self_seconds = 1;
  a.calls = b.calls = 2;
  a.name = b.name = "x";
  EXPECT_FALSE(flat_order_less(a, b));
  b.name = "y";
  EXPECT_TRUE(flat_order_less(a, b));
  EXPECT_FALSE(flat_order_less(b, a));
  b.calls = 3;
  EXPECT_TRUE(flat_order_less(b, a));
  a.self_seconds = 2;
  EXPECT_TRUE(flat_order_less(a, b));
}

TEST(Flat, PerCallValues) {
  Builder b;
  b.fn("main", 0).fn("worker", 3000);
  b.call("main", "worker", 3);
  const CallGraph g = b.run();
  const auto rows = flat_profile(g);
  ASSERT_EQ(rows[0].name, "worker");
  EXPECT_EQ(rows[0].calls, 3u);
  EXPECT_EQ(*rows[0].self_per_call, 10);
  EXPECT_EQ(*rows[0].total_per_call, 10);
  ASSERT_EQ(rows[1].name, "main");
  EXPECT_FALSE(rows[1].self_per_call);
  EXPECT_FALSE(rows[1].total_per_call);
  const std::string text = render_flat(g, rows);
  EXPECT_NE(text.find("10.00"), std::string::npos) << text;
}

TEST(Flat, IdleFunctionsOnlyWithAll) {
  Builder b;
  b.fn("busy", 5).fn("idle", 0);
  const CallGraph g = b.run();
  EXPECT_EQ(flat_names(g), (std::vector<std::string>{"busy"}));
  EXPECT_EQ(flat_names(g, {true}), (std::vector<std::string>{"busy", "idle"}));
}

TEST(Flat, CumulativeAndPercent) {
  const auto loaded = testing::load_fixture("worked.spec.json");
  const auto rows = flat_profile(loaded.whatif.base);
  Rational cumulative = 0, percent = 0;
  for (const FlatRow& row : rows) {
    cumulative += row.self_seconds;
    percent += row.percent;
    EXPECT_EQ(row.cumulative_seconds, cumulative);
  }
  EXPECT_EQ(cumulative, Rational(934, 100));
  EXPECT_EQ(percent, 100);
}

TEST(CallGraphReport, EditedPerCallIsSixHundredths) {
  const auto loaded = testing::load_fixture("worked.spec.json");
  const EditOutcome out = apply_bin_edit(loaded.whatif, 2, 3, Rational(1));
  const CallGraph g = recompute(out.profile);
  for (const CgEntry& e : callgraph_profile(g)) {
    if (e.name != "func5") continue;
    ASSERT_TRUE(e.per_call);
    EXPECT_EQ(*e.per_call, Rational(6, 100));
    return;
  }
  FAIL() << "func5 entry missing";
}

TEST(CallGraphReport, CycleEntriesAndAnnotations) {
  Builder b;
  b.fn("main", 10).fn("even", 20).fn("odd", 30);
  b.call("main", "even", 2).call("even", "odd", 5).call("odd", "even", 4);
  const CallGraph g = b.run();
  const auto entries = callgraph_profile(g);
  bool saw_whole = false;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const CgEntry& e = entries[i];
    EXPECT_EQ(e.index, i + 1);
    if (e.cycle_whole) {
      saw_whole = true;
      EXPECT_EQ(e.self, Rational(50, 100));
      ASSERT_LT(i + 1, entries.size());
      EXPECT_NE(entries[i + 1].name.find("<cycle 1>"), std::string::npos);
    }
  }
  EXPECT_TRUE(saw_whole);
  const std::string text = render_callgraph(g, entries);
  EXPECT_NE(text.find("<cycle 1 as a whole>"), std::string::npos) << text;
}

TEST(CallGraphReport, JsonMirrorsEntries) {
  const auto loaded = testing::load_fixture("worked.spec.json");
  const auto entries = callgraph_profile(loaded.whatif.base);
  const auto doc = callgraph_json(entries);
  ASSERT_EQ(doc.size(), entries.size());
  EXPECT_EQ(doc[0]["name"], entries[0].name);
  const auto totals = totals_json(loaded.whatif.base);
  EXPECT_DOUBLE_EQ(totals["total_seconds"].get<double>(), 9.34);
}

TEST(Quantum, Formatting) {
  EXPECT_EQ(format_quantum(Rational(1, 100)), "0.01");
  EXPECT_EQ(format_quantum(Rational(1, 1000)), "0.001");
  EXPECT_EQ(format_quantum(Rational(1, 3)), "0.333333");
}

}  // namespace
}  // namespace accex
