#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "accex/callgraph.hpp"
#include "accex/error.hpp"
#include "test_support.hpp"

namespace accex {
namespace {

using testing::Builder;

Rational secs(std::uint64_t samples) { return Rational(samples, 100); }

TEST(AssignSamples, StraddlingBinSplitsByOverlap) {
  Histogram h;
  h.low = 0;
  h.high = 0x10;
  h.bins = {100};
  const SymbolTable t = SymbolTable::build({{"a", 0x0, 0x4, 0}, {"b", 0x4, 0x10, 0}});
  const SampleAssignment s = assign_samples(h, t);
  EXPECT_EQ(s.self_time[0], Rational(25, 100));
  EXPECT_EQ(s.self_time[1], Rational(75, 100));
  EXPECT_EQ(s.unattributed, 0);
}

TEST(AssignSamples, GapsAreUnattributedAndTotalIsConserved) {
  Histogram h;
  h.low = 0;
  h.high = 0x30;
  h.bins = {3, 7, 11};
  const SymbolTable t = SymbolTable::build({{"a", 0x8, 0x18, 0}});
  const SampleAssignment s = assign_samples(h, t);
  EXPECT_EQ(s.self_time[0], Rational(3 * 8 + 7 * 8, 16 * 100));
  EXPECT_EQ(s.self_time[0] + s.unattributed, h.total_time());
}

TEST(CallGraph, NoSymbolsThrows) {
  try {
    build_call_graph(RawProfile{}, SymbolTable{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoSymbols);
  }
}

TEST(CallGraph, ArcsOutsideSymbolsAreDropped) {
  Builder b;
  b.fn("a", 1).fn("b", 1);
  b.arcs.push_back({0x9000, 0x1100, 3});
  const CallGraph g = b.run();
  EXPECT_EQ(g.dropped_arcs, 1u);
  EXPECT_TRUE(g.edges.empty());
}

TEST(CallGraph, WorkedTopoOrderAndTotals) {
  const auto gen = fixture::generate(testing::load_spec("worked.spec.json"));
  const CallGraph g = analyze(gen.profile, gen.symbols);
  std::vector<std::string> order;
  for (const auto& comp : g.components) order.push_back(g.nodes[comp.front()].symbol.name);
  auto pos = [&](const std::string& n) { return std::find(order.begin(), order.end(), n) - order.begin(); };
  EXPECT_LT(pos("func5"), pos("func4"));
  EXPECT_LT(pos("func4"), pos("func3"));
  EXPECT_LT(pos("func3"), pos("main"));
  EXPECT_EQ(g.find("func5")->total(), Rational(688, 100));
  EXPECT_EQ(g.find("func4")->total(), Rational(688, 100) * 2 / 3);
  EXPECT_EQ(g.find("func3")->total(), Rational(688, 100));
  EXPECT_EQ(g.find("main")->total(), Rational(934, 100));
  EXPECT_EQ(total_time(g), Rational(934, 100));
  EXPECT_TRUE(g.find("main")->spontaneous);
}

TEST(CallGraph, ChildTimeIsProportionalToCalls) {
  Builder b;
  b.fn("p", 0).fn("q", 0).fn("leaf", 300);
  b.call("p", "leaf", 1).call("q", "leaf", 2);
  const CallGraph g = b.run();
  EXPECT_EQ(g.find("p")->total(), secs(100));
  EXPECT_EQ(g.find("q")->total(), secs(200));
  for (const ArcEdge& e : g.edges) {
    EXPECT_EQ(e.attributed_time, secs(100) * e.count);
  }
}

TEST(CallGraph, CalleeWithoutCallsPropagatesNothing) {
  Builder b;
  b.fn("a", 5).fn("b", 7);
  const CallGraph g = b.run();
  EXPECT_EQ(g.find("a")->total(), secs(5));
  EXPECT_EQ(g.find("b")->total(), secs(7));
  EXPECT_EQ(g.spontaneous.size(), 2u);
}

TEST(CallGraph, MutualRecursionFormsOneCycle) {
  Builder b;
  b.fn("main", 10).fn("even", 20).fn("odd", 30).fn("leaf", 40);
  b.call("main", "even", 2).call("even", "odd", 5).call("odd", "even", 4).call("odd", "leaf", 8);
  const CallGraph g = b.run();
  ASSERT_EQ(g.cycles.size(), 1u);
  const Cycle& c = g.cycles[0];
  EXPECT_EQ(c.number, 1u);
  EXPECT_EQ(c.members.size(), 2u);
  EXPECT_EQ(c.calls_external, 2u);
  EXPECT_EQ(c.self_time, secs(50));
  EXPECT_EQ(c.child_time, secs(40));
  const std::size_t even = g.find("even")->symbol.index;
  EXPECT_EQ(g.unit_total(even), secs(90));
  EXPECT_EQ(g.unit_calls(even), 2u);
  EXPECT_EQ(g.find("main")->total(), secs(100));
  for (const ArcEdge& e : g.edges) {
    const bool internal = g.nodes[e.caller].cycle && g.nodes[e.callee].cycle;
    EXPECT_EQ(e.cycle_internal, internal);
    if (internal) EXPECT_EQ(e.attributed_time, 0);
  }
}

TEST(CallGraph, SelfRecursionCountsSeparately) {
  Builder b;
  b.fn("main", 0).fn("fact", 50);
  b.call("main", "fact", 1).call("fact", "fact", 9);
  const CallGraph g = b.run();
  const Node& fact = *g.find("fact");
  EXPECT_EQ(fact.calls_in, 1u);
  EXPECT_EQ(fact.self_calls, 9u);
  EXPECT_EQ(g.find("main")->total(), secs(50));
  EXPECT_EQ(g.cycles.size(), 1u);
}

TEST(CallGraph, ConservationAtRoots) {
  Builder b;
  b.fn("r1", 3).fn("r2", 4).fn("m", 5).fn("x", 6).fn("y", 7);
  b.call("r1", "m", 1).call("r2", "m", 3).call("m", "x", 2).call("m", "y", 1).call("r2", "y", 1);
  const CallGraph g = b.run();
  Rational roots = 0;
  for (std::size_t i : g.spontaneous) roots += g.nodes[i].total();
  EXPECT_EQ(roots, total_time(g));
}

TEST(CallGraph, ArcOrderDoesNotMatter) {
  Builder b;
  b.fn("a", 3).fn("b", 4).fn("c", 5).fn("d", 6);
  b.call("a", "b", 1).call("a", "c", 2).call("b", "d", 3).call("c", "d", 1).call("b", "c", 2);
  const CallGraph base = b.run();
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    Builder shuffled = b;
    std::shuffle(shuffled.arcs.begin(), shuffled.arcs.end(), rng);
    const CallGraph g = shuffled.run();
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      EXPECT_EQ(g.nodes[i].total(), base.nodes[i].total());
    }
  }
}

TEST(CallGraph, RepropagateAfterSelfChange) {
  Builder b;
  b.fn("main", 0).fn("leaf", 100);
  b.call("main", "leaf", 4);
  CallGraph g = b.run();
  g.nodes[g.find("leaf")->symbol.index].self_time = secs(20);
  repropagate(g);
  EXPECT_EQ(g.find("main")->total(), secs(20));
  EXPECT_EQ(total_time(g), secs(20));
}

}  // namespace
}  // namespace accex
