#include <gtest/gtest.h>

#include "accex/error.hpp"
#include "accex/profile_model.hpp"

namespace accex {
namespace {

Histogram make_hist(Address low, Address high, std::vector<std::uint64_t> bins) {
  Histogram h;
  h.low = low;
  h.high = high;
  h.bins = std::move(bins);
  return h;
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no accex::Error thrown";
  return ErrorCode::IoError;
}

TEST(Histogram, BinRangesTileTheRange) {
  const Histogram h = make_hist(0x1000, 0x1100, std::vector<std::uint64_t>(16, 0));
  EXPECT_EQ(h.bin_width(), 0x10u);
  Address expected_low = h.low;
  for (std::size_t i = 0; i < h.bins.size(); ++i) {
    const auto [lo, hi] = bin_range(h, i);
    EXPECT_EQ(lo, expected_low);
    EXPECT_EQ(hi - lo, h.bin_width());
    expected_low = hi;
  }
  EXPECT_EQ(expected_low, h.high);
  EXPECT_EQ(code_of([&] { bin_range(h, 16); }), ErrorCode::IndexOutOfRange);
}

TEST(Histogram, ValidateRejectsBadGeometry) {
  EXPECT_EQ(code_of([] { make_hist(0x10, 0x10, {1}).validate(); }),
            ErrorCode::MismatchedGeometry);
  EXPECT_EQ(code_of([] { make_hist(0, 0x10, {}).validate(); }), ErrorCode::MismatchedGeometry);
  EXPECT_EQ(code_of([] { make_hist(0, 10, {1, 1, 1}).validate(); }),
            ErrorCode::FractionalBinWidth);
  EXPECT_NO_THROW(make_hist(0, 12, {1, 1, 1}).validate());
}

TEST(Histogram, TotalTimeIsExact) {
  Histogram h = make_hist(0, 0x100, {300, 388});
  EXPECT_EQ(h.total_samples(), 688u);
  EXPECT_EQ(h.total_time(), Rational(688, 100));
  EXPECT_EQ(format_fixed(h.total_time(), 2), "6.88");
  EXPECT_EQ(h.prof_rate(), 100);
}

TEST(Histogram, MergeSumsBins) {
  const std::vector<Histogram> hs = {make_hist(0, 0x40, {1, 2, 3, 4}),
                                     make_hist(0, 0x40, {10, 0, 0, 1})};
  EXPECT_EQ(merge_histograms(hs).bins, (std::vector<std::uint64_t>{11, 2, 3, 5}));
}

TEST(Histogram, MergeRejectsDifferentGeometry) {
  std::vector<Histogram> hs = {make_hist(0, 0x40, {1, 2, 3, 4}), make_hist(0, 0x80, {1, 2, 3, 4})};
  EXPECT_EQ(code_of([&] { merge_histograms(hs); }), ErrorCode::MismatchedGeometry);
  hs[1] = make_hist(0, 0x40, {1, 2, 3, 4});
  hs[1].quantum = Rational(1, 1000);
  EXPECT_EQ(code_of([&] { merge_histograms(hs); }), ErrorCode::MismatchedGeometry);
  EXPECT_EQ(code_of([] { merge_histograms({}); }), ErrorCode::MismatchedGeometry);
}

TEST(SymbolTable, IndicesFollowNameOrder) {
  const SymbolTable t = SymbolTable::build({{"zeta", 0x100, 0x200, 0},
                                            {"alpha", 0x300, 0x400, 0},
                                            {"mid", 0x200, 0x300, 0}});
  EXPECT_EQ(t.by_index(0).name, "alpha");
  EXPECT_EQ(t.by_index(1).name, "mid");
  EXPECT_EQ(t.by_index(2).name, "zeta");
  ASSERT_EQ(t.symbols().size(), 3u);
  EXPECT_EQ(t.symbols()[0].name, "zeta");
  EXPECT_EQ(t.find("mid")->low, 0x200u);
  EXPECT_EQ(t.find("nope"), nullptr);
}

TEST(SymbolTable, LookupUsesHalfOpenRanges) {
  const SymbolTable t = SymbolTable::build({{"a", 0x100, 0x200, 0}, {"b", 0x280, 0x300, 0}});
  EXPECT_EQ(lookup_symbol(t, 0xff), nullptr);
  EXPECT_EQ(lookup_symbol(t, 0x100)->name, "a");
  EXPECT_EQ(lookup_symbol(t, 0x1ff)->name, "a");
  EXPECT_EQ(lookup_symbol(t, 0x200), nullptr);
  EXPECT_EQ(lookup_symbol(t, 0x280)->name, "b");
  EXPECT_EQ(lookup_symbol(t, 0x300), nullptr);
}

TEST(SymbolTable, RejectsOverlapsAndDuplicates) {
  EXPECT_EQ(code_of([] { SymbolTable::build({{"a", 0x100, 0x200, 0}, {"b", 0x1ff, 0x300, 0}}); }),
            ErrorCode::OverlappingSymbols);
  EXPECT_EQ(code_of([] { SymbolTable::build({{"a", 0x100, 0x200, 0}, {"a", 0x200, 0x300, 0}}); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { SymbolTable::build({{"a", 0x200, 0x200, 0}}); }), ErrorCode::ParseError);
  EXPECT_NO_THROW(SymbolTable::build({{"a", 0x100, 0x200, 0}, {"b", 0x200, 0x300, 0}}));
}

TEST(RawProfile, MergeArcsSumsAndDropsZero) {
  const std::vector<RawArc> arcs = {{0x20, 0x10, 2}, {0x10, 0x30, 1}, {0x20, 0x10, 3}, {0x40, 0x10, 0}};
  const std::vector<RawArc> merged = merge_arcs(arcs);
  ASSERT_EQ(merged.size(), 2u);
  EXPECT_EQ(merged[0], (RawArc{0x10, 0x30, 1}));
  EXPECT_EQ(merged[1], (RawArc{0x20, 0x10, 5}));
}

TEST(RawProfile, RelocateShiftsEveryAddress) {
  RawProfile p;
  p.histograms.push_back(make_hist(0x100, 0x200, {1, 2}));
  p.arcs = {{0x110, 0x180, 4}};
  const RawProfile moved = relocate(p, 0x1000);
  EXPECT_EQ(moved.histograms[0].low, 0x1100u);
  EXPECT_EQ(moved.histograms[0].high, 0x1200u);
  EXPECT_EQ(moved.histograms[0].bins, p.histograms[0].bins);
  EXPECT_EQ(moved.arcs[0], (RawArc{0x1110, 0x1180, 4}));

  const SymbolTable t = relocate(SymbolTable::build({{"f", 0x100, 0x180, 0}}), 0x1000);
  EXPECT_EQ(t.find("f")->low, 0x1100u);
  EXPECT_EQ(t.find("f")->high, 0x1180u);
}

TEST(RawProfile, OverrideQuantumReachesHistograms) {
  RawProfile p;
  p.histograms.push_back(make_hist(0, 0x10, {5}));
  override_quantum(p, Rational(1, 1000));
  EXPECT_EQ(p.quantum, Rational(1, 1000));
  EXPECT_EQ(p.histograms[0].total_time(), Rational(5, 1000));
}

TEST(Rational, DecimalParsingAndFormatting) {
  EXPECT_EQ(parse_decimal("0.01"), Rational(1, 100));
  EXPECT_EQ(parse_decimal("3"), 3);
  EXPECT_EQ(code_of([] { parse_decimal("1e-3"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_decimal("abc"); }), ErrorCode::ParseError);
  EXPECT_EQ(from_double(0.01), Rational(1, 100));
  EXPECT_EQ(round_half_up(Rational(5, 2)), 3);
  EXPECT_EQ(round_half_up(Rational(12, 5)), 2);
  EXPECT_EQ(format_fixed(Rational(6, 100) - Rational(1, 200), 2), "0.06");
  EXPECT_EQ(format_fixed(Rational(2, 3), 4), "0.6667");
}

}  // namespace
}  // namespace accex
