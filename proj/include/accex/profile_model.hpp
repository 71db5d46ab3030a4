#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "accex/rational.hpp"

namespace accex {

using Address = std::uint64_t;

inline constexpr std::string_view kSpontaneous = "<spontaneous>";

struct Symbol {
  std::string name;
  Address low = 0;
  Address high = 0;  // exclusive
  std::size_t index = 0;

  bool contains(Address addr) const { return low <= addr && addr < high; }
  bool operator==(const Symbol&) const = default;
};

// Function symbols keyed both by address and by name. Indices follow
// ascending name order, so they do not move when the binary is relocated.
class SymbolTable {
 public:
  SymbolTable() = default;

  // Validates and indexes the given (name, low, high) triples. Throws
  // OverlappingSymbols, ParseError (low >= high, duplicate name).
  static SymbolTable build(std::vector<Symbol> symbols);

  // Sorted by low address.
  std::span<const Symbol> symbols() const { return by_address_; }
  std::size_t size() const { return by_address_.size(); }
  bool empty() const { return by_address_.empty(); }

  const Symbol* find(std::string_view name) const;
  const Symbol& by_index(std::size_t index) const;

  bool operator==(const SymbolTable& other) const {
    return by_address_ == other.by_address_;
  }

 private:
  std::vector<Symbol> by_address_;
  std::map<std::string, std::size_t, std::less<>> name_index_;  // -> position
  std::vector<std::size_t> index_to_position_;
};

const Symbol* lookup_symbol(const SymbolTable& table, Address addr);

struct Histogram {
  Address low = 0;
  Address high = 0;
  std::vector<std::uint64_t> bins;
  Rational quantum{1, 100};  // seconds per sample

  Address bin_width() const { return (high - low) / bins.size(); }
  Rational prof_rate() const { return 1 / quantum; }
  std::uint64_t total_samples() const;
  Rational total_time() const { return Rational(total_samples()) * quantum; }

  // Throws MismatchedGeometry (empty, low >= high, zero rate) and
  // FractionalBinWidth.
  void validate() const;

  bool operator==(const Histogram&) const = default;
};

// [low + i*w, low + (i+1)*w). Throws IndexOutOfRange.
std::pair<Address, Address> bin_range(const Histogram& hist, std::size_t i);

// Element-wise sum. Throws MismatchedGeometry unless every input shares
// low, high, bin count and quantum.
Histogram merge_histograms(std::span<const Histogram> histograms);

struct RawArc {
  Address from_pc = 0;
  Address self_pc = 0;
  std::uint64_t count = 0;

  bool operator==(const RawArc&) const = default;
};

// Self-time samples of `callee` recorded for one group of calls from
// `caller` (kSpontaneous for root time). Only the portable format carries
// these; gmon input never does.
struct CallGroup {
  std::string caller;
  std::string callee;
  std::uint64_t samples = 0;
  std::uint64_t calls = 1;

  bool operator==(const CallGroup&) const = default;
};

struct RawProfile {
  std::vector<Histogram> histograms;
  std::vector<RawArc> arcs;
  std::vector<CallGroup> call_groups;
  Rational quantum{1, 100};

  bool operator==(const RawProfile&) const = default;
};

// Sums arcs with identical (from_pc, self_pc) and drops zero counts.
// Output is sorted by (from_pc, self_pc).
std::vector<RawArc> merge_arcs(std::span<const RawArc> arcs);

// Replaces the quantum of the profile and all of its histograms.
void override_quantum(RawProfile& profile, const Rational& quantum);

// Shifts every address (symbols, histograms, arcs) by `delta`.
RawProfile relocate(const RawProfile& profile, Address delta);
SymbolTable relocate(const SymbolTable& table, Address delta);

}  // namespace accex
