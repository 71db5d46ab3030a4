#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "accex/callgraph.hpp"
#include "accex/whatif.hpp"

namespace accex {

struct ReportOptions {
  bool all = false;  // include functions with no time and no calls
};

struct FlatRow {
  Rational percent;
  Rational cumulative_seconds;
  Rational self_seconds;
  std::uint64_t calls = 0;
  std::optional<Rational> self_per_call;
  std::optional<Rational> total_per_call;
  std::string name;
};

// Self time descending, then calls descending, then name ascending.
bool flat_order_less(const FlatRow& a, const FlatRow& b);

std::vector<FlatRow> flat_profile(const CallGraph& graph, const ReportOptions& options = {});

struct CgLine {
  std::string name;
  std::optional<std::size_t> index;
  std::optional<Rational> self;  // empty for cycle-internal and <spontaneous>
  std::optional<Rational> children;
  std::uint64_t count = 0;
  std::optional<std::uint64_t> unit_calls;  // "count/unit_calls" when set
  std::optional<Rational> per_call;
  bool cycle_internal = false;
  bool spontaneous = false;
};

struct CgEntry {
  std::size_t index = 0;
  std::string name;  // display name, cycle-annotated
  bool cycle_whole = false;
  Rational percent;
  Rational self;
  Rational children;
  std::uint64_t calls = 0;
  std::uint64_t recursive_calls = 0;
  std::optional<Rational> per_call;
  std::vector<CgLine> callers;
  std::vector<CgLine> children_lines;
};

// Entries numbered from [1] for the top-level caller downwards.
std::vector<CgEntry> callgraph_profile(const CallGraph& graph, const ReportOptions& options = {});

std::string render_flat(const CallGraph& graph, const std::vector<FlatRow>& rows);
std::string render_callgraph(const CallGraph& graph, const std::vector<CgEntry>& entries);
std::string ids_table(const std::vector<AttributionRecord>& records, const Rational& quantum);

// Shortest exact decimal for terminating fractions, else 6 digits.
std::string format_quantum(const Rational& quantum);

nlohmann::json flat_json(const std::vector<FlatRow>& rows);
nlohmann::json callgraph_json(const std::vector<CgEntry>& entries);
nlohmann::json ids_json(const std::vector<AttributionRecord>& records, const Rational& quantum);
nlohmann::json totals_json(const CallGraph& graph);

}  // namespace accex
