#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "accex/whatif.hpp"

namespace accex {

struct Edit {
  enum class Kind { BinRange, PerIdValues, ArcPerCall };

  Kind kind = Kind::BinRange;
  std::size_t min = 0;
  std::size_t max = 0;
  Rational c;                   // BinRange
  std::vector<Rational> values;  // PerIdValues
  std::string caller;           // ArcPerCall
  std::string callee;
  Rational per_call_seconds;
};

struct SweepSpec {
  std::string target;
  std::vector<Rational> grid;
};

struct Scenario {
  std::vector<Edit> edits;
  std::optional<SweepSpec> sweep;
};

inline constexpr int kScenarioVersion = 1;

// Throws ParseError, SchemaVersionUnsupported, NegativeReplacement.
Scenario parse_scenario(std::string_view text);
Scenario scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const Scenario& scenario);

// Comma-separated reduction fractions, e.g. "0,0.25,1".
std::vector<Rational> parse_grid(std::string_view csv);

struct ScenarioRun {
  WhatIfProfile edited;
  CallGraph graph;
  WhatIfResult result;
};

// Applies the edits in order; total_bin accumulates across edits.
ScenarioRun run_scenario(const WhatIfProfile& base, const Scenario& scenario);

nlohmann::json whatif_json(const WhatIfResult& result);
std::string render_whatif(const WhatIfResult& result);

nlohmann::json sweep_json(const SweepCurve& curve);
// r, total_reduction_pct, then one share column per function (name order).
std::string sweep_csv(const SweepCurve& curve);

}  // namespace accex
