#include "accex/scenario.hpp"

#include <cstdio>
#include <sstream>

#include "accex/error.hpp"

namespace accex {
namespace {

using nlohmann::json;

Error schema_error(const std::string& message) {
  return Error(ErrorCode::ParseError, "scenario: " + message);
}

const json& require(const json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end()) throw schema_error(std::string("missing field '") + key + "'");
  return *it;
}

std::size_t parse_id(const json& value, const char* key) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 1) {
    throw schema_error(std::string("'") + key + "' must be a positive integer id");
  }
  return value.get<std::size_t>();
}

Rational parse_samples(const json& value) {
  if (value.is_number_integer()) {
    if (value.get<std::int64_t>() < 0) {
      throw Error(ErrorCode::NegativeReplacement, "replacement samples must be non-negative");
    }
    return Rational(value.get<std::int64_t>());
  }
  if (value.is_number() && value.get<double>() < 0) {
    throw Error(ErrorCode::NegativeReplacement, "replacement samples must be non-negative");
  }
  throw schema_error("replacement values are whole sample counts");
}

Rational parse_fraction(const json& value) {
  if (!value.is_number()) throw schema_error("sweep grid entries must be numbers");
  return from_double(value.get<double>());
}

std::string secs(const Rational& r) { return format_fixed(r, 2); }

}  // namespace

Scenario scenario_from_json(const json& doc) {
  if (!doc.is_object()) throw schema_error("document must be a JSON object");
  if (auto v = doc.find("accex_scenario_version"); v != doc.end()) {
    if (!v->is_number_integer() || v->get<int>() != kScenarioVersion) {
      throw Error(ErrorCode::SchemaVersionUnsupported,
                  "unsupported accex_scenario_version " + v->dump());
    }
  }

  Scenario scenario;
  const json edits = doc.value("edits", json::array());
  if (!edits.is_array()) throw schema_error("'edits' must be an array");
  for (const json& e : edits) {
    if (!e.is_object()) throw schema_error("each edit must be an object");
    const std::string kind = require(e, "kind").get<std::string>();
    Edit edit;
    if (kind == "bin-range") {
      edit.kind = Edit::Kind::BinRange;
      edit.min = parse_id(require(e, "min"), "min");
      edit.max = parse_id(require(e, "max"), "max");
      edit.c = parse_samples(require(e, "c"));
    } else if (kind == "per-id-values") {
      edit.kind = Edit::Kind::PerIdValues;
      edit.min = parse_id(require(e, "min"), "min");
      edit.max = parse_id(require(e, "max"), "max");
      const json& values = require(e, "values");
      if (!values.is_array()) throw schema_error("'values' must be an array");
      for (const json& v : values) edit.values.push_back(parse_samples(v));
    } else if (kind == "arc-per-call") {
      edit.kind = Edit::Kind::ArcPerCall;
      edit.caller = require(e, "caller").get<std::string>();
      edit.callee = require(e, "callee").get<std::string>();
      const json& seconds = require(e, "per_call_seconds");
      if (!seconds.is_number()) throw schema_error("'per_call_seconds' must be a number");
      if (seconds.get<double>() < 0) {
        throw Error(ErrorCode::NegativeReplacement, "per-call time must be non-negative");
      }
      edit.per_call_seconds = from_double(seconds.get<double>());
    } else {
      throw schema_error("unknown edit kind '" + kind + "'");
    }
    scenario.edits.push_back(std::move(edit));
  }

  if (auto s = doc.find("sweep"); s != doc.end() && !s->is_null()) {
    SweepSpec spec;
    spec.target = require(*s, "target").get<std::string>();
    if (auto grid = s->find("grid"); grid != s->end()) {
      if (!grid->is_array()) throw schema_error("'grid' must be an array");
      for (const json& r : *grid) spec.grid.push_back(parse_fraction(r));
    } else {
      spec.grid = default_sweep_grid();
    }
    scenario.sweep = std::move(spec);
  }
  return scenario;
}

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw schema_error(std::string("invalid JSON: ") + e.what());
  } catch (const json::type_error& e) {
    throw schema_error(e.what());
  }
  try {
    return scenario_from_json(doc);
  } catch (const json::exception& e) {
    throw schema_error(e.what());
  }
}

json scenario_to_json(const Scenario& scenario) {
  json edits = json::array();
  for (const Edit& e : scenario.edits) {
    switch (e.kind) {
      case Edit::Kind::BinRange:
        edits.push_back({{"kind", "bin-range"},
                         {"min", e.min},
                         {"max", e.max},
                         {"c", numerator(e.c).convert_to<std::int64_t>()}});
        break;
      case Edit::Kind::PerIdValues: {
        json values = json::array();
        for (const Rational& v : e.values) values.push_back(numerator(v).convert_to<std::int64_t>());
        edits.push_back(
            {{"kind", "per-id-values"}, {"min", e.min}, {"max", e.max}, {"values", values}});
        break;
      }
      case Edit::Kind::ArcPerCall:
        edits.push_back({{"kind", "arc-per-call"},
                         {"caller", e.caller},
                         {"callee", e.callee},
                         {"per_call_seconds", to_double(e.per_call_seconds)}});
        break;
    }
  }
  json doc = {{"accex_scenario_version", kScenarioVersion}, {"edits", edits}};
  if (scenario.sweep) {
    json grid = json::array();
    for (const Rational& r : scenario.sweep->grid) grid.push_back(to_double(r));
    doc["sweep"] = {{"target", scenario.sweep->target}, {"grid", grid}};
  }
  return doc;
}

std::vector<Rational> parse_grid(std::string_view csv) {
  std::vector<Rational> grid;
  std::stringstream in{std::string(csv)};
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw Error(ErrorCode::ParseError, "empty sweep grid entry");
    grid.push_back(parse_decimal(std::string_view(item).substr(first, last - first + 1)));
  }
  if (grid.empty()) throw Error(ErrorCode::ParseError, "sweep grid is empty");
  return grid;
}

ScenarioRun run_scenario(const WhatIfProfile& base, const Scenario& scenario) {
  WhatIfProfile current = base;
  std::optional<Rational> total_bin;
  std::vector<std::string> warnings;
  for (const Edit& edit : scenario.edits) {
    EditOutcome outcome;
    switch (edit.kind) {
      case Edit::Kind::BinRange:
        outcome = apply_bin_edit(current, edit.min, edit.max, edit.c);
        break;
      case Edit::Kind::PerIdValues:
        outcome = apply_bin_edit(current, edit.min, edit.max, edit.values);
        break;
      case Edit::Kind::ArcPerCall:
        outcome = apply_arc_edit(current, edit.caller, edit.callee, edit.per_call_seconds);
        break;
    }
    total_bin = total_bin.value_or(Rational(0)) + outcome.total_bin;
    warnings.insert(warnings.end(), outcome.warnings.begin(), outcome.warnings.end());
    current = std::move(outcome.profile);
  }

  ScenarioRun run;
  run.graph = recompute(current);
  run.result = delta_report(recompute(base), run.graph, total_bin);
  run.result.edits = current.provenance;
  run.result.warnings = std::move(warnings);
  run.edited = std::move(current);
  return run;
}

json whatif_json(const WhatIfResult& result) {
  json functions = json::array();
  for (const FunctionDelta& f : result.functions) {
    functions.push_back({{"name", f.name},
                         {"calls", f.calls},
                         {"self_before", to_double(f.self_before)},
                         {"self_after", to_double(f.self_after)},
                         {"total_before", to_double(f.total_before)},
                         {"total_after", to_double(f.total_after)},
                         {"share_before", to_double(f.share_before)},
                         {"share_after", to_double(f.share_after)}});
  }
  return {{"quantum", to_double(result.quantum)},
          {"base_total", to_double(result.base_total)},
          {"edited_total", to_double(result.edited_total)},
          {"total_bin", result.total_bin ? json(to_double(*result.total_bin)) : json(nullptr)},
          {"delta_seconds", to_double(result.delta_seconds)},
          {"delta_percent", to_double(result.delta_percent)},
          {"functions", std::move(functions)},
          {"edits", result.edits},
          {"warnings", result.warnings}};
}

std::string render_whatif(const WhatIfResult& result) {
  std::string out = "What-if result:\n\n";
  for (const std::string& e : result.edits) out += "  edit: " + e + "\n";
  for (const std::string& w : result.warnings) out += "  warning: " + w + "\n";
  if (!result.edits.empty() || !result.warnings.empty()) out += "\n";

  out += "total: " + secs(result.base_total) + " → " + secs(result.edited_total) + " seconds\n";
  out += "delta: " + secs(result.delta_seconds) + " seconds (" +
         format_fixed(result.delta_percent, 1) + "%)\n";
  if (result.total_bin) {
    const Rational& bins = *result.total_bin;
    const std::string samples = is_integral(bins) ? numerator(bins).str() : format_fixed(bins, 2);
    out += "total_bin: " + samples + " samples (" + secs(bins * result.quantum) + " seconds)\n";
  }
  out += "\n";

  std::size_t name_w = 8;
  for (const FunctionDelta& f : result.functions) name_w = std::max(name_w, f.name.size());
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-*s %8s %9s %9s %9s %9s %8s %8s\n", static_cast<int>(name_w),
                "function", "calls", "self", "self'", "total", "total'", "share", "share'");
  out += buf;
  for (const FunctionDelta& f : result.functions) {
    std::snprintf(buf, sizeof buf, "%-*s %8llu %9s %9s %9s %9s %7s%% %7s%%\n",
                  static_cast<int>(name_w), f.name.c_str(),
                  static_cast<unsigned long long>(f.calls), secs(f.self_before).c_str(),
                  secs(f.self_after).c_str(), secs(f.total_before).c_str(),
                  secs(f.total_after).c_str(), format_fixed(f.share_before, 1).c_str(),
                  format_fixed(f.share_after, 1).c_str());
    out += buf;
  }
  return out;
}

json sweep_json(const SweepCurve& curve) {
  json points = json::array();
  for (const SweepPoint& p : curve.points) {
    json shares = json::object();
    for (const auto& [name, share] : p.shares) shares[name] = to_double(share);
    points.push_back({{"r", to_double(p.reduction)},
                      {"total_reduction_percent", to_double(p.total_reduction_percent)},
                      {"target_share", to_double(p.target_share)},
                      {"max_other_share", to_double(p.max_other_share)},
                      {"shares", std::move(shares)}});
  }
  return {{"target", curve.target},
          {"points", std::move(points)},
          {"threshold", curve.threshold ? json(to_double(*curve.threshold)) : json(nullptr)}};
}

std::string sweep_csv(const SweepCurve& curve) {
  std::string out = "r,total_reduction_pct";
  if (!curve.points.empty()) {
    for (const auto& [name, share] : curve.points.front().shares) out += ",share_" + name;
  }
  out += "\n";
  for (const SweepPoint& p : curve.points) {
    out += format_fixed(p.reduction, 4) + "," + format_fixed(p.total_reduction_percent, 4);
    for (const auto& [name, share] : p.shares) out += "," + format_fixed(share, 4);
    out += "\n";
  }
  out += "# threshold=" + (curve.threshold ? format_fixed(*curve.threshold, 4) : "none") + "\n";
  return out;
}

}  // namespace accex
