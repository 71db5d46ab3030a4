#include "accex/whatif.hpp"

#include <algorithm>
#include <tuple>

#include "accex/error.hpp"

namespace accex {
namespace {

std::string describe_ids(std::size_t min, std::size_t max) {
  return min == max ? "id " + std::to_string(min)
                    : "ids " + std::to_string(min) + "-" + std::to_string(max);
}

std::string samples_text(const Rational& r) {
  return is_integral(r) ? numerator(r).str() : format_fixed(r, 4);
}

}  // namespace

std::vector<AttributionRecord> assign_stable_ids(const CallGraph& graph,
                                                 std::span<const CallGroup> groups) {
  std::map<std::string, std::vector<const CallGroup*>, std::less<>> groups_by_callee;
  for (const CallGroup& g : groups) groups_by_callee[g.callee].push_back(&g);

  std::vector<AttributionRecord> records;
  for (std::size_t n = 0; n < graph.nodes.size(); ++n) {
    const Node& node = graph.nodes[n];
    const std::string& callee = node.symbol.name;
    const Rational self_samples = node.self_time / graph.quantum;

    std::vector<AttributionRecord> own;
    if (auto it = groups_by_callee.find(callee); it != groups_by_callee.end()) {
      Rational sum = 0;
      std::map<std::string, std::size_t> occurrences;
      for (const CallGroup* g : it->second) {
        sum += g->samples;
        if (g->samples == 0) continue;
        AttributionRecord rec;
        rec.caller = g->caller;
        rec.callee = callee;
        rec.occurrence = ++occurrences[g->caller];
        rec.calls = g->calls;
        rec.samples = g->samples;
        own.push_back(std::move(rec));
      }
      if (sum != self_samples) {
        throw Error(ErrorCode::InconsistentCallGroups,
                    "call groups of '" + callee + "' hold " + samples_text(sum) +
                        " samples but its histogram self time is " +
                        samples_text(self_samples) + " samples");
      }
    } else if (self_samples > 0) {
      std::uint64_t calls = 0;
      const auto in = graph.in_edges(n);
      for (std::size_t e : in) calls += graph.edges[e].count;
      if (calls == 0) {
        own.push_back({0, std::string(kSpontaneous), callee, 1, 0, self_samples});
      } else {
        for (std::size_t e : in) {
          const ArcEdge& edge = graph.edges[e];
          own.push_back({0, graph.nodes[edge.caller].symbol.name, callee, 1, edge.count,
                         self_samples * edge.count / calls});
        }
      }
    }
    // Nodes are in name order already; order callers within the callee.
    std::stable_sort(own.begin(), own.end(), [](const auto& a, const auto& b) {
      return std::tie(a.caller, a.occurrence) < std::tie(b.caller, b.occurrence);
    });
    for (auto& rec : own) records.push_back(std::move(rec));
  }
  for (std::size_t i = 0; i < records.size(); ++i) records[i].id = i + 1;
  return records;
}

WhatIfProfile make_whatif_profile(CallGraph base, std::span<const CallGroup> groups) {
  if (!base.propagated) {
    find_cycles(base);
    topo_order(base);
    propagate_times(base);
  }
  WhatIfProfile profile;
  profile.records = assign_stable_ids(base, groups);
  profile.base = std::move(base);
  return profile;
}

EditOutcome apply_bin_edit(const WhatIfProfile& profile, std::size_t min, std::size_t max,
                           const Replacement& replacement) {
  const std::size_t n = profile.records.size();
  if (min < 1 || min > max || max > n) {
    throw Error(ErrorCode::IdOutOfRange, "id range " + std::to_string(min) + "-" +
                                             std::to_string(max) + " outside 1-" +
                                             std::to_string(n));
  }
  const auto* values = std::get_if<std::vector<Rational>>(&replacement);
  if (values && values->size() != max - min + 1) {
    throw Error(ErrorCode::ValuesLengthMismatch,
                "expected " + std::to_string(max - min + 1) + " values, got " +
                    std::to_string(values->size()));
  }
  auto value_for = [&](std::size_t id) -> const Rational& {
    return values ? (*values)[id - min] : std::get<Rational>(replacement);
  };
  for (std::size_t id = min; id <= max; ++id) {
    if (value_for(id) < 0) {
      throw Error(ErrorCode::NegativeReplacement, "replacement samples must be non-negative");
    }
  }

  EditOutcome out{profile, Rational(0), {}};
  // Zero-based scan; a record is replaced when min-1 <= id-1 <= max-1.
  for (std::size_t pos = 0; pos < out.profile.records.size(); ++pos) {
    if (pos >= min - 1 && pos <= max - 1) {
      AttributionRecord& rec = out.profile.records[pos];
      out.total_bin += rec.samples;
      rec.samples = value_for(rec.id);
    }
  }

  std::string note = describe_ids(min, max) + " := ";
  if (values) {
    note += "[";
    for (std::size_t i = 0; i < values->size(); ++i) {
      note += (i ? "," : "") + samples_text((*values)[i]);
    }
    note += "]";
  } else {
    note += samples_text(std::get<Rational>(replacement));
  }
  note += " samples (was " + samples_text(out.total_bin) + ")";
  out.profile.provenance.push_back(std::move(note));
  return out;
}

EditOutcome apply_arc_edit(const WhatIfProfile& profile, std::string_view caller,
                           std::string_view callee, const Rational& per_call_seconds) {
  if (per_call_seconds < 0) {
    throw Error(ErrorCode::NegativeReplacement, "per-call time must be non-negative");
  }
  std::vector<const AttributionRecord*> hits;
  for (const AttributionRecord& rec : profile.records) {
    if (rec.caller == caller && rec.callee == callee) hits.push_back(&rec);
  }
  const std::string arc = std::string(caller) + "->" + std::string(callee);
  if (hits.empty()) {
    throw Error(ErrorCode::ArcNotFound, "no recorded samples for arc " + arc);
  }

  std::vector<std::string> warnings;
  std::vector<Rational> values;
  for (const AttributionRecord* rec : hits) {
    const Rational exact = per_call_seconds * rec->calls / profile.quantum();
    Rational samples = round_half_up(exact);
    if (samples == 0 && exact > 0) samples = 1;
    if (samples != exact) {
      warnings.push_back("NonIntegralSamples: " + arc + " id " + std::to_string(rec->id) +
                         " needs " + format_fixed(exact, 4) + " samples, using " +
                         samples_text(samples));
    }
    values.push_back(samples);
  }
  const std::size_t min = hits.front()->id;
  const std::size_t max = hits.back()->id;
  EditOutcome out = apply_bin_edit(profile, min, max, values);
  out.warnings.insert(out.warnings.begin(), warnings.begin(), warnings.end());
  return out;
}

CallGraph recompute(const WhatIfProfile& profile) {
  CallGraph graph = profile.base;
  std::vector<Rational> samples(graph.nodes.size());
  for (const AttributionRecord& rec : profile.records) {
    const Node* node = graph.find(rec.callee);
    samples[node->symbol.index] += rec.samples;
  }
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    graph.nodes[i].self_time = samples[i] * graph.quantum;
  }
  repropagate(graph);
  return graph;
}

std::map<std::string, Rational> self_shares(const CallGraph& graph) {
  const Rational total = total_time(graph);
  std::map<std::string, Rational> shares;
  for (const Node& node : graph.nodes) {
    shares[node.symbol.name] = total > 0 ? Rational(node.self_time * 100 / total) : Rational(0);
  }
  return shares;
}

WhatIfResult delta_report(const CallGraph& base, const CallGraph& edited,
                          std::optional<Rational> total_bin) {
  WhatIfResult result;
  result.quantum = base.quantum;
  result.base_total = total_time(base);
  result.edited_total = total_time(edited);
  result.total_bin = std::move(total_bin);
  result.delta_seconds = result.base_total - result.edited_total;
  result.delta_percent =
      result.base_total > 0 ? Rational(result.delta_seconds * 100 / result.base_total) : Rational(0);

  const auto before = self_shares(base);
  const auto after = self_shares(edited);
  for (std::size_t i = 0; i < base.nodes.size(); ++i) {
    const Node& b = base.nodes[i];
    const Node& e = edited.nodes[i];
    if (b.self_time == 0 && e.self_time == 0 && b.total() == 0 && e.total() == 0 &&
        b.calls_in == 0) {
      continue;
    }
    FunctionDelta f;
    f.name = b.symbol.name;
    f.calls = b.calls_in + b.self_calls;
    f.self_before = b.self_time;
    f.self_after = e.self_time;
    f.total_before = b.total();
    f.total_after = e.total();
    f.share_before = before.at(f.name);
    f.share_after = after.at(f.name);
    result.functions.push_back(std::move(f));
  }
  return result;
}

}  // namespace accex
