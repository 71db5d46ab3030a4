#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "accex/callgraph.hpp"

namespace accex {

// One editable unit of callee self time. Ids are 1-based and depend only on
// names, call counts and recorded samples, never on addresses.
struct AttributionRecord {
  std::size_t id = 0;
  std::string caller;
  std::string callee;
  std::size_t occurrence = 1;  // 1-based within (caller, callee)
  std::uint64_t calls = 0;
  Rational samples;  // bin_count; seconds = samples * quantum

  bool operator==(const AttributionRecord&) const = default;
};

// Records ordered by (callee, caller, occurrence). Callees with call groups
// use them verbatim; the rest get one record per incoming arc, sharing the
// self time by call count, or a single <spontaneous> record. Zero-sample
// records are omitted. Throws InconsistentCallGroups when a callee's groups
// do not add up to its self time.
std::vector<AttributionRecord> assign_stable_ids(const CallGraph& graph,
                                                 std::span<const CallGroup> groups);

// Immutable base analysis plus the (possibly edited) record layer.
struct WhatIfProfile {
  CallGraph base;
  std::vector<AttributionRecord> records;
  std::vector<std::string> provenance;

  Rational quantum() const { return base.quantum; }
};

WhatIfProfile make_whatif_profile(CallGraph base, std::span<const CallGroup> groups);

// Constant c, or one value per id in [min, max]. Sample counts.
using Replacement = std::variant<Rational, std::vector<Rational>>;

struct EditOutcome {
  WhatIfProfile profile;
  Rational total_bin;  // original samples of the replaced records
  std::vector<std::string> warnings;
};

// Replaces record samples for 1-based ids min..max. Throws IdOutOfRange,
// ValuesLengthMismatch, NegativeReplacement.
EditOutcome apply_bin_edit(const WhatIfProfile& profile, std::size_t min, std::size_t max,
                           const Replacement& replacement);

// Sets every call on caller->callee to `per_call_seconds`, converted to whole
// samples (half-up, at least one sample for a positive time). Warns when the
// time is not a multiple of the quantum. Throws ArcNotFound.
EditOutcome apply_arc_edit(const WhatIfProfile& profile, std::string_view caller,
                           std::string_view callee, const Rational& per_call_seconds);

// Self times rebuilt from the records, then fully re-propagated.
CallGraph recompute(const WhatIfProfile& profile);

struct FunctionDelta {
  std::string name;
  std::uint64_t calls = 0;
  Rational self_before, self_after;
  Rational total_before, total_after;
  Rational share_before, share_after;  // percent of program total
};

struct WhatIfResult {
  Rational quantum;
  Rational base_total;
  Rational edited_total;
  std::optional<Rational> total_bin;
  Rational delta_seconds;  // base - edited
  Rational delta_percent;
  std::vector<FunctionDelta> functions;  // name order
  std::vector<std::string> edits;
  std::vector<std::string> warnings;
};

WhatIfResult delta_report(const CallGraph& base, const CallGraph& edited,
                          std::optional<Rational> total_bin = std::nullopt);

// Percent of the program total spent in each function's self time.
std::map<std::string, Rational> self_shares(const CallGraph& graph);

struct SweepPoint {
  Rational reduction;  // r
  Rational total_reduction_percent;
  Rational target_share;
  Rational max_other_share;
  std::map<std::string, Rational> shares;
};

struct SweepCurve {
  std::string target;
  std::vector<SweepPoint> points;  // ascending r
  std::optional<Rational> threshold;
};

// {0, 0.05, ..., 0.95, 1}.
std::vector<Rational> default_sweep_grid();

// Scales the target's records by (1 - r) for every r and recomputes. Grid
// points are evaluated in parallel; output order is by r. Throws
// UnknownTarget, ZeroSelfTime, ParseError (r outside [0, 1]).
SweepCurve sweep(const WhatIfProfile& profile, std::string_view target,
                 std::span<const Rational> fractions);

// Single-threaded reference for sweep().
SweepCurve sweep_serial(const WhatIfProfile& profile, std::string_view target,
                        std::span<const Rational> fractions);

// Smallest swept r at which the target's share is no larger than the
// largest share among the other functions.
std::optional<Rational> threshold(const SweepCurve& curve);

}  // namespace accex
