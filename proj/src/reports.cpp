#include "accex/reports.hpp"

#include <algorithm>
#include <cstdio>
#include <tuple>

namespace accex {
namespace {

using nlohmann::json;

constexpr std::string_view kSeparator = "-----------------------------------------------\n";

std::string secs(const Rational& r) { return format_fixed(r, 2); }
std::string pct(const Rational& r) { return format_fixed(r, 1); }
std::string opt_secs(const std::optional<Rational>& r) { return r ? secs(*r) : ""; }

json opt_number(const std::optional<Rational>& r) {
  return r ? json(to_double(*r)) : json(nullptr);
}

std::string line(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

std::string display_name(const CallGraph& graph, std::size_t n) {
  const Node& node = graph.nodes[n];
  std::string name = node.symbol.name;
  if (node.cycle) name += " <cycle " + std::to_string(graph.cycles[*node.cycle].number) + ">";
  return name;
}

bool visible(const Node& node, const ReportOptions& options) {
  return options.all || node.self_time > 0 || node.total() > 0 || node.calls_in > 0 ||
         node.self_calls > 0;
}

std::string calls_text(std::uint64_t calls, std::uint64_t recursive) {
  std::string text = std::to_string(calls);
  if (recursive > 0) text += "+" + std::to_string(recursive);
  return text;
}

}  // namespace

bool flat_order_less(const FlatRow& a, const FlatRow& b) {
  if (a.self_seconds != b.self_seconds) return a.self_seconds > b.self_seconds;
  if (a.calls != b.calls) return a.calls > b.calls;
  return a.name < b.name;
}

std::vector<FlatRow> flat_profile(const CallGraph& graph, const ReportOptions& options) {
  const Rational total = total_time(graph);
  std::vector<FlatRow> rows;
  for (const Node& node : graph.nodes) {
    if (!visible(node, options)) continue;
    FlatRow row;
    row.name = node.symbol.name;
    row.self_seconds = node.self_time;
    row.calls = node.calls_in + node.self_calls;
    row.percent = total > 0 ? Rational(node.self_time * 100 / total) : Rational(0);
    if (row.calls > 0) {
      row.self_per_call = node.self_time / row.calls;
      row.total_per_call = node.total() / row.calls;
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), flat_order_less);
  Rational running = 0;
  for (FlatRow& row : rows) {
    running += row.self_seconds;
    row.cumulative_seconds = running;
  }
  return rows;
}

std::vector<CgEntry> callgraph_profile(const CallGraph& graph, const ReportOptions& options) {
  const Rational total = total_time(graph);
  auto percent_of = [&](const Rational& r) {
    return total > 0 ? Rational(r * 100 / total) : Rational(0);
  };

  // Number entries top-down: reverse topological order, a cycle's
  // "as a whole" entry ahead of its members.
  std::vector<std::optional<std::size_t>> node_index(graph.nodes.size());
  std::vector<std::optional<std::size_t>> cycle_index(graph.cycles.size());
  std::size_t next = 1;
  for (auto c = graph.components.rbegin(); c != graph.components.rend(); ++c) {
    const auto& members = *c;
    const bool any_visible = std::any_of(members.begin(), members.end(), [&](std::size_t m) {
      return visible(graph.nodes[m], options);
    });
    if (!any_visible) continue;
    if (const auto& cyc = graph.nodes[members.front()].cycle) cycle_index[*cyc] = next++;
    for (std::size_t m : members) {
      if (visible(graph.nodes[m], options)) node_index[m] = next++;
    }
  }
  auto index_of = [&](std::size_t n) { return node_index[n]; };

  auto unit_line = [&](std::size_t callee, std::uint64_t count) {
    CgLine l;
    const Node& node = graph.nodes[callee];
    const Rational self = node.cycle ? graph.cycles[*node.cycle].self_time : node.prop_self;
    const Rational child = node.cycle ? graph.cycles[*node.cycle].child_time : node.prop_child;
    const std::uint64_t calls = graph.unit_calls(callee);
    l.count = count;
    l.unit_calls = calls;
    l.self = self * count / calls;
    l.children = child * count / calls;
    l.per_call = (*l.self + *l.children) / count;
    return l;
  };

  std::vector<CgEntry> entries;
  auto push_node_entry = [&](std::size_t n) {
    const Node& node = graph.nodes[n];
    CgEntry entry;
    entry.index = *node_index[n];
    entry.name = display_name(graph, n);
    entry.percent = percent_of(node.total());
    entry.self = node.prop_self;
    entry.children = node.prop_child;
    entry.calls = node.calls_in;
    entry.recursive_calls = node.self_calls;
    if (node.calls_in > 0) entry.per_call = node.total() / node.calls_in;

    if (node.spontaneous) {
      CgLine l;
      l.name = std::string(kSpontaneous);
      l.spontaneous = true;
      entry.callers.push_back(std::move(l));
    }
    for (std::size_t e : graph.in_edges(n)) {
      const ArcEdge& edge = graph.edges[e];
      if (edge.caller == n) continue;
      CgLine l;
      if (edge.cycle_internal) {
        l.count = edge.count;
        l.cycle_internal = true;
      } else {
        l = unit_line(n, edge.count);
      }
      l.name = display_name(graph, edge.caller);
      l.index = index_of(edge.caller);
      entry.callers.push_back(std::move(l));
    }
    for (std::size_t e : graph.out_edges(n)) {
      const ArcEdge& edge = graph.edges[e];
      if (edge.callee == n) continue;
      CgLine l;
      if (edge.cycle_internal) {
        l.count = edge.count;
        l.cycle_internal = true;
      } else {
        l = unit_line(edge.callee, edge.count);
      }
      l.name = display_name(graph, edge.callee);
      l.index = index_of(edge.callee);
      entry.children_lines.push_back(std::move(l));
    }
    entries.push_back(std::move(entry));
  };

  auto push_cycle_entry = [&](const Cycle& cycle) {
    CgEntry entry;
    entry.index = *cycle_index[cycle.number - 1];
    entry.name = "<cycle " + std::to_string(cycle.number) + " as a whole>";
    entry.cycle_whole = true;
    entry.percent = percent_of(cycle.total());
    entry.self = cycle.self_time;
    entry.children = cycle.child_time;
    entry.calls = cycle.calls_external;
    for (const ArcEdge& edge : graph.edges) {
      if (edge.cycle_internal && graph.nodes[edge.callee].cycle == cycle.number - 1) {
        entry.recursive_calls += edge.count;
      }
    }
    if (cycle.calls_external > 0) entry.per_call = cycle.total() / cycle.calls_external;
    for (std::size_t m : cycle.members) {
      for (std::size_t e : graph.in_edges(m)) {
        const ArcEdge& edge = graph.edges[e];
        if (edge.cycle_internal) continue;
        CgLine l = unit_line(m, edge.count);
        l.name = display_name(graph, edge.caller);
        l.index = index_of(edge.caller);
        entry.callers.push_back(std::move(l));
      }
    }
    for (std::size_t m : cycle.members) {
      CgLine l;
      const Node& node = graph.nodes[m];
      l.name = display_name(graph, m);
      l.index = index_of(m);
      l.self = node.prop_self;
      l.children = node.prop_child;
      l.count = node.calls_in + node.self_calls;
      entry.children_lines.push_back(std::move(l));
    }
    entries.push_back(std::move(entry));
  };

  for (auto c = graph.components.rbegin(); c != graph.components.rend(); ++c) {
    const auto& members = *c;
    if (const auto& cyc = graph.nodes[members.front()].cycle; cyc && cycle_index[*cyc]) {
      push_cycle_entry(graph.cycles[*cyc]);
    }
    for (std::size_t m : members) {
      if (node_index[m]) push_node_entry(m);
    }
  }
  return entries;
}

std::string format_quantum(const Rational& quantum) {
  for (int digits = 0; digits <= 12; ++digits) {
    const std::string text = format_fixed(quantum, digits);
    if (parse_decimal(text) == quantum) return text;
  }
  return format_fixed(quantum, 6);
}

std::string render_flat(const CallGraph& graph, const std::vector<FlatRow>& rows) {
  std::string out = "Flat profile:\n\n";
  out += "Each sample counts as " + format_quantum(graph.quantum) + " seconds.\n";
  out += "  %     cumulative     self                 self      total\n";
  out += " time      seconds  seconds      calls   s/call    s/call  name\n";
  for (const FlatRow& row : rows) {
    const std::string calls = row.calls > 0 ? std::to_string(row.calls) : "";
    out += line("%5s %12s %8s %10s %8s %9s  %s\n", pct(row.percent).c_str(),
                secs(row.cumulative_seconds).c_str(), secs(row.self_seconds).c_str(),
                calls.c_str(), opt_secs(row.self_per_call).c_str(),
                opt_secs(row.total_per_call).c_str(), row.name.c_str());
  }
  out += "\nTotal time: " + secs(total_time(graph)) + " seconds";
  if (graph.unattributed > 0) {
    out += " (" + secs(graph.unattributed) + " seconds outside any function)";
  }
  out += "\n";
  return out;
}

std::string render_callgraph(const CallGraph& graph, const std::vector<CgEntry>& entries) {
  std::string out = "Call graph:\n\n";
  out += "Each sample counts as " + format_quantum(graph.quantum) + " seconds; total time " +
         secs(total_time(graph)) + " seconds.\n\n";
  out += "index   % time     self  children         called    s/call  name\n";

  auto sub_line = [&](const CgLine& l) {
    std::string called;
    if (!l.spontaneous) {
      called = std::to_string(l.count);
      if (l.unit_calls) called += "/" + std::to_string(*l.unit_calls);
    }
    std::string name = l.name;
    if (l.index) name += " [" + std::to_string(*l.index) + "]";
    return line("%6s %8s %8s %9s %14s %9s      %s\n", "", "", opt_secs(l.self).c_str(),
                opt_secs(l.children).c_str(), called.c_str(), opt_secs(l.per_call).c_str(),
                name.c_str());
  };

  for (const CgEntry& entry : entries) {
    for (const CgLine& l : entry.callers) out += sub_line(l);
    const std::string index = "[" + std::to_string(entry.index) + "]";
    const std::string called = calls_text(entry.calls, entry.recursive_calls);
    out += line("%-6s %8s %8s %9s %14s %9s  %s %s\n", index.c_str(), pct(entry.percent).c_str(),
                secs(entry.self).c_str(), secs(entry.children).c_str(), called.c_str(),
                opt_secs(entry.per_call).c_str(), entry.name.c_str(), index.c_str());
    for (const CgLine& l : entry.children_lines) out += sub_line(l);
    out += kSeparator;
  }

  out += "\nArc times are per-call averages: every call along an arc is credited the\n"
         "callee's mean time per call, so calls of unequal cost are not distinguished.\n";
  if (!graph.cycles.empty()) {
    out += "Arcs inside a cycle carry no time; only their call counts are shown.\n";
  }
  return out;
}

std::string ids_table(const std::vector<AttributionRecord>& records, const Rational& quantum) {
  std::size_t caller_w = 6, callee_w = 6;
  for (const AttributionRecord& r : records) {
    caller_w = std::max(caller_w, r.caller.size());
    callee_w = std::max(callee_w, r.callee.size());
  }
  const int cw = static_cast<int>(caller_w);
  const int ew = static_cast<int>(callee_w);

  std::string out = "Attribution ids:\n\n";
  out += "Each sample counts as " + format_quantum(quantum) + " seconds.\n";
  out += line("%6s  %-*s  %-*s  %4s %8s %12s %10s\n", "id", cw, "caller", ew, "callee", "occ",
              "calls", "samples", "seconds");
  for (const AttributionRecord& r : records) {
    const std::string samples =
        is_integral(r.samples) ? numerator(r.samples).str() : format_fixed(r.samples, 2);
    out += line("%6zu  %-*s  %-*s  %4zu %8llu %12s %10s\n", r.id, cw, r.caller.c_str(), ew,
                r.callee.c_str(), r.occurrence, static_cast<unsigned long long>(r.calls),
                samples.c_str(), secs(r.samples * quantum).c_str());
  }
  return out;
}

json flat_json(const std::vector<FlatRow>& rows) {
  json out = json::array();
  for (const FlatRow& row : rows) {
    out.push_back({{"name", row.name},
                   {"percent", to_double(row.percent)},
                   {"cumulative_seconds", to_double(row.cumulative_seconds)},
                   {"self_seconds", to_double(row.self_seconds)},
                   {"calls", row.calls},
                   {"self_per_call", opt_number(row.self_per_call)},
                   {"total_per_call", opt_number(row.total_per_call)}});
  }
  return out;
}

json callgraph_json(const std::vector<CgEntry>& entries) {
  auto line_json = [](const CgLine& l) {
    return json{{"name", l.name},
                {"index", l.index ? json(*l.index) : json(nullptr)},
                {"self", opt_number(l.self)},
                {"children", opt_number(l.children)},
                {"count", l.count},
                {"unit_calls", l.unit_calls ? json(*l.unit_calls) : json(nullptr)},
                {"per_call", opt_number(l.per_call)},
                {"cycle_internal", l.cycle_internal},
                {"spontaneous", l.spontaneous}};
  };
  json out = json::array();
  for (const CgEntry& e : entries) {
    json callers = json::array(), children = json::array();
    for (const CgLine& l : e.callers) callers.push_back(line_json(l));
    for (const CgLine& l : e.children_lines) children.push_back(line_json(l));
    out.push_back({{"index", e.index},
                   {"name", e.name},
                   {"cycle_whole", e.cycle_whole},
                   {"percent", to_double(e.percent)},
                   {"self", to_double(e.self)},
                   {"children", to_double(e.children)},
                   {"calls", e.calls},
                   {"recursive_calls", e.recursive_calls},
                   {"per_call", opt_number(e.per_call)},
                   {"callers", std::move(callers)},
                   {"children_lines", std::move(children)}});
  }
  return out;
}

json ids_json(const std::vector<AttributionRecord>& records, const Rational& quantum) {
  json out = json::array();
  for (const AttributionRecord& r : records) {
    out.push_back({{"id", r.id},
                   {"caller", r.caller},
                   {"callee", r.callee},
                   {"occurrence", r.occurrence},
                   {"calls", r.calls},
                   {"samples", to_double(r.samples)},
                   {"seconds", to_double(r.samples * quantum)}});
  }
  return out;
}

json totals_json(const CallGraph& graph) {
  return {{"total_seconds", to_double(total_time(graph))},
          {"unattributed_seconds", to_double(graph.unattributed)},
          {"quantum", to_double(graph.quantum)},
          {"dropped_arcs", graph.dropped_arcs}};
}

}  // namespace accex
