#include "accex/callgraph.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "accex/error.hpp"

namespace accex {

namespace mp = boost::multiprecision;

SampleAssignment assign_samples(const Histogram& hist, const SymbolTable& table) {
  hist.validate();
  const Address width = hist.bin_width();
  auto symbols = table.symbols();

  // Accumulate count * overlap_bytes exactly; divide by the bin width once.
  std::vector<mp::cpp_int> weighted(table.size());
  mp::cpp_int unattributed = 0;

  for (std::size_t i = 0; i < hist.bins.size(); ++i) {
    const std::uint64_t count = hist.bins[i];
    if (count == 0) continue;
    const auto [lo, hi] = bin_range(hist, i);
    Address covered = 0;
    auto it = std::upper_bound(symbols.begin(), symbols.end(), lo,
                               [](Address a, const Symbol& s) { return a < s.high; });
    for (; it != symbols.end() && it->low < hi; ++it) {
      const Address overlap = std::min(hi, it->high) - std::max(lo, it->low);
      weighted[it->index] += mp::cpp_int(count) * overlap;
      covered += overlap;
    }
    unattributed += mp::cpp_int(count) * (width - covered);
  }

  SampleAssignment out;
  out.self_time.reserve(weighted.size());
  const Rational scale = hist.quantum / width;
  for (const auto& w : weighted) out.self_time.emplace_back(Rational(w) * scale);
  out.unattributed = Rational(unattributed) * scale;
  return out;
}

std::vector<std::size_t> CallGraph::in_edges(std::size_t node) const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].callee == node) out.push_back(e);
  }
  return out;
}

std::vector<std::size_t> CallGraph::out_edges(std::size_t node) const {
  std::vector<std::size_t> out;
  auto first = std::lower_bound(edges.begin(), edges.end(), node,
                                [](const ArcEdge& e, std::size_t n) { return e.caller < n; });
  for (auto it = first; it != edges.end() && it->caller == node; ++it) {
    out.push_back(static_cast<std::size_t>(it - edges.begin()));
  }
  return out;
}

const Node* CallGraph::find(std::string_view name) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), name,
                             [](const Node& n, std::string_view s) { return n.symbol.name < s; });
  return it != nodes.end() && it->symbol.name == name ? &*it : nullptr;
}

Rational CallGraph::unit_total(std::size_t node) const {
  const Node& n = nodes[node];
  return n.cycle ? cycles[*n.cycle].total() : n.total();
}

std::uint64_t CallGraph::unit_calls(std::size_t node) const {
  const Node& n = nodes[node];
  return n.cycle ? cycles[*n.cycle].calls_external : n.calls_in;
}

CallGraph build_call_graph(const RawProfile& profile, const SymbolTable& table) {
  if (table.empty()) throw Error(ErrorCode::NoSymbols, "symbol table is empty");

  CallGraph graph;
  graph.quantum = profile.quantum;
  graph.nodes.resize(table.size());
  for (const Symbol& sym : table.symbols()) graph.nodes[sym.index].symbol = sym;

  for (const Histogram& hist : profile.histograms) {
    SampleAssignment assigned = assign_samples(hist, table);
    for (std::size_t i = 0; i < assigned.self_time.size(); ++i) {
      graph.nodes[i].self_time += assigned.self_time[i];
    }
    graph.unattributed += assigned.unattributed;
  }

  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> summed;
  for (const RawArc& arc : profile.arcs) {
    if (arc.count == 0) continue;
    const Symbol* caller = lookup_symbol(table, arc.from_pc);
    const Symbol* callee = lookup_symbol(table, arc.self_pc);
    if (!caller || !callee) {
      ++graph.dropped_arcs;
      continue;
    }
    summed[{caller->index, callee->index}] += arc.count;
  }
  for (const auto& [key, count] : summed) {
    graph.edges.push_back({key.first, key.second, count, Rational(0), false});
    if (key.first == key.second) {
      graph.nodes[key.second].self_calls += count;
    } else {
      graph.nodes[key.second].calls_in += count;
    }
  }
  return graph;
}

void find_cycles(CallGraph& graph) {
  const std::size_t n = graph.nodes.size();
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<bool> self_loop(n, false);
  for (const ArcEdge& e : graph.edges) {
    if (e.caller == e.callee) {
      self_loop[e.caller] = true;
    } else {
      succ[e.caller].push_back(e.callee);
    }
  }

  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> sccs;
  std::size_t next_index = 0;

  struct Frame {
    std::size_t node;
    std::size_t next_succ;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next_succ < succ[f.node].size()) {
        const std::size_t w = succ[f.node][f.next_succ++];
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[f.node] = std::min(lowlink[f.node], index[w]);
        }
        continue;
      }
      const std::size_t v = f.node;
      frames.pop_back();
      if (!frames.empty()) {
        lowlink[frames.back().node] = std::min(lowlink[frames.back().node], lowlink[v]);
      }
      if (lowlink[v] == index[v]) {
        std::vector<std::size_t> scc;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          scc.push_back(w);
        } while (w != v);
        std::sort(scc.begin(), scc.end());
        sccs.push_back(std::move(scc));
      }
    }
  }

  std::sort(sccs.begin(), sccs.end());  // by smallest member index = name order
  graph.cycles.clear();
  graph.components = std::move(sccs);
  graph.component_of.assign(n, 0);
  for (Node& node : graph.nodes) node.cycle.reset();
  for (std::size_t c = 0; c < graph.components.size(); ++c) {
    const auto& members = graph.components[c];
    for (std::size_t m : members) graph.component_of[m] = c;
    if (members.size() > 1 || self_loop[members.front()]) {
      Cycle cycle;
      cycle.number = graph.cycles.size() + 1;
      cycle.members = members;
      for (std::size_t m : members) graph.nodes[m].cycle = graph.cycles.size();
      graph.cycles.push_back(std::move(cycle));
    }
  }
  for (ArcEdge& e : graph.edges) {
    e.cycle_internal = graph.nodes[e.caller].cycle &&
                       graph.nodes[e.caller].cycle == graph.nodes[e.callee].cycle;
  }
}

void topo_order(CallGraph& graph) {
  const std::size_t count = graph.components.size();
  std::vector<std::size_t> pending_callees(count, 0);
  std::vector<std::vector<std::size_t>> callers_of(count);
  for (const ArcEdge& e : graph.edges) {
    const std::size_t from = graph.component_of[e.caller];
    const std::size_t to = graph.component_of[e.callee];
    if (from == to) continue;
    ++pending_callees[from];
    callers_of[to].push_back(from);
  }

  // Components are sorted by smallest member, so the position doubles as
  // the name tie-break key.
  std::set<std::size_t> ready;
  for (std::size_t c = 0; c < count; ++c) {
    if (pending_callees[c] == 0) ready.insert(c);
  }
  std::vector<std::size_t> order;
  order.reserve(count);
  while (!ready.empty()) {
    const std::size_t c = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(c);
    for (std::size_t caller : callers_of[c]) {
      if (--pending_callees[caller] == 0) ready.insert(caller);
    }
  }
  if (order.size() != count) {
    throw Error(ErrorCode::CycleInCondensation, "condensation graph is not acyclic");
  }

  std::vector<std::vector<std::size_t>> sorted;
  sorted.reserve(count);
  for (std::size_t c : order) sorted.push_back(std::move(graph.components[c]));
  graph.components = std::move(sorted);
  for (std::size_t c = 0; c < count; ++c) {
    for (std::size_t m : graph.components[c]) graph.component_of[m] = c;
  }
}

void propagate_times(CallGraph& graph) {
  std::vector<std::vector<std::size_t>> out(graph.nodes.size());
  std::vector<std::vector<std::size_t>> in(graph.nodes.size());
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    out[graph.edges[e].caller].push_back(e);
    in[graph.edges[e].callee].push_back(e);
  }

  for (Cycle& cycle : graph.cycles) {
    cycle.calls_external = 0;
    for (std::size_t m : cycle.members) {
      for (std::size_t e : in[m]) {
        if (!graph.edges[e].cycle_internal) cycle.calls_external += graph.edges[e].count;
      }
    }
  }

  for (const auto& component : graph.components) {
    for (std::size_t n : component) {
      Node& node = graph.nodes[n];
      node.prop_self = node.self_time;
      node.prop_child = 0;
      for (std::size_t e : out[n]) {
        ArcEdge& edge = graph.edges[e];
        if (edge.cycle_internal) {
          edge.attributed_time = 0;
          continue;
        }
        // Callee components precede this one, so their totals are final.
        edge.attributed_time =
            graph.unit_total(edge.callee) * edge.count / graph.unit_calls(edge.callee);
        node.prop_child += edge.attributed_time;
      }
    }
    const Node& head = graph.nodes[component.front()];
    if (head.cycle) {
      Cycle& cycle = graph.cycles[*head.cycle];
      cycle.self_time = 0;
      cycle.child_time = 0;
      for (std::size_t m : cycle.members) {
        cycle.self_time += graph.nodes[m].prop_self;
        cycle.child_time += graph.nodes[m].prop_child;
      }
    }
  }

  graph.spontaneous.clear();
  for (const auto& component : graph.components) {
    const std::size_t head = component.front();
    const bool has_callers = graph.unit_calls(head) > 0;
    const bool has_time = graph.unit_total(head) > 0;
    for (std::size_t n : component) {
      graph.nodes[n].spontaneous = !has_callers && has_time;
      if (graph.nodes[n].spontaneous) graph.spontaneous.push_back(n);
    }
  }
  std::sort(graph.spontaneous.begin(), graph.spontaneous.end());
  graph.propagated = true;
}

CallGraph analyze(const RawProfile& profile, const SymbolTable& table) {
  CallGraph graph = build_call_graph(profile, table);
  find_cycles(graph);
  topo_order(graph);
  propagate_times(graph);
  return graph;
}

void repropagate(CallGraph& graph) { propagate_times(graph); }

Rational total_time(const CallGraph& graph) {
  Rational total = graph.unattributed;
  for (const Node& node : graph.nodes) total += node.self_time;
  return total;
}

}  // namespace accex
