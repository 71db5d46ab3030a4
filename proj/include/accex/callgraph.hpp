#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "accex/profile_model.hpp"

namespace accex {

// Histogram time credited to symbols, in seconds, indexed by Symbol::index.
struct SampleAssignment {
  std::vector<Rational> self_time;
  Rational unattributed;
};

// Credits each bin to the symbols it overlaps, proportionally to the overlap
// length. Exact: sum(self_time) + unattributed == total histogram time.
SampleAssignment assign_samples(const Histogram& hist, const SymbolTable& table);

struct Node {
  Symbol symbol;
  Rational self_time;
  std::uint64_t calls_in = 0;    // from other functions
  std::uint64_t self_calls = 0;  // direct recursion
  std::optional<std::size_t> cycle;  // index into CallGraph::cycles
  Rational prop_self;
  Rational prop_child;
  bool spontaneous = false;

  Rational total() const { return prop_self + prop_child; }
};

struct ArcEdge {
  std::size_t caller = 0;
  std::size_t callee = 0;
  std::uint64_t count = 0;
  Rational attributed_time;
  bool cycle_internal = false;
};

struct Cycle {
  std::size_t number = 0;  // 1-based, as printed
  std::vector<std::size_t> members;
  std::uint64_t calls_external = 0;
  Rational self_time;
  Rational child_time;

  Rational total() const { return self_time + child_time; }
};

struct CallGraph {
  std::vector<Node> nodes;  // indexed by Symbol::index
  std::vector<ArcEdge> edges;  // sorted by (caller, callee)
  std::vector<Cycle> cycles;
  // Condensation components, callees before callers once topo_order ran.
  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> component_of;
  std::vector<std::size_t> spontaneous;
  Rational unattributed;
  Rational quantum{1, 100};
  std::size_t dropped_arcs = 0;
  bool propagated = false;

  std::vector<std::size_t> in_edges(std::size_t node) const;
  std::vector<std::size_t> out_edges(std::size_t node) const;
  const Node* find(std::string_view name) const;

  // Seconds of the callee unit (the cycle as a whole for cycle members)
  // and the calls it receives from outside that unit.
  Rational unit_total(std::size_t node) const;
  std::uint64_t unit_calls(std::size_t node) const;
};

// Resolves arcs to symbols and fills self times. Throws NoSymbols.
CallGraph build_call_graph(const RawProfile& profile, const SymbolTable& table);

// Tarjan SCCs; components of size > 1 or with a self-loop become cycles.
void find_cycles(CallGraph& graph);

// Orders graph.components leaves first; ties by smallest member name.
void topo_order(CallGraph& graph);

// Bottom-up self/child propagation with count-proportional attribution.
void propagate_times(CallGraph& graph);

// Runs every stage above.
CallGraph analyze(const RawProfile& profile, const SymbolTable& table);

// Re-propagates after self times changed (cycles and order are reused).
void repropagate(CallGraph& graph);

// Sum of self time over all nodes plus unattributed time, in seconds.
Rational total_time(const CallGraph& graph);

}  // namespace accex
