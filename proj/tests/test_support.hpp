#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "accex/callgraph.hpp"
#include "accex/fixture.hpp"
#include "accex/ingest.hpp"
#include "accex/scenario.hpp"
#include "accex/service.hpp"

namespace accex::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(ACCEX_FIXTURE_DIR) + "/" + name;
}

inline std::string golden_path(const std::string& name) {
  return std::string(ACCEX_GOLDEN_DIR) + "/" + name;
}

inline fixture::WorkloadSpec load_spec(const std::string& name) {
  return fixture::parse_workload_spec(read_file_text(fixture_path(name)));
}

inline LoadedProfile load_generated(const fixture::Generated& g) {
  return load_profile(g.profile, g.symbols);
}

// The profile as the gmon path sees it: no call groups.
inline LoadedProfile load_via_gmon(const fixture::Generated& g) {
  RawProfile raw = read_gmon(g.gmon);
  return load_profile(std::move(raw), read_symbol_map(g.symbol_map));
}

inline LoadedProfile load_fixture(const std::string& spec_name) {
  return load_generated(fixture::generate(load_spec(spec_name)));
}

inline Scenario load_scenario(const std::string& name) {
  return parse_scenario(read_file_text(fixture_path(name)));
}

// Symbols laid out 0x100 apart from 0x1000 in the given order, one 0x100
// bin per symbol.
struct Builder {
  std::vector<Symbol> symbols;
  std::vector<std::uint64_t> samples;
  std::vector<RawArc> arcs;

  Builder& fn(const std::string& name, std::uint64_t s) {
    const Address low = 0x1000 + 0x100 * symbols.size();
    symbols.push_back({name, low, low + 0x100, 0});
    samples.push_back(s);
    return *this;
  }
  Builder& call(const std::string& from, const std::string& to, std::uint64_t count) {
    arcs.push_back({addr(from) + 8, addr(to), count});
    return *this;
  }
  Address addr(const std::string& name) const {
    for (const Symbol& s : symbols) {
      if (s.name == name) return s.low;
    }
    throw std::logic_error("no symbol " + name);
  }
  RawProfile profile() const {
    RawProfile p;
    Histogram h;
    h.low = 0x1000;
    h.high = 0x1000 + 0x100 * symbols.size();
    h.bins = samples;
    p.histograms.push_back(h);
    p.arcs = merge_arcs(arcs);
    return p;
  }
  SymbolTable table() const { return SymbolTable::build(symbols); }
  CallGraph run() const { return analyze(profile(), table()); }
};

}  // namespace accex::testing
