#include "accex/fixture.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include <json.hpp>

#include "accex/error.hpp"

namespace accex::fixture {
namespace {

using nlohmann::json;

constexpr Address kAlign = 0x1000;
constexpr std::uint64_t kMaxBin = 0xFFFF;

Error spec_error(const std::string& message) { return Error(ErrorCode::SpecError, message); }

std::uint64_t whole_samples(const Rational& seconds, const Rational& quantum,
                            const std::string& what) {
  const Rational samples = seconds / quantum;
  if (seconds < 0 || !is_integral(samples)) {
    throw spec_error(what + ": time is not a non-negative multiple of the quantum");
  }
  return numerator(samples).convert_to<std::uint64_t>();
}

Address align_up(Address a) { return (a + kAlign - 1) / kAlign * kAlign; }

std::string hex(Address a) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(a));
  return buf;
}

void check_names(const WorkloadSpec& spec) {
  std::set<std::string> names;
  for (const Function& f : spec.functions) {
    if (f.name.empty() || f.size == 0) throw spec_error("function needs a name and a size");
    if (!names.insert(f.name).second) throw spec_error("duplicate function '" + f.name + "'");
  }
  auto known = [&](const std::string& n) {
    if (!names.count(n)) throw spec_error("unknown function '" + n + "'");
  };
  for (const Call& c : spec.calls) {
    known(c.caller);
    known(c.callee);
    if (c.count == 0) throw spec_error("call count must be positive");
  }
  for (const Root& r : spec.roots) known(r.name);
  if (spec.quantum <= 0) throw spec_error("quantum must be positive");
}

}  // namespace

WorkloadSpec parse_workload_spec(std::string_view text) {
  WorkloadSpec spec;
  try {
    const json doc = json::parse(text);
    if (auto q = doc.find("quantum"); q != doc.end()) spec.quantum = from_double(q->get<double>());
    if (auto b = doc.find("base_address"); b != doc.end()) {
      spec.base_address = b->is_string() ? std::stoull(b->get<std::string>(), nullptr, 0)
                                         : b->get<Address>();
    }
    for (const json& f : doc.at("functions")) {
      spec.functions.push_back({f.at("name").get<std::string>(), f.value("size", Address{0x100})});
    }
    for (const json& c : doc.value("calls", json::array())) {
      spec.calls.push_back({c.at("caller").get<std::string>(), c.at("callee").get<std::string>(),
                            c.value("count", std::uint64_t{1}),
                            from_double(c.value("per_call_seconds", 0.0)),
                            c.value("grouped", false)});
    }
    for (const json& r : doc.value("roots", json::array())) {
      spec.roots.push_back({r.at("name").get<std::string>(),
                            from_double(r.value("self_seconds", 0.0))});
    }
  } catch (const json::exception& e) {
    throw spec_error(std::string("workload spec: ") + e.what());
  } catch (const std::logic_error& e) {
    throw spec_error(std::string("workload spec: ") + e.what());
  }
  check_names(spec);
  return spec;
}

std::string write_workload_spec(const WorkloadSpec& spec) {
  json functions = json::array(), calls = json::array(), roots = json::array();
  for (const Function& f : spec.functions) functions.push_back({{"name", f.name}, {"size", f.size}});
  for (const Call& c : spec.calls) {
    calls.push_back({{"caller", c.caller},
                     {"callee", c.callee},
                     {"count", c.count},
                     {"per_call_seconds", to_double(c.per_call_seconds)},
                     {"grouped", c.grouped}});
  }
  for (const Root& r : spec.roots) {
    roots.push_back({{"name", r.name}, {"self_seconds", to_double(r.self_seconds)}});
  }
  json doc = {{"quantum", to_double(spec.quantum)},
              {"base_address", hex(spec.base_address)},
              {"functions", functions},
              {"calls", calls},
              {"roots", roots}};
  return doc.dump(1) + "\n";
}

Generated generate(const WorkloadSpec& spec, const GenerateOptions& options) {
  check_names(spec);
  if (spec.functions.empty()) throw spec_error("workload has no functions");
  if (spec.base_address % kAlign != 0) throw spec_error("base address must be 4 KiB aligned");

  // Layout: each function starts on a 4 KiB boundary, in spec order.
  std::vector<Symbol> symbols;
  Address cursor = spec.base_address;
  Address width = kAlign;
  for (const Function& f : spec.functions) {
    symbols.push_back({f.name, cursor, cursor + f.size, 0});
    width = std::gcd(width, f.size);
    cursor = align_up(cursor + f.size);
  }
  const SymbolTable table = SymbolTable::build(symbols);
  auto sym = [&](const std::string& name) -> const Symbol& { return *table.find(name); };

  Generated out;
  RawProfile& profile = out.profile;
  profile.quantum = spec.quantum;

  std::map<std::string, std::uint64_t> self_samples;
  for (const Root& r : spec.roots) {
    const std::uint64_t s = whole_samples(r.self_seconds, spec.quantum, "root " + r.name);
    self_samples[r.name] += s;
    if (s > 0) profile.call_groups.push_back({std::string(kSpontaneous), r.name, s, 1});
  }
  std::map<std::string, std::uint64_t> sites;  // call sites used per caller
  std::vector<RawArc> arcs;
  for (const Call& c : spec.calls) {
    const std::uint64_t s =
        whole_samples(c.per_call_seconds, spec.quantum, "call " + c.caller + "->" + c.callee);
    self_samples[c.callee] += s * c.count;
    if (c.grouped && s > 0) {
      profile.call_groups.push_back({c.caller, c.callee, s * c.count, c.count});
    }
    for (std::uint64_t k = 0; !c.grouped && k < c.count && s > 0; ++k) {
      profile.call_groups.push_back({c.caller, c.callee, s, 1});
    }
    const Symbol& caller = sym(c.caller);
    const Address offset = (sites[c.caller]++ * 4) % (caller.high - caller.low);
    arcs.push_back({caller.low + offset, sym(c.callee).low, c.count});
  }
  profile.arcs = merge_arcs(arcs);

  Histogram hist;
  hist.low = spec.base_address;
  hist.high = align_up(cursor);
  hist.quantum = spec.quantum;
  hist.bins.assign((hist.high - hist.low) / width, 0);
  for (const auto& [name, total] : self_samples) {
    const Symbol& s = sym(name);
    std::uint64_t left = total;
    for (Address a = s.low; a < s.high && left > 0; a += width) {
      const std::uint64_t put = std::min(left, kMaxBin);
      hist.bins[(a - hist.low) / width] = put;
      left -= put;
    }
    if (left > 0) throw spec_error("function '" + name + "' is too small for its samples");
  }
  profile.histograms.push_back(std::move(hist));

  out.symbols = table;
  out.gmon = write_gmon(profile, {options.ptr_size});
  out.symbol_map = write_symbol_map(table);
  out.portable = write_portable_profile(profile, table);
  return out;
}

std::map<std::string, OracleTimes> oracle_totals(const WorkloadSpec& spec,
                                                 const std::map<std::string, Rational>* self_override) {
  check_names(spec);
  std::map<std::string, Rational> self;
  std::map<std::string, std::uint64_t> calls_in;
  std::map<std::string, std::vector<const Call*>> calls_out;
  for (const Function& f : spec.functions) self[f.name] = 0;
  for (const Root& r : spec.roots) self[r.name] += r.self_seconds;
  for (const Call& c : spec.calls) {
    self[c.callee] += c.per_call_seconds * c.count;
    calls_in[c.callee] += c.count;
    calls_out[c.caller].push_back(&c);
  }
  if (self_override) {
    for (const auto& [name, seconds] : *self_override) self[name] = seconds;
  }

  std::map<std::string, OracleTimes> memo;
  std::set<std::string> active;
  std::function<const OracleTimes&(const std::string&)> visit =
      [&](const std::string& name) -> const OracleTimes& {
    if (auto it = memo.find(name); it != memo.end()) return it->second;
    if (!active.insert(name).second) {
      throw Error(ErrorCode::CycleUnsupported, "oracle does not handle recursion ('" + name + "')");
    }
    OracleTimes t;
    t.self = self[name];
    for (const Call* c : calls_out[name]) {
      t.child += visit(c->callee).total * c->count / calls_in[c->callee];
    }
    t.total = t.self + t.child;
    active.erase(name);
    return memo[name] = t;
  };
  for (const Function& f : spec.functions) visit(f.name);
  return memo;
}

std::vector<OracleRecord> oracle_records(const WorkloadSpec& spec) {
  std::vector<OracleRecord> records;
  for (const Root& r : spec.roots) {
    if (r.self_seconds > 0) {
      records.push_back({std::string(kSpontaneous), r.name, r.self_seconds / spec.quantum});
    }
  }
  for (const Call& c : spec.calls) {
    if (c.per_call_seconds == 0) continue;
    if (c.grouped) {
      records.push_back({c.caller, c.callee, c.per_call_seconds * c.count / spec.quantum});
      continue;
    }
    for (std::uint64_t k = 0; k < c.count; ++k) {
      records.push_back({c.caller, c.callee, c.per_call_seconds / spec.quantum});
    }
  }
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    if (a.callee != b.callee) return a.callee < b.callee;
    return a.caller < b.caller;
  });
  return records;
}

WorkloadSpec random_workload(std::uint64_t seed, const RandomSpecLimits& limits) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
  };

  WorkloadSpec spec;
  const std::size_t n = uniform(1, limits.max_functions);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    char name[16];
    std::snprintf(name, sizeof name, "fn%02zu", i);
    names.emplace_back(name);
  }
  // Calls only go from lower to higher rank in a shuffled order: acyclic,
  // and the name order does not coincide with the call order.
  std::vector<std::string> rank = names;
  std::shuffle(rank.begin(), rank.end(), rng);
  for (const std::string& name : names) spec.functions.push_back({name, 16 * uniform(1, 256)});

  std::set<std::string> called;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (uniform(0, 2) != 0) continue;
      spec.calls.push_back({rank[i], rank[j], uniform(1, limits.max_count),
                            Rational(uniform(0, limits.max_samples_per_call)) * spec.quantum});
      called.insert(rank[j]);
      if (uniform(0, 4) == 0) {  // a second call site for the same pair
        spec.calls.push_back({rank[i], rank[j], uniform(1, limits.max_count),
                              Rational(uniform(0, limits.max_samples_per_call)) * spec.quantum});
      }
    }
  }
  for (const std::string& name : rank) {
    if (!called.count(name)) {
      spec.roots.push_back({name, Rational(uniform(0, limits.max_samples_per_call)) * spec.quantum});
    }
  }
  return spec;
}

}  // namespace accex::fixture
