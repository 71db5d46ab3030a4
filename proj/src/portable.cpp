#include <cstdio>
#include <numeric>

#include <json.hpp>

#include "accex/error.hpp"
#include "accex/ingest.hpp"

namespace accex {
namespace {

using nlohmann::json;

std::string hex(Address a) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(a));
  return buf;
}

Address parse_address(const json& value, std::string_view what) {
  if (value.is_number_unsigned()) return value.get<Address>();
  if (value.is_string()) {
    std::string text = value.get<std::string>();
    std::size_t used = 0;
    try {
      const Address a = std::stoull(text, &used, 0);
      if (used == text.size()) return a;
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorCode::ParseError, "bad address in " + std::string(what));
}

std::uint64_t parse_count(const json& value, std::string_view what) {
  if (!value.is_number_unsigned()) {
    if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
      return value.get<std::uint64_t>();
    }
    throw Error(ErrorCode::ParseError,
                "expected a non-negative integer for " + std::string(what));
  }
  return value.get<std::uint64_t>();
}

const json& field(const json& object, const char* key, std::string_view where) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw Error(ErrorCode::ParseError,
                "missing field '" + std::string(key) + "' in " + std::string(where));
  }
  return *it;
}

const Symbol& named_symbol(const SymbolTable& table, const std::string& name) {
  const Symbol* sym = table.find(name);
  if (!sym) throw Error(ErrorCode::ParseError, "unknown symbol '" + name + "'");
  return *sym;
}

// One bin per gcd-sized slice; each symbol's total goes in its first bin.
Histogram histogram_from_totals(const json& totals, const SymbolTable& table,
                                const Rational& quantum) {
  if (table.empty()) throw Error(ErrorCode::ParseError, "sample totals without symbols");
  const Address base = table.symbols().front().low;
  const Address top = table.symbols().back().high;
  Address width = 0;
  for (const Symbol& sym : table.symbols()) {
    width = std::gcd(width, sym.low - base);
    width = std::gcd(width, sym.high - base);
  }
  Histogram h;
  h.low = base;
  h.high = top;
  h.quantum = quantum;
  h.bins.assign((top - base) / width, 0);
  for (const auto& [name, count] : totals.items()) {
    const Symbol& sym = named_symbol(table, name);
    h.bins[(sym.low - base) / width] += parse_count(count, "samples_by_symbol");
  }
  return h;
}

}  // namespace

PortableProfile read_portable_profile(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "profile must be a JSON object");
  const json& version = field(doc, "accex_profile_version", "profile");
  if (!version.is_number_integer() || version.get<int>() != kPortableProfileVersion) {
    throw Error(ErrorCode::SchemaVersionUnsupported,
                "unsupported accex_profile_version " + version.dump());
  }

  PortableProfile out;
  RawProfile& profile = out.profile;
  if (auto q = doc.find("quantum"); q != doc.end()) {
    if (!q->is_number() || q->get<double>() <= 0) {
      throw Error(ErrorCode::ParseError, "quantum must be a positive number");
    }
    profile.quantum = from_double(q->get<double>());
  }

  std::vector<Symbol> symbols;
  for (const json& s : doc.value("symbols", json::array())) {
    Symbol sym;
    sym.name = field(s, "name", "symbol").get<std::string>();
    sym.low = parse_address(field(s, "low", "symbol"), "symbol low");
    sym.high = parse_address(field(s, "high", "symbol"), "symbol high");
    symbols.push_back(std::move(sym));
  }
  out.symbols = SymbolTable::build(std::move(symbols));

  for (const json& h : doc.value("histograms", json::array())) {
    Histogram hist;
    hist.low = parse_address(field(h, "low", "histogram"), "histogram low");
    hist.high = parse_address(field(h, "high", "histogram"), "histogram high");
    for (const json& b : field(h, "bins", "histogram")) {
      hist.bins.push_back(parse_count(b, "bin"));
    }
    hist.quantum = profile.quantum;
    hist.validate();
    profile.histograms.push_back(std::move(hist));
  }
  if (auto totals = doc.find("samples_by_symbol"); totals != doc.end()) {
    profile.histograms.push_back(histogram_from_totals(*totals, out.symbols, profile.quantum));
  }

  for (const json& a : doc.value("arcs", json::array())) {
    RawArc arc;
    if (a.contains("caller") || a.contains("callee")) {
      arc.from_pc = named_symbol(out.symbols, field(a, "caller", "arc").get<std::string>()).low;
      arc.self_pc = named_symbol(out.symbols, field(a, "callee", "arc").get<std::string>()).low;
    } else {
      arc.from_pc = parse_address(field(a, "from_pc", "arc"), "arc from_pc");
      arc.self_pc = parse_address(field(a, "self_pc", "arc"), "arc self_pc");
    }
    arc.count = parse_count(field(a, "count", "arc"), "arc count");
    profile.arcs.push_back(arc);
  }

  for (const json& g : doc.value("call_groups", json::array())) {
    CallGroup group;
    group.caller = field(g, "caller", "call group").get<std::string>();
    group.callee = field(g, "callee", "call group").get<std::string>();
    if (group.caller != kSpontaneous) named_symbol(out.symbols, group.caller);
    named_symbol(out.symbols, group.callee);
    group.samples = parse_count(field(g, "samples", "call group"), "samples");
    if (auto calls = g.find("calls"); calls != g.end()) {
      group.calls = parse_count(*calls, "calls");
    }
    profile.call_groups.push_back(std::move(group));
  }
  return out;
}

std::string write_portable_profile(const RawProfile& profile, const SymbolTable& table) {
  json doc;
  doc["accex_profile_version"] = kPortableProfileVersion;
  doc["quantum"] = to_double(profile.quantum);

  json symbols = json::array();
  for (const Symbol& sym : table.symbols()) {
    symbols.push_back({{"name", sym.name}, {"low", hex(sym.low)}, {"high", hex(sym.high)}});
  }
  doc["symbols"] = std::move(symbols);

  json histograms = json::array();
  for (const Histogram& h : profile.histograms) {
    if (h.quantum != profile.quantum) {
      throw Error(ErrorCode::MismatchedGeometry,
                  "portable profiles carry a single quantum for all histograms");
    }
    histograms.push_back({{"low", hex(h.low)}, {"high", hex(h.high)}, {"bins", h.bins}});
  }
  doc["histograms"] = std::move(histograms);

  json arcs = json::array();
  for (const RawArc& arc : profile.arcs) {
    arcs.push_back(
        {{"from_pc", hex(arc.from_pc)}, {"self_pc", hex(arc.self_pc)}, {"count", arc.count}});
  }
  doc["arcs"] = std::move(arcs);

  json groups = json::array();
  for (const CallGroup& g : profile.call_groups) {
    groups.push_back({{"caller", g.caller},
                      {"callee", g.callee},
                      {"samples", g.samples},
                      {"calls", g.calls}});
  }
  doc["call_groups"] = std::move(groups);
  return doc.dump(1) + "\n";
}

}  // namespace accex
