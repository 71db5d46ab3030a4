#include "accex/profile_model.hpp"

#include <algorithm>
#include <numeric>

#include "accex/error.hpp"

namespace accex {

SymbolTable SymbolTable::build(std::vector<Symbol> symbols) {
  SymbolTable table;
  for (const Symbol& sym : symbols) {
    if (sym.low >= sym.high) {
      throw Error(ErrorCode::ParseError,
                  "symbol '" + sym.name + "' has an empty address range");
    }
  }

  std::vector<std::size_t> by_name(symbols.size());
  std::iota(by_name.begin(), by_name.end(), 0);
  std::sort(by_name.begin(), by_name.end(), [&](std::size_t a, std::size_t b) {
    return symbols[a].name < symbols[b].name;
  });
  for (std::size_t rank = 0; rank < by_name.size(); ++rank) {
    Symbol& sym = symbols[by_name[rank]];
    if (rank > 0 && symbols[by_name[rank - 1]].name == sym.name) {
      throw Error(ErrorCode::ParseError, "duplicate symbol '" + sym.name + "'");
    }
    sym.index = rank;
  }

  std::sort(symbols.begin(), symbols.end(),
            [](const Symbol& a, const Symbol& b) { return a.low < b.low; });
  for (std::size_t i = 1; i < symbols.size(); ++i) {
    if (symbols[i].low < symbols[i - 1].high) {
      throw Error(ErrorCode::OverlappingSymbols,
                  "symbols '" + symbols[i - 1].name + "' and '" +
                      symbols[i].name + "' overlap");
    }
  }

  table.index_to_position_.resize(symbols.size());
  for (std::size_t pos = 0; pos < symbols.size(); ++pos) {
    table.name_index_.emplace(symbols[pos].name, pos);
    table.index_to_position_[symbols[pos].index] = pos;
  }
  table.by_address_ = std::move(symbols);
  return table;
}

const Symbol* SymbolTable::find(std::string_view name) const {
  auto it = name_index_.find(name);
  return it == name_index_.end() ? nullptr : &by_address_[it->second];
}

const Symbol& SymbolTable::by_index(std::size_t index) const {
  if (index >= index_to_position_.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "symbol index out of range");
  }
  return by_address_[index_to_position_[index]];
}

const Symbol* lookup_symbol(const SymbolTable& table, Address addr) {
  auto symbols = table.symbols();
  auto it = std::upper_bound(
      symbols.begin(), symbols.end(), addr,
      [](Address a, const Symbol& sym) { return a < sym.high; });
  if (it == symbols.end() || !it->contains(addr)) return nullptr;
  return &*it;
}

std::uint64_t Histogram::total_samples() const {
  return std::accumulate(bins.begin(), bins.end(), std::uint64_t{0});
}

void Histogram::validate() const {
  if (bins.empty() || low >= high) {
    throw Error(ErrorCode::MismatchedGeometry,
                "histogram needs low < high and at least one bin");
  }
  if (quantum <= 0) {
    throw Error(ErrorCode::MismatchedGeometry, "histogram sampling rate must be positive");
  }
  if ((high - low) % bins.size() != 0) {
    throw Error(ErrorCode::FractionalBinWidth,
                "histogram range is not divisible by its bin count");
  }
}

std::pair<Address, Address> bin_range(const Histogram& hist, std::size_t i) {
  if (i >= hist.bins.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "bin " + std::to_string(i) + " out of range (" +
                    std::to_string(hist.bins.size()) + " bins)");
  }
  const Address width = hist.bin_width();
  return {hist.low + i * width, hist.low + (i + 1) * width};
}

Histogram merge_histograms(std::span<const Histogram> histograms) {
  if (histograms.empty()) {
    throw Error(ErrorCode::MismatchedGeometry, "no histograms to merge");
  }
  Histogram merged = histograms.front();
  for (const Histogram& h : histograms.subspan(1)) {
    if (h.low != merged.low || h.high != merged.high ||
        h.bins.size() != merged.bins.size() || h.quantum != merged.quantum) {
      throw Error(ErrorCode::MismatchedGeometry,
                  "histograms differ in range, bin count or sampling rate");
    }
    for (std::size_t i = 0; i < h.bins.size(); ++i) merged.bins[i] += h.bins[i];
  }
  return merged;
}

std::vector<RawArc> merge_arcs(std::span<const RawArc> arcs) {
  std::map<std::pair<Address, Address>, std::uint64_t> summed;
  for (const RawArc& arc : arcs) summed[{arc.from_pc, arc.self_pc}] += arc.count;
  std::vector<RawArc> out;
  out.reserve(summed.size());
  for (const auto& [key, count] : summed) {
    if (count > 0) out.push_back({key.first, key.second, count});
  }
  return out;
}

void override_quantum(RawProfile& profile, const Rational& quantum) {
  profile.quantum = quantum;
  for (Histogram& h : profile.histograms) h.quantum = quantum;
}

RawProfile relocate(const RawProfile& profile, Address delta) {
  RawProfile out = profile;
  for (Histogram& h : out.histograms) {
    h.low += delta;
    h.high += delta;
  }
  for (RawArc& arc : out.arcs) {
    arc.from_pc += delta;
    arc.self_pc += delta;
  }
  return out;
}

SymbolTable relocate(const SymbolTable& table, Address delta) {
  std::vector<Symbol> shifted(table.symbols().begin(), table.symbols().end());
  for (Symbol& sym : shifted) {
    sym.low += delta;
    sym.high += delta;
  }
  return SymbolTable::build(std::move(shifted));
}

}  // namespace accex
