#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "accex/ingest.hpp"

namespace accex::fixture {

struct Function {
  std::string name;
  Address size = 0x100;  // bytes
};

// `count` calls from caller to callee, each spending `per_call_seconds` of
// callee self time. Each call becomes its own call group unless `grouped`.
struct Call {
  std::string caller;
  std::string callee;
  std::uint64_t count = 1;
  Rational per_call_seconds;
  bool grouped = false;
};

struct Root {
  std::string name;
  Rational self_seconds;
};

struct WorkloadSpec {
  std::vector<Function> functions;
  std::vector<Call> calls;
  std::vector<Root> roots;
  Rational quantum{1, 100};
  Address base_address = 0x400000;
};

// Throws SpecError.
WorkloadSpec parse_workload_spec(std::string_view text);
std::string write_workload_spec(const WorkloadSpec& spec);

struct GenerateOptions {
  int ptr_size = 8;
};

struct Generated {
  RawProfile profile;  // histogram + merged arcs + per-call groups
  SymbolTable symbols;
  std::vector<std::uint8_t> gmon;
  std::string symbol_map;
  std::string portable;
};

// Lays functions out on 4 KiB-aligned ranges with bins that never straddle
// a symbol, so sample assignment is exact. Throws SpecError.
Generated generate(const WorkloadSpec& spec, const GenerateOptions& options = {});

struct OracleTimes {
  Rational self;
  Rational child;
  Rational total;
};

// Ground truth by direct recursion over the call list. `self_override`
// replaces a function's self seconds. Throws CycleUnsupported.
std::map<std::string, OracleTimes> oracle_totals(
    const WorkloadSpec& spec,
    const std::map<std::string, Rational>* self_override = nullptr);

struct OracleRecord {
  std::string caller;
  std::string callee;
  Rational samples;
};

// The per-call sample groups in stable-id order (id = position + 1).
std::vector<OracleRecord> oracle_records(const WorkloadSpec& spec);

struct RandomSpecLimits {
  std::size_t max_functions = 12;
  std::uint64_t max_count = 5;
  std::uint64_t max_samples_per_call = 200;  // 2 s at the default quantum
};

// Seeded random acyclic workload.
WorkloadSpec random_workload(std::uint64_t seed, const RandomSpecLimits& limits = {});

}  // namespace accex::fixture
