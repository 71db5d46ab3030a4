#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "accex/profile_model.hpp"

namespace accex {

struct GmonOptions {
  int ptr_size = 8;  // 4 or 8
};

// Parses a gmon.out image (little-endian, version 1). Histogram records are
// merged, arcs with the same (from_pc, self_pc) summed. Basic-block records
// are skipped and reported through `warnings` when given.
RawProfile read_gmon(std::span<const std::uint8_t> bytes, const GmonOptions& options = {},
                     std::vector<std::string>* warnings = nullptr);

// Emits one histogram record per histogram (bins must fit in 16 bits and
// 1/quantum must be an integer) and one arc record per arc.
std::vector<std::uint8_t> write_gmon(const RawProfile& profile,
                                     const GmonOptions& options = {});

// "name lowhex highhex" per line, '#' comments.
SymbolTable read_symbol_map(std::string_view text);
std::string write_symbol_map(const SymbolTable& table);

struct PortableProfile {
  RawProfile profile;
  SymbolTable symbols;
};

inline constexpr int kPortableProfileVersion = 1;

// JSON document; see docs/formats.md.
PortableProfile read_portable_profile(std::string_view text);
std::string write_portable_profile(const RawProfile& profile, const SymbolTable& table);

std::vector<std::uint8_t> read_file_bytes(const std::string& path);
std::string read_file_text(const std::string& path);
void write_file_text(const std::string& path, std::string_view text);

}  // namespace accex
