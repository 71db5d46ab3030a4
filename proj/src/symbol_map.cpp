#include <charconv>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "accex/error.hpp"
#include "accex/ingest.hpp"

namespace accex {
namespace {

Address parse_hex(std::string_view token, std::size_t line_no) {
  if (token.starts_with("0x") || token.starts_with("0X")) token.remove_prefix(2);
  Address value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value, 16);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) +
                                           ": bad hex address '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

SymbolTable read_symbol_map(std::string_view text) {
  std::vector<Symbol> symbols;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string name, low, high, extra;
    if (!(fields >> name)) continue;
    if (!(fields >> low >> high) || (fields >> extra)) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": expected 'name lowhex highhex'");
    }
    Symbol sym;
    sym.name = name;
    sym.low = parse_hex(low, line_no);
    sym.high = parse_hex(high, line_no);
    if (sym.low >= sym.high) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": low must be below high");
    }
    symbols.push_back(std::move(sym));
  }
  if (symbols.empty()) throw Error(ErrorCode::EmptyTable, "symbol map has no entries");
  return SymbolTable::build(std::move(symbols));
}

std::string write_symbol_map(const SymbolTable& table) {
  std::string out = "# name low high\n";
  char buf[64];
  for (const Symbol& sym : table.symbols()) {
    std::snprintf(buf, sizeof buf, " %llx %llx\n", static_cast<unsigned long long>(sym.low),
                  static_cast<unsigned long long>(sym.high));
    out += sym.name;
    out += buf;
  }
  return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_file_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_text(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

}  // namespace accex
