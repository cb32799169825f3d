#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace swgp::io {

// 17 significant digits: enough for exact double round-trips, so emitted
// files diff and re-emit byte-identically.
std::string format_g17(double v);

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t line_number)
      : std::runtime_error(what), line(line_number) {}
  std::size_t line;
};

// Minimal CSV: one header row, comma separation, no quoting (values are
// numbers or plain identifiers). Trailing comment lines start with '#'.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> comments;
};

std::string to_csv(const Table& table);
Table parse_csv(const std::string& text);

// Writes via a temp file and rename, so readers never observe partial files.
void write_csv_atomic(const std::filesystem::path& path, const Table& table);
Table read_csv(const std::filesystem::path& path);

// Strict double parser; throws ParseError tagged with `line` on garbage.
double parse_double(const std::string& cell, std::size_t line);

}  // namespace swgp::io
