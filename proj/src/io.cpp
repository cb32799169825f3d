#include "swgp/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace swgp::io {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

std::string to_csv(const Table& table) {
  std::ostringstream os;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) os << ',';
    os << table.columns[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << row[i];
    }
    os << '\n';
  }
  for (const auto& c : table.comments) os << "# " << c << '\n';
  return os.str();
}

Table parse_csv(const std::string& text) {
  Table table;
  std::istringstream is(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string c = line.substr(1);
      if (!c.empty() && c.front() == ' ') c.erase(0, 1);
      table.comments.push_back(c);
      continue;
    }
    auto cells = split_line(line);
    if (line_no == 1) {
      table.columns = std::move(cells);
      continue;
    }
    if (table.columns.empty())
      throw ParseError("missing header row", line_no);
    if (cells.size() != table.columns.size())
      throw ParseError("row has " + std::to_string(cells.size()) +
                           " cells, header has " +
                           std::to_string(table.columns.size()),
                       line_no);
    table.rows.push_back(std::move(cells));
  }
  if (table.columns.empty()) throw ParseError("empty file", 0);
  return table;
}

void write_csv_atomic(const std::filesystem::path& path, const Table& table) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string());
    os << to_csv(table);
    if (!os) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_csv(buf.str());
}

double parse_double(const std::string& cell, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size())
      throw ParseError("trailing characters in number '" + cell + "'", line);
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + cell + "'", line);
  }
}

}  // namespace swgp::io
