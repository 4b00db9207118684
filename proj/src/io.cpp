#include "aaotwin/io.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace aaotwin {

namespace {

std::string trim(const std::string& s) {
  const std::string ws = " \t\r\n";
  const std::size_t b = s.find_first_not_of(ws);
  if (b == std::string::npos) return {};
  const std::size_t e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

}  // namespace

std::string format_g9(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::string format_exact(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

CsvTable read_csv(std::istream& in, const std::string& context) {
  CsvTable table;
  std::string line;
  bool have_header = false;
  std::size_t data_row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_cells(line);
    if (!have_header) {
      table.header = std::move(cells);
      have_header = true;
      continue;
    }
    ++data_row;
    if (cells.size() != table.header.size()) {
      throw std::invalid_argument(
          context + " row " + std::to_string(data_row) + ": expected " +
          std::to_string(table.header.size()) + " columns, got " +
          std::to_string(cells.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (!have_header) {
    throw std::invalid_argument(context + ": missing header row");
  }
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "' for reading");
  }
  return read_csv(in, path);
}

std::size_t find_column(const CsvTable& table, const std::string& name) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (table.header[i] == name) return i;
  }
  return kNoColumn;
}

std::size_t column_index(const CsvTable& table, const std::string& name,
                         const std::string& context) {
  const std::size_t idx = find_column(table, name);
  if (idx == kNoColumn) {
    throw std::invalid_argument(context + ": expected a '" + name +
                                "' column in the header");
  }
  return idx;
}

double parse_cell(const std::string& cell, const std::string& context,
                  std::size_t row) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw std::invalid_argument(context + " row " + std::to_string(row) +
                                ": '" + cell + "' is not a number");
  }
  return value;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i > 0) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const std::vector<double>& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << format_g9(row[i]);
    }
    out << '\n';
  }
}

void write_csv_file(const std::string& path,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  write_csv(out, header, rows);
  out.flush();
  if (!out) {
    throw std::runtime_error("failed while writing '" + path + "'");
  }
}

ConfigFile parse_config(std::istream& in, const std::string& context) {
  ConfigFile config;
  std::string line;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw std::invalid_argument(context + " line " +
                                    std::to_string(line_no) +
                                    ": malformed section heading '" + line +
                                    "'");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw std::invalid_argument(context + " line " +
                                    std::to_string(line_no) +
                                    ": empty section name");
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(context + " line " + std::to_string(line_no) +
                                  ": expected 'key = value', got '" + line +
                                  "'");
    }
    ConfigEntry entry;
    entry.section = section;
    entry.key = trim(line.substr(0, eq));
    entry.value = trim(line.substr(eq + 1));
    entry.line = line_no;
    if (entry.key.empty()) {
      throw std::invalid_argument(context + " line " + std::to_string(line_no) +
                                  ": empty key");
    }
    config.entries.push_back(std::move(entry));
  }
  return config;
}

ConfigFile read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "' for reading");
  }
  return parse_config(in, path);
}

}  // namespace aaotwin
