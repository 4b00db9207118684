#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace aaotwin {

// 9-significant-digit rendering shared by every emitted table and report so
// identical inputs serialize byte for byte.
std::string format_g9(double value);

// Shortest decimal form that parses back to the same double; used for
// parameter files so a written value reloads bit for bit.
std::string format_exact(double value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline constexpr std::size_t kNoColumn = static_cast<std::size_t>(-1);

// Comma-separated cells under a single header row. Cells are trimmed, blank
// lines skipped; a row whose width differs from the header fails with its
// 1-based data row number. context (usually the path) prefixes messages.
CsvTable read_csv(std::istream& in, const std::string& context);
CsvTable read_csv_file(const std::string& path);

std::size_t find_column(const CsvTable& table, const std::string& name);
// As find_column but a missing name is an error naming the expected header.
std::size_t column_index(const CsvTable& table, const std::string& name,
                         const std::string& context);

double parse_cell(const std::string& cell, const std::string& context,
                  std::size_t row);

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
void write_csv_file(const std::string& path,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows);

// One key = value assignment from a config file. Keys under a [section]
// heading report the joined dotted form section.key.
struct ConfigEntry {
  std::string section;
  std::string key;
  std::string value;
  std::size_t line = 0;

  std::string dotted_key() const {
    return section.empty() ? key : section + "." + key;
  }
};

struct ConfigFile {
  std::vector<ConfigEntry> entries;
};

// Plain-text config: `key = value` lines, optional `[section]` headings,
// `#`/`;` comments. Malformed lines fail with their line number.
ConfigFile parse_config(std::istream& in, const std::string& context);
ConfigFile read_config_file(const std::string& path);

}  // namespace aaotwin
