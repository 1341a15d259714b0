#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace anoma {

/// Plain CSV table with `# key: value` metadata lines ahead of the header.
struct CsvTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_meta(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
  }
};

/// Shortest decimal string that parses back to the same double.
std::string format_number(double value);

std::string write_csv(const CsvTable& table);

/// Parses text produced by write_csv. Cells are split on ',' without quoting.
CsvTable read_csv(std::string_view text);

/// Re-formats every cell that parses as a number through format_number.
CsvTable reformat_numbers(CsvTable table);

}  // namespace anoma
