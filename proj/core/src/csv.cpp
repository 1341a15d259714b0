#include "asyncnoma/csv.hpp"

#include <charconv>
#include <sstream>
#include <system_error>

#include "asyncnoma/errors.hpp"

namespace anoma {
namespace {

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

void join(std::ostringstream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string write_csv(const CsvTable& table) {
  std::ostringstream out;
  for (const auto& [key, value] : table.metadata) out << "# " << key << ": " << value << '\n';
  join(out, table.header);
  for (const auto& row : table.rows) join(out, row);
  return out.str();
}

CsvTable read_csv(std::string_view text) {
  CsvTable table;
  bool have_header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    if (!have_header && line.starts_with("# ")) {
      const auto colon = line.find(": ");
      if (colon == std::string_view::npos) throw ParameterError("malformed CSV metadata line");
      table.add_meta(std::string(line.substr(2, colon - 2)), std::string(line.substr(colon + 2)));
    } else if (!have_header) {
      table.header = split(line);
      have_header = true;
    } else {
      table.rows.push_back(split(line));
    }
  }
  return table;
}

CsvTable reformat_numbers(CsvTable table) {
  for (auto& row : table.rows) {
    for (auto& cell : row) {
      double v = 0.0;
      const auto* first = cell.data();
      const auto* last = cell.data() + cell.size();
      const auto res = std::from_chars(first, last, v);
      if (res.ec == std::errc() && res.ptr == last && !cell.empty()) cell = format_number(v);
    }
  }
  return table;
}

}  // namespace anoma
