#include "risqn/csv.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <limits>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace risqn {

ResultTable::ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("result table needs at least one column");
}

std::size_t ResultTable::column(std::string_view name) const {
  const auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end()) throw std::out_of_range("no column named " + std::string(name));
  return static_cast<std::size_t>(it - columns_.begin());
}

void ResultTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) {
    throw std::invalid_argument("row has " + std::to_string(cells.size()) +
                                " cells, table has " + std::to_string(columns_.size()) +
                                " columns");
  }
  rows_.push_back(std::move(cells));
}

void ResultTable::append(const ResultTable& other) {
  if (columns_.empty()) columns_ = other.columns_;
  if (other.columns_ != columns_) throw std::invalid_argument("append: headers differ");
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

const std::string& ResultTable::cell(std::size_t row, std::string_view name) const {
  return rows_.at(row).at(column(name));
}

double ResultTable::number(std::size_t row, std::string_view name) const {
  const std::string& s = cell(row, name);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw std::invalid_argument("cell is not a number: " + s);
  }
  return v;
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("format_number failed");
  return std::string(buf.data(), ptr);
}

std::string format_number(std::int64_t v) { return std::to_string(v); }
std::string format_number(std::uint64_t v) { return std::to_string(v); }

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_line(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << quote(cells[i]);
  }
  out << '\n';
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else if (c != '\r') {
      cells.back() += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in CSV line");
  return cells;
}

}  // namespace

void write_csv(const ResultTable& table, std::ostream& out) {
  out << "# " << kCsvSchema << '\n';
  write_line(out, table.columns());
  for (const auto& row : table.rows()) write_line(out, row);
}

void emit_csv(const ResultTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(table, out);
  out.flush();
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

ResultTable read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "# " + std::string(kCsvSchema)) {
    throw std::invalid_argument("missing or unsupported CSV schema line");
  }
  if (!std::getline(in, line)) throw std::invalid_argument("CSV has no header row");
  ResultTable table(split_line(line));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    table.add_row(split_line(line));
  }
  return table;
}

ResultTable parse_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_csv(in);
}

}  // namespace risqn
