#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace risqn {

inline constexpr std::string_view kCsvSchema = "risqn-results/1";

/// Rectangular table of text cells with a fixed header. Numbers are stored
/// already formatted so that emitted files are byte-stable.
class ResultTable {
 public:
  ResultTable() = default;
  explicit ResultTable(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  /// Index of a column, throws std::out_of_range when absent.
  std::size_t column(std::string_view name) const;

  void add_row(std::vector<std::string> cells);
  void append(const ResultTable& other);

  const std::string& cell(std::size_t row, std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;

  bool operator==(const ResultTable&) const = default;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Shortest round-trip decimal form of a double.
std::string format_number(double v);
std::string format_number(std::int64_t v);
std::string format_number(std::uint64_t v);

/// The first line is "# risqn-results/1", then the header, then one line per row.
void write_csv(const ResultTable& table, std::ostream& out);
void emit_csv(const ResultTable& table, const std::filesystem::path& path);

ResultTable read_csv(std::istream& in);
ResultTable parse_csv(const std::filesystem::path& path);

}  // namespace risqn
