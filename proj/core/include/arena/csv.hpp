#pragma once

// Minimal CSV emission: a schema line "# arena-csv schema=<name>/<version>",
// a header row, then comma-separated rows with '.' decimals.

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace arena {

inline constexpr std::string_view kCsvSchemaPrefix = "# arena-csv schema=";

class CsvWriter {
 public:
  CsvWriter(std::ostream& os, std::string_view schema, std::vector<std::string> columns);

  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(std::string_view v);
  /// Empty cell (missing value).
  CsvWriter& blank();
  void end_row();

  std::size_t columns() const { return n_columns_; }

 private:
  void sep();

  std::ostream& os_;
  std::size_t n_columns_ = 0;
  std::size_t in_row_ = 0;
};

}  // namespace arena
