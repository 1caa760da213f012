#include "arena/csv.hpp"

#include "arena/params_io.hpp"

#include <cmath>
#include <stdexcept>

namespace arena {

CsvWriter::CsvWriter(std::ostream& os, std::string_view schema, std::vector<std::string> columns)
    : os_(os), n_columns_(columns.size()) {
  os_ << kCsvSchemaPrefix << schema << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) os_ << ',';
    os_ << columns[i];
  }
  os_ << '\n';
}

void CsvWriter::sep() {
  if (in_row_ >= n_columns_) throw std::logic_error("CSV row has too many cells");
  if (in_row_++) os_ << ',';
}

CsvWriter& CsvWriter::cell(double v) {
  sep();
  os_ << (std::isfinite(v) ? format_decimal(v) : (std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf")));
  return *this;
}

CsvWriter& CsvWriter::cell(long long v) {
  sep();
  os_ << v;
  return *this;
}

CsvWriter& CsvWriter::cell(std::string_view v) {
  sep();
  if (v.find_first_of(",\"\n") != std::string_view::npos) {
    os_ << '"';
    for (char c : v) {
      if (c == '"') os_ << '"';
      os_ << c;
    }
    os_ << '"';
  } else {
    os_ << v;
  }
  return *this;
}

CsvWriter& CsvWriter::blank() {
  sep();
  return *this;
}

void CsvWriter::end_row() {
  if (in_row_ != n_columns_) throw std::logic_error("CSV row has too few cells");
  os_ << '\n';
  in_row_ = 0;
}

}  // namespace arena
