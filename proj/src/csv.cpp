#include "qrtsim/csv.hpp"

#include <cstdio>

namespace qrtsim {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path), path_(path) {
  if (!out_) throw ValidationError("cannot open output file '" + path + "'");
}

void CsvWriter::comment(const std::string& text) {
  out_ << "# " << text << "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  columns_ = columns.size();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out_ << columns[i] << (i + 1 < columns.size() ? "," : "");
  }
  out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) {
    throw Error("row width mismatch in '" + path_ + "'");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    out_ << format_g17(values[i]) << (i + 1 < values.size() ? "," : "");
  }
  out_ << "\n";
}

}  // namespace qrtsim
