#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "qrtsim/types.hpp"

namespace qrtsim {

// Shortest exact decimal form via %.17g: parsing the text recovers the
// identical double, and equal inputs produce byte-identical files.
std::string format_g17(double v);

// Plain CSV with '#'-prefixed metadata comments before the header row.
// No timestamps or machine-dependent content is ever written.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void comment(const std::string& text);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);

 private:
  std::ofstream out_;
  std::string path_;
  std::size_t columns_ = 0;
};

}  // namespace qrtsim
