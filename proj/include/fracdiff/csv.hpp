#pragma once

#include <string>
#include <vector>

namespace fracdiff {

// Scientific notation with 17 significant digits ("%.16e"); round-trips
// every double and keeps output byte-stable.
std::string format_number(double value);

struct CsvTable {
  // Written first, each prefixed with "# ".
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const;
};

// Writes the table to path, replacing any existing file. Throws
// std::runtime_error if the file cannot be written.
void write_csv(const std::string& path, const CsvTable& table);

}  // namespace fracdiff
