#include "fracdiff/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fracdiff {

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", value);
  return buf;
}

std::string CsvTable::to_string() const {
  std::ostringstream out;
  for (const auto& c : comments) out << "# " << c << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out << (i ? "," : "") << columns[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  return out.str();
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file << table.to_string();
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace fracdiff
