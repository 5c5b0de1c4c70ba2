#include "snnrl/csv.hpp"

#include <cstdio>

#include "snnrl/errors.hpp"

namespace snnrl {

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::string format_number(int value) { return std::to_string(value); }

std::string format_number(std::size_t value) { return std::to_string(value); }

CsvFile::CsvFile(const std::filesystem::path& path) : path_(path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw IoError("cannot open '" + path.string() + "' for writing");
}

void CsvFile::write_row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << fields[i];
  }
  out_ << '\n';
  if (!out_) throw IoError("write failed for '" + path_.string() + "'");
}

}  // namespace snnrl
