#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace snnrl {

/// Fixed decimal formatting with 9 significant digits; all CSV output goes
/// through this so files are byte-stable for identical inputs.
std::string format_number(double value);
std::string format_number(int value);
std::string format_number(std::size_t value);

/// Line-buffered CSV writer; creates parent directories on open.
class CsvFile {
 public:
  explicit CsvFile(const std::filesystem::path& path);
  void write_row(const std::vector<std::string>& fields);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace snnrl
