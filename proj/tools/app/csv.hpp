#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace ric::app {

/// Shortest round-trip text with 10 significant digits, '.' separator, independent of locale.
[[nodiscard]] std::string format_number(double value);

/// Comma-separated file with a header row.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> header);

  CsvWriter& cell(double value);
  CsvWriter& cell(const std::string& text);
  CsvWriter& cell(std::size_t value);
  void end_row();

 private:
  std::ofstream out_;
  bool fresh_row_ = true;
};

}  // namespace ric::app
