#include "csv.hpp"

#include <charconv>
#include <system_error>

#include "config.hpp"

namespace ric::app {

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 10);
  if (res.ec != std::errc{}) throw Error("number formatting failed");
  return {buf, res.ptr};
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> header)
    : out_(path, std::ios::binary) {
  if (!out_) throw ConfigError("cannot write " + path.string());
  for (const auto& h : header) cell(h);
  end_row();
}

CsvWriter& CsvWriter::cell(double value) { return cell(format_number(value)); }

CsvWriter& CsvWriter::cell(std::size_t value) { return cell(std::to_string(value)); }

CsvWriter& CsvWriter::cell(const std::string& text) {
  if (!fresh_row_) out_ << ',';
  out_ << text;
  fresh_row_ = false;
  return *this;
}

void CsvWriter::end_row() {
  out_ << '\n';
  fresh_row_ = true;
}

}  // namespace ric::app
