#include "popmc/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "popmc/errors.hpp"

namespace popmc::csv {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void Writer::comment(std::string_view text) {
  buffer_ += "# ";
  buffer_ += text;
  buffer_ += '\n';
}

void Writer::header(const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i != 0) buffer_ += ',';
    buffer_ += columns[i];
  }
  buffer_ += '\n';
}

void Writer::row_start() {
  row_open_ = true;
  first_field_ = true;
}

void Writer::field(std::string_view text) {
  if (!first_field_) buffer_ += ',';
  first_field_ = false;
  buffer_ += text;
}

void Writer::field(double value) { field(std::string_view(format_double(value))); }

void Writer::field(std::int64_t value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  field(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
}

void Writer::row_end() {
  buffer_ += '\n';
  row_open_ = false;
}

void Writer::save(const std::filesystem::path& path) const {
  write_file_atomic(path, buffer_);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot rename " + tmp.string() + ": " + ec.message());
}

} // namespace popmc::csv
