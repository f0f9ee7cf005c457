// CSV output helpers: RFC-4180 rows, '.' decimal separator, doubles
// rendered with shortest round-trip formatting, and atomic writes
// (temp file + rename) so readers never observe a partial file.

#ifndef POPMC_CSV_HPP
#define POPMC_CSV_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace popmc::csv {

// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

class Writer {
public:
  // Header comment lines are written first, each prefixed with "# ".
  void comment(std::string_view text);
  void header(const std::vector<std::string>& columns);
  void row_start();
  void field(std::string_view text);
  void field(double value);
  void field(std::int64_t value);
  void row_end();

  const std::string& buffer() const { return buffer_; }

  // Writes to <path>.tmp then renames onto <path>.
  void save(const std::filesystem::path& path) const;

private:
  std::string buffer_;
  bool row_open_ = false;
  bool first_field_ = true;
};

void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

} // namespace popmc::csv

#endif // POPMC_CSV_HPP
