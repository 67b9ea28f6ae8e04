#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oseval::csv {

/// Streams the meaningful lines of a comma-separated file: blank lines and
/// lines starting with '#' are skipped, trailing CR is stripped.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Advances to the next meaningful line; false at end of input.
  bool next();
  std::string_view line() const { return current_; }
  std::size_t line_number() const { return line_number_; }  // 1-based

 private:
  std::istream& in_;
  std::string buffer_;
  std::string_view current_;
  std::size_t line_number_ = 0;
};

/// Splits on ',' and trims surrounding blanks of each field. The views point
/// into `line`.
void split(std::string_view line, std::vector<std::string_view>& out);
std::vector<std::string> split(std::string_view line);

/// Strict numeric parsing: the whole field must be consumed and finite.
std::optional<double> parse_real(std::string_view field);
std::optional<long long> parse_integer(std::string_view field);

/// Shortest representation that parses back to the same double.
std::string format_real(double value);

/// Fixed-point with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

/// Writes `content` to `path` via a sibling temporary file and a rename, so
/// readers never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace oseval::csv
