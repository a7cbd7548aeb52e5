#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace rumorsim::csv {

/// Splits one CSV record. Fields may be double-quoted; "" inside quotes is a
/// literal quote. Throws ParseError on an unterminated quote.
std::vector<std::string> split_record(std::string_view line, const std::string& source,
                                      std::size_t line_no);

/// Line reader that strips a trailing CR and tracks 1-based line numbers.
/// Throws IoError if the file cannot be opened.
class Reader {
 public:
  explicit Reader(const std::filesystem::path& path);

  /// Reads the header and throws ParseError unless it equals `expected`.
  void expect_header(std::string_view expected);

  /// Next non-blank record; false at end of file.
  bool next(std::vector<std::string>& fields);

  std::size_t line() const noexcept { return line_; }
  const std::string& source() const noexcept { return source_; }

 private:
  std::ifstream in_;
  std::string source_;
  std::size_t line_ = 0;
};

std::uint64_t parse_u64(std::string_view field, const std::string& source, std::size_t line_no,
                        std::string_view what);

/// Shortest round-trip decimal form.
std::string format_double(double value);

/// Quotes a field if it contains a comma, quote or newline.
std::string quote(std::string_view field);

/// Opens a file for writing; throws IoError naming the path on failure.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace rumorsim::csv
