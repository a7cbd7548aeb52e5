#include "rumorsim/csv.hpp"

#include <charconv>
#include <system_error>

#include "rumorsim/error.hpp"

namespace rumorsim::csv {

std::vector<std::string> split_record(std::string_view line, const std::string& source,
                                      std::size_t line_no) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw ParseError(source, line_no, "unterminated quoted field");
  return fields;
}

Reader::Reader(const std::filesystem::path& path) : in_(path), source_(path.string()) {
  if (!in_) throw IoError("cannot open '" + source_ + "' for reading");
}

void Reader::expect_header(std::string_view expected) {
  std::string header;
  if (!std::getline(in_, header)) {
    throw ParseError(source_, 1, "missing header, expected '" + std::string(expected) + "'");
  }
  ++line_;
  if (!header.empty() && header.back() == '\r') header.pop_back();
  // Tolerate a UTF-8 byte order mark.
  if (header.rfind("\xEF\xBB\xBF", 0) == 0) header.erase(0, 3);
  if (header != expected) {
    throw ParseError(source_, line_,
                     "bad header '" + header + "', expected '" + std::string(expected) + "'");
  }
}

bool Reader::next(std::vector<std::string>& fields) {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    fields = split_record(line, source_, line_);
    return true;
  }
  if (in_.bad()) throw IoError("read failure on '" + source_ + "'");
  return false;
}

std::uint64_t parse_u64(std::string_view field, const std::string& source, std::size_t line_no,
                        std::string_view what) {
  const auto first = field.find_first_not_of(' ');
  const auto last = field.find_last_not_of(' ');
  if (first == std::string_view::npos) {
    throw ParseError(source, line_no, "empty " + std::string(what));
  }
  field = field.substr(first, last - first + 1);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(source, line_no,
                     "invalid " + std::string(what) + " '" + std::string(field) + "'");
  }
  return value;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace rumorsim::csv
