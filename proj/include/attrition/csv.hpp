#pragma once

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace attrition {

/// Shortest decimal that parses back to exactly the same double.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// RFC 4180 record reader: handles quoted fields, escaped quotes, embedded
/// newlines, and CRLF line endings.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  /// Reads one record into `fields`. Returns false at end of input.
  bool next_record(std::vector<std::string>& fields) {
    fields.clear();
    int c = in_.get();
    if (c == std::istream::traits_type::eof()) return false;

    std::string field;
    bool quoted = false;
    while (true) {
      if (c == std::istream::traits_type::eof()) {
        fields.push_back(field);
        return true;
      }
      const char ch = static_cast<char>(c);
      if (quoted) {
        if (ch == '"') {
          const int peek = in_.peek();
          if (peek == '"') {
            field.push_back('"');
            in_.get();
          } else {
            quoted = false;
          }
        } else {
          field.push_back(ch);
        }
      } else if (ch == '"' && field.empty()) {
        quoted = true;
      } else if (ch == ',') {
        fields.push_back(field);
        field.clear();
      } else if (ch == '\n') {
        fields.push_back(field);
        return true;
      } else if (ch == '\r') {
        if (in_.peek() == '\n') in_.get();
        fields.push_back(field);
        return true;
      } else {
        field.push_back(ch);
      }
      c = in_.get();
    }
  }

 private:
  std::istream& in_;
};

inline bool csv_needs_quoting(std::string_view field) {
  return field.find_first_of(",\"\r\n") != std::string_view::npos;
}

inline void csv_write_field(std::ostream& out, std::string_view field) {
  if (!csv_needs_quoting(field)) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << "\"\"";
    else out << c;
  }
  out << '"';
}

inline void csv_write_record(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    csv_write_field(out, fields[i]);
  }
  out << '\n';
}

inline void csv_write_record(std::ostream& out, std::initializer_list<std::string> fields) {
  csv_write_record(out, std::span<const std::string>(fields.begin(), fields.size()));
}

}  // namespace attrition
