#pragma once
// Minimal CSV reader/writer (RFC 4180 quoting, UTF-8 passthrough) plus
// locale-free number parsing/formatting used by every file format here.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "genlink/errors.hpp"

namespace genlink {

inline std::optional<int64_t> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

inline std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// Shortest round-trip representation; byte-stable across runs and locales.
inline std::string fmt_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

class CsvReader {
 public:
  explicit CsvReader(const std::string& path) : in_(path), path_(path) {
    if (!in_) throw DataError("cannot open file: " + path);
    if (!read_row(header_)) throw DataError("empty file (missing header): " + path);
    for (size_t i = 0; i < header_.size(); ++i) columns_[header_[i]] = i;
    row_number_ = 1;
  }

  // Column index by header name; throws when the schema does not match.
  size_t col(const std::string& name) const {
    auto it = columns_.find(name);
    if (it == columns_.end())
      throw DataError(path_ + ": missing required column '" + name + "'");
    return it->second;
  }

  bool has_col(const std::string& name) const { return columns_.count(name) > 0; }

  const std::vector<std::string>& header() const { return header_; }

  // Reads the next record into `fields`. Returns false at end of file.
  bool next(std::vector<std::string>& fields) {
    if (!read_row(fields)) return false;
    ++row_number_;
    return true;
  }

  // 1-based row number of the record last returned by next() (header = 1).
  size_t row_number() const { return row_number_; }

 private:
  bool read_row(std::vector<std::string>& fields) {
    fields.clear();
    int c = in_.get();
    if (c == EOF) return false;
    std::string field;
    bool quoted = false;
    while (true) {
      if (quoted) {
        if (c == EOF) throw DataError(path_ + ": unterminated quoted field");
        if (c == '"') {
          int peek = in_.get();
          if (peek == '"') {
            field.push_back('"');
          } else {
            quoted = false;
            c = peek;
            continue;
          }
        } else {
          field.push_back(static_cast<char>(c));
        }
      } else {
        if (c == '"' && field.empty()) {
          quoted = true;
        } else if (c == ',') {
          fields.push_back(std::move(field));
          field.clear();
        } else if (c == '\r') {
          // swallow; handled by the newline that follows
        } else if (c == '\n' || c == EOF) {
          fields.push_back(std::move(field));
          return true;
        } else {
          field.push_back(static_cast<char>(c));
        }
      }
      c = in_.get();
    }
  }

  std::ifstream in_;
  std::string path_;
  std::vector<std::string> header_;
  std::unordered_map<std::string, size_t> columns_;
  size_t row_number_ = 0;
};

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header)
      : out_(path, std::ios::binary) {
    if (!out_) throw DataError("cannot write file: " + path);
    write_row(header);
  }

  void write_row(const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ',';
      write_field(fields[i]);
    }
    out_ << '\n';
  }

  void flush() { out_.flush(); }

 private:
  void write_field(const std::string& f) {
    bool needs_quote = f.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quote) {
      out_ << f;
      return;
    }
    out_ << '"';
    for (char c : f) {
      if (c == '"') out_ << '"';
      out_ << c;
    }
    out_ << '"';
  }

  std::ofstream out_;
};

}  // namespace genlink
