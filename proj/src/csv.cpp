// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#include "raterlens/csv.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "raterlens/common.hpp"

namespace raterlens::csv {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string format_int(std::int64_t v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string escape(std::string_view field, char delimiter) {
  const bool needs_quotes =
      field.find_first_of("\"\r\n") != std::string_view::npos ||
      field.find(delimiter) != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

Writer::Writer(const std::string& path, char delimiter)
    : out_(path, std::ios::binary), delimiter_(delimiter), path_(path) {
  if (!out_) throw IoError("open-failed", "cannot open for writing: " + path);
}

void Writer::row(std::initializer_list<std::string_view> fields) {
  bool first = true;
  for (auto f : fields) {
    if (!first) out_.put(delimiter_);
    out_ << escape(f, delimiter_);
    first = false;
  }
  out_.put('\n');
  if (!out_) throw IoError("write-failed", "write failed: " + path_);
}

void Writer::row(const std::vector<std::string>& fields) {
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out_.put(delimiter_);
    out_ << escape(f, delimiter_);
    first = false;
  }
  out_.put('\n');
  if (!out_) throw IoError("write-failed", "write failed: " + path_);
}

void Writer::flush() { out_.flush(); }

Reader::Reader(const std::string& path, char delimiter)
    : in_(path, std::ios::binary), delimiter_(delimiter), path_(path) {
  if (!in_) throw IoError("open-failed", "cannot open for reading: " + path);
}

bool Reader::next(std::vector<std::string>& fields) {
  fields.clear();
  std::string line;
  for (;;) {
    if (!std::getline(in_, line)) return false;
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) break;
  }
  std::string field;
  bool in_quotes = false;
  std::size_t i = 0;
  for (;;) {
    for (; i < line.size(); ++i) {
      const char c = line[i];
      if (in_quotes) {
        if (c == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field.push_back('"');
            ++i;
          } else {
            in_quotes = false;
          }
        } else {
          field.push_back(c);
        }
      } else if (c == '"') {
        in_quotes = true;
      } else if (c == delimiter_) {
        fields.push_back(std::move(field));
        field.clear();
      } else {
        field.push_back(c);
      }
    }
    if (!in_quotes) break;
    // Quoted field spans a physical line break.
    std::string more;
    if (!std::getline(in_, more)) break;
    ++line_;
    if (!more.empty() && more.back() == '\r') more.pop_back();
    field.push_back('\n');
    line = std::move(more);
    i = 0;
  }
  fields.push_back(std::move(field));
  return true;
}

double parse_double(std::string_view field) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end != begin && (end[-1] == ' ' || end[-1] == '\t')) --end;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end)
    throw IoError("parse-double", "not a number: '" + std::string(field) + "'");
  return v;
}

std::int64_t parse_int(std::string_view field) {
  std::int64_t v = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end != begin && (end[-1] == ' ' || end[-1] == '\t')) --end;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end)
    throw IoError("parse-int", "not an integer: '" + std::string(field) + "'");
  return v;
}

}  // namespace raterlens::csv
