// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace raterlens::csv {

// Shortest round-trip decimal form (std::to_chars). Deterministic across
// runs, which the byte-identical-output contract relies on.
std::string format_double(double v);
std::string format_int(std::int64_t v);

// Quote a field only when it contains the delimiter, a quote or a newline.
std::string escape(std::string_view field, char delimiter = ',');

// Line-at-a-time writer. Binary mode, LF endings.
class Writer {
 public:
  explicit Writer(const std::string& path, char delimiter = ',');
  void row(std::initializer_list<std::string_view> fields);
  void row(const std::vector<std::string>& fields);
  void flush();

 private:
  std::ofstream out_;
  char delimiter_;
  std::string path_;
};

// Streaming reader handling quoted fields ("" escapes) and CRLF input.
class Reader {
 public:
  explicit Reader(const std::string& path, char delimiter = ',');
  // Returns false at end of file. Blank lines are skipped.
  bool next(std::vector<std::string>& fields);
  std::size_t line_number() const noexcept { return line_; }

 private:
  std::ifstream in_;
  char delimiter_;
  std::size_t line_ = 0;
  std::string path_;
};

double parse_double(std::string_view field);
std::int64_t parse_int(std::string_view field);

}  // namespace raterlens::csv
