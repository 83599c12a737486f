// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace raterlens::toml {

// The subset of TOML the run configs need: [section] headers (dots allowed),
// scalar and single-line array values, `#` comments. Quoted strings know the
// \" \\ \n \t \r escapes. No nested tables, no dates, no multi-line strings.

struct Value {
  enum class Type { String, Integer, Float, Boolean, Array };
  Type type = Type::String;
  std::string str;
  std::int64_t integer = 0;
  double real = 0.0;
  bool boolean = false;
  std::vector<Value> array;

  // Numeric coercion: integers read fine as floats, never the reverse.
  double as_double() const;
  std::int64_t as_int() const;
  const std::string& as_string() const;
  bool as_bool() const;
};

class Table {
 public:
  // `key` within `section`; the top level is section "".
  const Value* find(std::string_view section, std::string_view key) const;
  bool has(std::string_view section, std::string_view key) const;

  // Typed getters; the defaulted forms return `fallback` when absent, the
  // others throw a config error naming the missing key.
  std::string get_string(std::string_view section, std::string_view key,
                         std::string fallback) const;
  std::int64_t get_int(std::string_view section, std::string_view key,
                       std::int64_t fallback) const;
  double get_double(std::string_view section, std::string_view key,
                    double fallback) const;
  bool get_bool(std::string_view section, std::string_view key,
                bool fallback) const;
  std::vector<std::int64_t> get_int_array(std::string_view section,
                                          std::string_view key) const;
  std::vector<double> get_double_array(std::string_view section,
                                       std::string_view key) const;
  std::vector<std::string> get_string_array(std::string_view section,
                                            std::string_view key) const;

  // Section names in file order, optionally filtered to a dotted prefix
  // (prefix "ingest." matches "ingest.d2017").
  std::vector<std::string> sections() const;
  std::vector<std::string> sections_with_prefix(std::string_view prefix) const;

  void set(const std::string& section, const std::string& key, Value value,
           const std::string& where);

 private:
  std::map<std::string, std::map<std::string, Value>> data_;
  std::vector<std::string> section_order_;
};

Table parse(std::string_view text, const std::string& source_name);
Table parse_file(const std::string& path);

}  // namespace raterlens::toml
