// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#include "raterlens/toml.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "raterlens/common.hpp"

namespace raterlens::toml {
namespace {

[[noreturn]] void fail(const std::string& source, std::size_t line,
                       const std::string& message) {
  throw ConfigError("toml-parse",
                    source + ":" + std::to_string(line) + ": " + message);
}

bool is_bare_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

bool is_section_char(char c) { return is_bare_char(c) || c == '.'; }

struct LineParser {
  std::string_view text;
  std::size_t pos = 0;
  const std::string& source;
  std::size_t line;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size() || text[pos] == '#';
  }
  char peek() const { return text[pos]; }

  std::string parse_string() {
    ++pos;  // opening quote
    std::string out;
    while (pos < text.size()) {
      const char c = text[pos++];
      if (c == '"') return out;
      if (c == '\\') {
        if (pos >= text.size()) fail(source, line, "dangling escape");
        const char e = text[pos++];
        switch (e) {
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case 'r': out.push_back('\r'); break;
          default:
            fail(source, line, std::string("unsupported escape \\") + e);
        }
      } else {
        out.push_back(c);
      }
    }
    fail(source, line, "unterminated string");
  }

  Value parse_scalar_token(std::string_view token) {
    Value v;
    if (token == "true" || token == "false") {
      v.type = Value::Type::Boolean;
      v.boolean = token == "true";
      return v;
    }
    const bool looks_float =
        token.find_first_of(".eE") != std::string_view::npos ||
        token == "inf" || token == "-inf" || token == "nan";
    if (!looks_float) {
      std::int64_t i = 0;
      const auto [p, ec] =
          std::from_chars(token.data(), token.data() + token.size(), i);
      if (ec == std::errc() && p == token.data() + token.size()) {
        v.type = Value::Type::Integer;
        v.integer = i;
        return v;
      }
    }
    double d = 0.0;
    const auto [p, ec] =
        std::from_chars(token.data(), token.data() + token.size(), d);
    if (ec == std::errc() && p == token.data() + token.size()) {
      v.type = Value::Type::Float;
      v.real = d;
      return v;
    }
    fail(source, line, "cannot parse value '" + std::string(token) + "'");
  }

  Value parse_value() {
    skip_ws();
    if (pos >= text.size()) fail(source, line, "missing value");
    const char c = text[pos];
    if (c == '"') {
      Value v;
      v.type = Value::Type::String;
      v.str = parse_string();
      return v;
    }
    if (c == '[') {
      ++pos;
      Value v;
      v.type = Value::Type::Array;
      skip_ws();
      if (pos < text.size() && text[pos] == ']') {
        ++pos;
        return v;
      }
      for (;;) {
        v.array.push_back(parse_value());
        skip_ws();
        if (pos >= text.size()) fail(source, line, "unterminated array");
        if (text[pos] == ',') {
          ++pos;
          skip_ws();
          if (pos < text.size() && text[pos] == ']') {  // trailing comma
            ++pos;
            return v;
          }
          continue;
        }
        if (text[pos] == ']') {
          ++pos;
          return v;
        }
        fail(source, line, "expected ',' or ']' in array");
      }
    }
    // Bare scalar: runs to whitespace, comma, bracket or comment.
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] != ' ' && text[pos] != '\t' &&
           text[pos] != ',' && text[pos] != ']' && text[pos] != '#') {
      ++pos;
    }
    if (pos == start) fail(source, line, "missing value");
    return parse_scalar_token(text.substr(start, pos - start));
  }
};

}  // namespace

double Value::as_double() const {
  if (type == Type::Float) return real;
  if (type == Type::Integer) return static_cast<double>(integer);
  throw ConfigError("toml-type", "expected a number");
}

std::int64_t Value::as_int() const {
  if (type == Type::Integer) return integer;
  throw ConfigError("toml-type", "expected an integer");
}

const std::string& Value::as_string() const {
  if (type == Type::String) return str;
  throw ConfigError("toml-type", "expected a string");
}

bool Value::as_bool() const {
  if (type == Type::Boolean) return boolean;
  throw ConfigError("toml-type", "expected a boolean");
}

const Value* Table::find(std::string_view section,
                         std::string_view key) const {
  const auto sec = data_.find(std::string(section));
  if (sec == data_.end()) return nullptr;
  const auto val = sec->second.find(std::string(key));
  return val == sec->second.end() ? nullptr : &val->second;
}

bool Table::has(std::string_view section, std::string_view key) const {
  return find(section, key) != nullptr;
}

std::string Table::get_string(std::string_view section, std::string_view key,
                              std::string fallback) const {
  const Value* v = find(section, key);
  if (!v) return fallback;
  try {
    return v->as_string();
  } catch (const ConfigError&) {
    throw ConfigError("toml-type", "[" + std::string(section) + "] " +
                                       std::string(key) + " must be a string");
  }
}

std::int64_t Table::get_int(std::string_view section, std::string_view key,
                            std::int64_t fallback) const {
  const Value* v = find(section, key);
  if (!v) return fallback;
  try {
    return v->as_int();
  } catch (const ConfigError&) {
    throw ConfigError("toml-type", "[" + std::string(section) + "] " +
                                       std::string(key) +
                                       " must be an integer");
  }
}

double Table::get_double(std::string_view section, std::string_view key,
                         double fallback) const {
  const Value* v = find(section, key);
  if (!v) return fallback;
  try {
    return v->as_double();
  } catch (const ConfigError&) {
    throw ConfigError("toml-type", "[" + std::string(section) + "] " +
                                       std::string(key) + " must be a number");
  }
}

bool Table::get_bool(std::string_view section, std::string_view key,
                     bool fallback) const {
  const Value* v = find(section, key);
  if (!v) return fallback;
  try {
    return v->as_bool();
  } catch (const ConfigError&) {
    throw ConfigError("toml-type", "[" + std::string(section) + "] " +
                                       std::string(key) + " must be a boolean");
  }
}

std::vector<std::int64_t> Table::get_int_array(std::string_view section,
                                               std::string_view key) const {
  const Value* v = find(section, key);
  if (!v) return {};
  if (v->type != Value::Type::Array) {
    throw ConfigError("toml-type", "[" + std::string(section) + "] " +
                                       std::string(key) + " must be an array");
  }
  std::vector<std::int64_t> out;
  out.reserve(v->array.size());
  for (const Value& e : v->array) out.push_back(e.as_int());
  return out;
}

std::vector<double> Table::get_double_array(std::string_view section,
                                            std::string_view key) const {
  const Value* v = find(section, key);
  if (!v) return {};
  if (v->type != Value::Type::Array) {
    throw ConfigError("toml-type", "[" + std::string(section) + "] " +
                                       std::string(key) + " must be an array");
  }
  std::vector<double> out;
  out.reserve(v->array.size());
  for (const Value& e : v->array) out.push_back(e.as_double());
  return out;
}

std::vector<std::string> Table::get_string_array(std::string_view section,
                                                 std::string_view key) const {
  const Value* v = find(section, key);
  if (!v) return {};
  if (v->type != Value::Type::Array) {
    throw ConfigError("toml-type", "[" + std::string(section) + "] " +
                                       std::string(key) + " must be an array");
  }
  std::vector<std::string> out;
  out.reserve(v->array.size());
  for (const Value& e : v->array) out.push_back(e.as_string());
  return out;
}

std::vector<std::string> Table::sections() const { return section_order_; }

std::vector<std::string> Table::sections_with_prefix(
    std::string_view prefix) const {
  std::vector<std::string> out;
  for (const std::string& s : section_order_) {
    if (s.size() > prefix.size() && s.compare(0, prefix.size(), prefix) == 0) {
      out.push_back(s);
    }
  }
  return out;
}

void Table::set(const std::string& section, const std::string& key,
                Value value, const std::string& where) {
  auto [sec, fresh] = data_.try_emplace(section);
  if (fresh) section_order_.push_back(section);
  if (!sec->second.emplace(key, std::move(value)).second) {
    throw ConfigError("toml-parse",
                      where + ": duplicate key '" + key + "' in [" + section +
                          "]");
  }
}

Table parse(std::string_view text, const std::string& source_name) {
  Table table;
  std::string section;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  std::vector<std::string> seen_sections;
  while (begin <= text.size()) {
    const std::size_t end = text.find('\n', begin);
    std::string_view raw = text.substr(
        begin, end == std::string_view::npos ? text.size() - begin
                                             : end - begin);
    begin = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    LineParser lp{raw, 0, source_name, line_no};
    if (lp.at_end()) continue;

    if (lp.peek() == '[') {
      ++lp.pos;
      const std::size_t start = lp.pos;
      while (lp.pos < raw.size() && is_section_char(raw[lp.pos])) ++lp.pos;
      if (lp.pos == start || lp.pos >= raw.size() || raw[lp.pos] != ']') {
        fail(source_name, line_no, "malformed section header");
      }
      section = std::string(raw.substr(start, lp.pos - start));
      ++lp.pos;
      if (!lp.at_end()) {
        fail(source_name, line_no, "trailing content after section header");
      }
      if (std::find(seen_sections.begin(), seen_sections.end(), section) !=
          seen_sections.end()) {
        fail(source_name, line_no, "section [" + section + "] reopened");
      }
      seen_sections.push_back(section);
      continue;
    }

    const std::size_t key_start = lp.pos;
    while (lp.pos < raw.size() && is_bare_char(raw[lp.pos])) ++lp.pos;
    if (lp.pos == key_start) {
      fail(source_name, line_no, "expected a key");
    }
    const std::string key(raw.substr(key_start, lp.pos - key_start));
    lp.skip_ws();
    if (lp.pos >= raw.size() || raw[lp.pos] != '=') {
      fail(source_name, line_no, "expected '=' after key '" + key + "'");
    }
    ++lp.pos;
    Value value = lp.parse_value();
    if (!lp.at_end()) {
      fail(source_name, line_no, "trailing content after value");
    }
    table.set(section, key, std::move(value),
              source_name + ":" + std::to_string(line_no));
  }
  return table;
}

Table parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("missing-file", "cannot open config file " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

}  // namespace raterlens::toml
