#pragma once

// Minimal flat TOML-style config reader: `key = value` lines, `#` comments,
// quoted strings, booleans, numbers, and one-dimensional numeric arrays.
// Enough for human-diffable experiment files; nothing nested.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sectorsec/errors.hpp"

namespace sectorsec {

struct ConfigValue {
  enum class Kind { String, Boolean, Number, Array };
  Kind kind = Kind::String;
  std::string text;           // String
  bool boolean = false;       // Boolean
  double number = 0.0;        // Number
  std::vector<double> array;  // Array
  int line = 0;               // 1-based source line, for diagnostics
};

using ConfigTable = std::map<std::string, ConfigValue>;

namespace detail {

inline std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

inline ConfigValue parse_value(const std::string& raw, int line, const std::string& key) {
  ConfigValue v;
  v.line = line;
  if (raw.empty()) throw ConfigError("line " + std::to_string(line) + ": missing value for '" + key + "'", {key});
  if (raw.front() == '"') {
    if (raw.size() < 2 || raw.back() != '"')
      throw ConfigError("line " + std::to_string(line) + ": unterminated string for '" + key + "'", {key});
    v.kind = ConfigValue::Kind::String;
    v.text = raw.substr(1, raw.size() - 2);
    return v;
  }
  if (raw.front() == '[') {
    if (raw.back() != ']')
      throw ConfigError("line " + std::to_string(line) + ": unterminated array for '" + key + "'", {key});
    v.kind = ConfigValue::Kind::Array;
    std::string body = raw.substr(1, raw.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) {
        if (v.array.empty() && trim(body).empty()) break;  // empty array "[]"
        throw ConfigError("line " + std::to_string(line) + ": empty array element for '" + key + "'", {key});
      }
      double x;
      if (!parse_number(item, x))
        throw ConfigError("line " + std::to_string(line) + ": non-numeric array element '" + item +
                              "' for '" + key + "'",
                          {key});
      v.array.push_back(x);
    }
    return v;
  }
  if (raw == "true" || raw == "false") {
    v.kind = ConfigValue::Kind::Boolean;
    v.boolean = raw == "true";
    return v;
  }
  double x;
  if (parse_number(raw, x)) {
    v.kind = ConfigValue::Kind::Number;
    v.number = x;
    return v;
  }
  throw ConfigError("line " + std::to_string(line) + ": cannot parse value '" + raw + "' for '" +
                        key + "' (strings need double quotes)",
                    {key});
}

// Strip a trailing comment, respecting quoted strings.
inline std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

}  // namespace detail

inline ConfigTable parse_config(std::istream& in) {
  ConfigTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = detail::trim(detail::strip_comment(line));
    if (body.empty()) continue;
    const size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value', got '" + body + "'");
    const std::string key = detail::trim(body.substr(0, eq));
    if (key.empty() || key.find_first_not_of(
                           "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-") !=
                           std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": invalid key '" + key + "'");
    if (table.count(key))
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'", {key});
    table[key] = detail::parse_value(detail::trim(body.substr(eq + 1)), lineno, key);
  }
  return table;
}

inline ConfigTable parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in);
}

}  // namespace sectorsec
