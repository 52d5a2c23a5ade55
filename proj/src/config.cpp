#include "refaudit/config.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>

#include "refaudit/error.hpp"

namespace refaudit {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool is_bare_key(std::string_view key) {
  if (key.empty()) return false;
  for (char c : key) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  }
  return true;
}

bool is_dotted_key(std::string_view key) {
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    if (!is_bare_key(key.substr(start, dot == std::string_view::npos ? dot : dot - start))) return false;
    if (dot == std::string_view::npos) return true;
    start = dot + 1;
  }
}

// Drops a trailing comment that is not inside a string.
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_string && c == '\\') {
      ++i;
    } else if (c == '"') {
      in_string = !in_string;
    } else if (c == '#' && !in_string) {
      return line.substr(0, i);
    }
  }
  return line;
}

std::optional<double> parse_number(std::string text, bool& integral) {
  std::erase(text, '_');
  if (text.empty()) return std::nullopt;
  integral = text.find_first_of(".eE") == std::string::npos && text != "inf" && text != "nan";
  if (text == "inf" || text == "+inf" || text == "-inf" || text.find("nan") != std::string::npos) return std::nullopt;
  const char* first = text.data() + (text.front() == '+' ? 1 : 0);
  const char* last = text.data() + text.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

ConfigValue parse_value(const std::string& raw, std::size_t line) {
  const auto text = trim(raw);
  if (text.empty()) fail(line, "missing value");
  if (text == "true") return true;
  if (text == "false") return false;
  if (text.front() == '"') {
    if (text.size() < 2 || text.back() != '"') fail(line, "unterminated string");
    std::string out;
    for (std::size_t i = 1; i + 1 < text.size(); ++i) {
      char c = text[i];
      if (c == '\\') {
        if (i + 2 >= text.size()) fail(line, "dangling escape");
        switch (text[++i]) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail(line, "unsupported escape");
        }
      } else if (c == '"') {
        fail(line, "unexpected quote in string");
      }
      out.push_back(c);
    }
    return out;
  }
  if (text.front() == '[') {
    if (text.back() != ']') fail(line, "arrays must close on the same line");
    std::vector<double> values;
    std::stringstream items(text.substr(1, text.size() - 2));
    std::string item;
    while (std::getline(items, item, ',')) {
      item = trim(item);
      if (item.empty()) {
        if (items.eof()) break;  // trailing comma
        fail(line, "empty array element");
      }
      bool integral = false;
      const auto v = parse_number(item, integral);
      if (!v) fail(line, "arrays may only hold numbers, got '" + item + "'");
      values.push_back(*v);
    }
    return values;
  }
  bool integral = false;
  const auto v = parse_number(text, integral);
  if (!v) fail(line, "cannot parse value '" + text + "'");
  if (integral) {
    std::int64_t i = 0;
    std::string digits = text;
    std::erase(digits, '_');
    const char* first = digits.data() + (digits.front() == '+' ? 1 : 0);
    auto [ptr, ec] = std::from_chars(first, digits.data() + digits.size(), i);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) fail(line, "integer out of range");
    return i;
  }
  return *v;
}

}  // namespace

ConfigTable parse_config(std::istream& in) {
  ConfigTable table;
  std::string prefix;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = trim(strip_comment(line));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']' || text.starts_with("[[")) fail(lineno, "malformed table header");
      const auto name = trim(std::string_view(text).substr(1, text.size() - 2));
      if (!is_dotted_key(name)) fail(lineno, "invalid table name '" + name + "'");
      prefix = name + ".";
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail(lineno, "expected key = value");
    const auto key = trim(std::string_view(text).substr(0, eq));
    if (!is_dotted_key(key)) fail(lineno, "invalid key '" + key + "'");
    const auto full = prefix + key;
    if (table.contains(full)) fail(lineno, "duplicate key '" + full + "'");
    table.emplace(full, parse_value(text.substr(eq + 1), lineno));
  }
  return table;
}

ConfigTable parse_config(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

}  // namespace refaudit
