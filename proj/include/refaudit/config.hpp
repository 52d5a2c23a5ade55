#pragma once

// Reader for the small TOML subset used by generator configs: [table] and
// [dotted.table] headers, bare keys, and integer / float / boolean / basic
// string / flat numeric-array values. Anything else is a ConfigError.

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace refaudit {

using ConfigValue = std::variant<std::int64_t, double, bool, std::string, std::vector<double>>;

// Flattened "table.key" -> value, in key order.
using ConfigTable = std::map<std::string, ConfigValue>;

ConfigTable parse_config(std::istream& in);
ConfigTable parse_config(const std::string& text);

}  // namespace refaudit
