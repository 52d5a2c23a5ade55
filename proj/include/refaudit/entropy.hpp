#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>

namespace refaudit {

// Logarithm base used by every diversity index. Natural log unless configured.
struct LogBase {
  double value = std::numbers::e;

  static LogBase natural() { return {}; }
  double log(double x) const { return value == std::numbers::e ? std::log(x) : std::log(x) / std::log(value); }
};

// -sum p log p with p = count / total. Requires a non-empty map of positive
// counts; throws PreconditionError otherwise. Result lies in [0, log K].
double shannon_entropy(const std::map<std::string, std::int64_t>& counts, LogBase base = {});

}  // namespace refaudit
