#include "refaudit/entropy.hpp"

#include <algorithm>

#include "refaudit/error.hpp"

namespace refaudit {

double shannon_entropy(const std::map<std::string, std::int64_t>& counts, LogBase base) {
  if (counts.empty()) throw PreconditionError("shannon_entropy: empty category map");
  std::int64_t total = 0;
  for (const auto& [category, count] : counts) {
    if (count <= 0) throw PreconditionError("shannon_entropy: non-positive count for '" + category + "'");
    total += count;
  }
  if (counts.size() == 1) return 0.0;
  const double upper = base.log(static_cast<double>(counts.size()));
  const auto first = counts.begin()->second;
  if (std::all_of(counts.begin(), counts.end(), [&](const auto& kv) { return kv.second == first; })) return upper;
  // H = log N - (1/N) sum c log c.
  const double n = static_cast<double>(total);
  double weighted = 0.0;
  for (const auto& [category, count] : counts) {
    const double c = static_cast<double>(count);
    weighted += c * base.log(c);
  }
  const double h = base.log(n) - weighted / n;
  return std::clamp(h, 0.0, upper);
}

}  // namespace refaudit
