#pragma once
// Jaro-Winkler string similarity (prefix scale 0.1, max prefix length 4).

#include <algorithm>
#include <string_view>
#include <vector>

namespace genlink {

inline double jaro(std::string_view s1, std::string_view s2) {
  if (s1 == s2) return 1.0;
  if (s1.empty() || s2.empty()) return 0.0;
  const size_t len1 = s1.size(), len2 = s2.size();
  const size_t window = std::max(len1, len2) / 2 >= 1 ? std::max(len1, len2) / 2 - 1 : 0;

  std::vector<bool> used1(len1, false), used2(len2, false);
  size_t matches = 0;
  for (size_t i = 0; i < len1; ++i) {
    size_t lo = i > window ? i - window : 0;
    size_t hi = std::min(len2, i + window + 1);
    for (size_t j = lo; j < hi; ++j) {
      if (!used2[j] && s1[i] == s2[j]) {
        used1[i] = used2[j] = true;
        ++matches;
        break;
      }
    }
  }
  if (matches == 0) return 0.0;

  size_t transpositions = 0, k = 0;
  for (size_t i = 0; i < len1; ++i) {
    if (!used1[i]) continue;
    while (!used2[k]) ++k;
    if (s1[i] != s2[k]) ++transpositions;
    ++k;
  }
  const double m = static_cast<double>(matches);
  const double t = static_cast<double>(transpositions) / 2.0;
  return (m / len1 + m / len2 + (m - t) / m) / 3.0;
}

inline double jaro_winkler(std::string_view s1, std::string_view s2) {
  const double j = jaro(s1, s2);
  size_t prefix = 0;
  const size_t limit = std::min({s1.size(), s2.size(), size_t{4}});
  while (prefix < limit && s1[prefix] == s2[prefix]) ++prefix;
  return j + static_cast<double>(prefix) * 0.1 * (1.0 - j);
}

}  // namespace genlink
