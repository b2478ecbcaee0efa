#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace graft {

// Inclusive edit-distance interval [lo, hi].
struct EditDistanceRange {
  int lo = 1;
  int hi = 3;

  constexpr EditDistanceRange() = default;
  constexpr EditDistanceRange(int lo_, int hi_) : lo(lo_), hi(hi_) {
    if (lo < 0 || hi < lo) {
      throw std::invalid_argument("edit distance range requires 0 <= lo <= hi");
    }
  }

  constexpr bool contains(int d) const noexcept { return d >= lo && d <= hi; }
  constexpr bool contains(EditDistanceRange other) const noexcept {
    return other.lo >= lo && other.hi <= hi;
  }

  friend constexpr bool operator==(EditDistanceRange,
                                   EditDistanceRange) = default;
};

std::string to_string(EditDistanceRange range);

// Generic kernels over any code unit type. The name-level functions below
// run them on bytes for ASCII input and on decoded scalar values otherwise.

template <class CharT>
int levenshtein(std::basic_string_view<CharT> a,
                std::basic_string_view<CharT> b) {
  if (a.size() < b.size()) std::swap(a, b);
  thread_local std::vector<int> row;
  row.resize(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    int diag = row[0];
    row[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      int up = row[j];
      int cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
      diag = up;
    }
  }
  return row[b.size()];
}

// Restricted Damerau-Levenshtein (optimal string alignment): an adjacent
// transposition costs one, and no substring is edited twice.
template <class CharT>
int osa_distance(std::basic_string_view<CharT> a,
                 std::basic_string_view<CharT> b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  thread_local std::vector<int> rows;
  rows.assign(3 * (m + 1), 0);
  int* prev2 = rows.data();
  int* prev = prev2 + (m + 1);
  int* cur = prev + (m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      int cost = a[i - 1] == b[j - 1] ? 0 : 1;
      int best = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        best = std::min(best, prev2[j - 2] + 1);
      }
      cur[j] = best;
    }
    std::swap(prev2, prev);
    std::swap(prev, cur);
  }
  return prev[m];
}

// Jaro similarity with the Winkler prefix boost: common prefix capped at 4,
// scaling factor 0.1, applied unconditionally.
template <class CharT>
double jaro_winkler_similarity(std::basic_string_view<CharT> a,
                               std::basic_string_view<CharT> b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  const std::size_t window =
      std::max<std::size_t>(std::max(a.size(), b.size()) / 2, 1) - 1;
  thread_local std::vector<char> a_hit, b_hit;
  a_hit.assign(a.size(), 0);
  b_hit.assign(b.size(), 0);
  std::size_t matches = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t lo = i > window ? i - window : 0;
    std::size_t hi = std::min(i + window + 1, b.size());
    for (std::size_t j = lo; j < hi; ++j) {
      if (!b_hit[j] && a[i] == b[j]) {
        a_hit[i] = b_hit[j] = 1;
        ++matches;
        break;
      }
    }
  }
  if (matches == 0) return 0.0;
  std::size_t half_transpositions = 0;
  for (std::size_t i = 0, j = 0; i < a.size(); ++i) {
    if (!a_hit[i]) continue;
    while (!b_hit[j]) ++j;
    if (a[i] != b[j]) ++half_transpositions;
    ++j;
  }
  const double m = static_cast<double>(matches);
  const double t = static_cast<double>(half_transpositions / 2);
  const double jaro = (m / static_cast<double>(a.size()) +
                       m / static_cast<double>(b.size()) + (m - t) / m) /
                      3.0;
  std::size_t prefix = 0;
  const std::size_t limit = std::min<std::size_t>({4, a.size(), b.size()});
  while (prefix < limit && a[prefix] == b[prefix]) ++prefix;
  return jaro + static_cast<double>(prefix) * 0.1 * (1.0 - jaro);
}

// Name-level metrics over UTF-8 input, measured in Unicode scalar values.
int edit_distance(std::string_view a, std::string_view b);
int damerau_levenshtein(std::string_view a, std::string_view b);
double jaro_winkler(std::string_view a, std::string_view b);

enum class StringMetric { edit_distance, damerau, jaro_winkler };

// Accepts ed|edit_distance|levenshtein, dld|damerau, jw|jaro_winkler.
StringMetric parse_string_metric(std::string_view text);
std::string_view to_string(StringMetric metric);

}  // namespace graft
