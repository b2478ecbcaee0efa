#include "graft/strsim.hpp"

#include "graft/unicode.hpp"

namespace graft {
namespace {

template <class Fn>
auto dispatch(std::string_view a, std::string_view b, Fn&& fn) {
  if (unicode::is_ascii(a) && unicode::is_ascii(b)) return fn(a, b);
  const std::u32string wa = unicode::to_code_points(a);
  const std::u32string wb = unicode::to_code_points(b);
  return fn(std::u32string_view(wa), std::u32string_view(wb));
}

}  // namespace

std::string to_string(EditDistanceRange range) {
  return "[" + std::to_string(range.lo) + "," + std::to_string(range.hi) + "]";
}

int edit_distance(std::string_view a, std::string_view b) {
  return dispatch(a, b, [](auto x, auto y) { return levenshtein(x, y); });
}

int damerau_levenshtein(std::string_view a, std::string_view b) {
  return dispatch(a, b, [](auto x, auto y) { return osa_distance(x, y); });
}

double jaro_winkler(std::string_view a, std::string_view b) {
  return dispatch(a, b,
                  [](auto x, auto y) { return jaro_winkler_similarity(x, y); });
}

StringMetric parse_string_metric(std::string_view text) {
  if (text == "ed" || text == "edit_distance" || text == "levenshtein") {
    return StringMetric::edit_distance;
  }
  if (text == "dld" || text == "damerau" || text == "damerau_levenshtein") {
    return StringMetric::damerau;
  }
  if (text == "jw" || text == "jaro_winkler") return StringMetric::jaro_winkler;
  throw std::invalid_argument("unknown string metric '" + std::string(text) +
                              "'");
}

std::string_view to_string(StringMetric metric) {
  switch (metric) {
    case StringMetric::edit_distance: return "ed";
    case StringMetric::damerau: return "dld";
    case StringMetric::jaro_winkler: return "jw";
  }
  return "?";
}

}  // namespace graft
