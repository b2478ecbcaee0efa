#include "graft/normalize.hpp"

#include <stdexcept>

#include <unicode/utf8.h>

#include "graft/unicode.hpp"

namespace graft {

std::set<std::string> default_prefixes() {
  return {"van", "de", "da", "der", "la", "le", "das", "dos", "dele", "du"};
}

std::set<std::string> default_honorifics() {
  return {"mr", "mrs", "ms", "dr", "jr", "sr", "prof"};
}

void NormalizationConfig::validate() const {
  if (min_name_length < 1) {
    throw std::invalid_argument("min_name_length must be at least 1");
  }
  auto check = [](const std::set<std::string>& list, const char* what) {
    for (const auto& token : list) {
      if (token.empty() || token != unicode::to_lower(token) ||
          token.find_first_of(" \t\r\n") != std::string::npos) {
        throw std::invalid_argument(std::string(what) + " entry '" + token +
                                    "' must be a lowercase trimmed token");
      }
    }
  };
  check(prefixes, "prefix");
  check(honorifics, "honorific");
}

NormalizationStats& NormalizationStats::operator+=(
    const NormalizationStats& other) {
  names_dropped += other.names_dropped;
  prefixes_stripped += other.prefixes_stripped;
  honorifics_stripped += other.honorifics_stripped;
  short_tokens_dropped += other.short_tokens_dropped;
  return *this;
}

namespace {

struct Span {
  int32_t begin;
  int32_t end;
};

// Splits on Unicode whitespace, returning byte ranges.
std::vector<Span> split_tokens(std::string_view s) {
  std::vector<Span> tokens;
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  const auto len = static_cast<int32_t>(s.size());
  int32_t i = 0;
  int32_t start = -1;
  while (i < len) {
    int32_t at = i;
    UChar32 c;
    U8_NEXT(p, i, len, c);
    bool space = c >= 0 && unicode::is_whitespace(static_cast<char32_t>(c));
    if (space) {
      if (start >= 0) tokens.push_back({start, at});
      start = -1;
    } else if (start < 0) {
      start = at;
    }
  }
  if (start >= 0) tokens.push_back({start, len});
  return tokens;
}

std::string_view trim_punctuation(std::string_view token) {
  const auto* p = reinterpret_cast<const uint8_t*>(token.data());
  int32_t begin = 0;
  auto end = static_cast<int32_t>(token.size());
  while (begin < end) {
    int32_t next = begin;
    UChar32 c;
    U8_NEXT(p, next, end, c);
    if (c < 0 || !unicode::is_punctuation(static_cast<char32_t>(c))) break;
    begin = next;
  }
  while (end > begin) {
    int32_t prev = end;
    UChar32 c;
    U8_PREV(p, begin, prev, c);
    if (c < 0 || !unicode::is_punctuation(static_cast<char32_t>(c))) break;
    end = prev;
  }
  return token.substr(static_cast<std::size_t>(begin),
                      static_cast<std::size_t>(end - begin));
}

std::optional<std::string> normalize_field(const std::string& raw,
                                           const NormalizationConfig& config,
                                           NormalizationStats& stats) {
  auto name = normalize_name(raw, config, stats);
  if (!name && !raw.empty()) ++stats.names_dropped;
  return name;
}

}  // namespace

std::optional<std::string> normalize_name(std::string_view raw,
                                          const NormalizationConfig& config) {
  NormalizationStats ignored;
  return normalize_name(raw, config, ignored);
}

std::optional<std::string> normalize_name(std::string_view raw,
                                          const NormalizationConfig& config,
                                          NormalizationStats& stats) {
  const std::string composed = unicode::nfc(raw);
  std::string out;
  for (Span span : split_tokens(composed)) {
    std::string_view token = trim_punctuation(std::string_view(composed).substr(
        static_cast<std::size_t>(span.begin),
        static_cast<std::size_t>(span.end - span.begin)));
    if (token.empty()) continue;
    std::string lowered = unicode::to_lower(token);
    if (config.honorifics.contains(lowered)) {
      ++stats.honorifics_stripped;
      continue;
    }
    if (config.prefixes.contains(lowered)) {
      ++stats.prefixes_stripped;
      continue;
    }
    if (unicode::code_point_count(lowered) < config.min_name_length) {
      ++stats.short_tokens_dropped;
      continue;
    }
    if (!out.empty()) out.push_back(' ');
    out += config.case_fold ? lowered : std::string(token);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

NormalizedProfiles normalize_profiles(std::span<const RawProfile> profiles,
                                      const NormalizationConfig& config) {
  NormalizedProfiles result;
  result.profiles.reserve(profiles.size());
  for (const RawProfile& raw : profiles) {
    ProfileRecord rec;
    rec.id = raw.id;
    rec.forename = normalize_field(raw.forename, config, result.stats);
    rec.surname = normalize_field(raw.surname, config, result.stats);
    rec.father_id = raw.father_id;
    rec.mother_id = raw.mother_id;
    result.profiles.push_back(std::move(rec));
  }
  return result;
}

}  // namespace graft
