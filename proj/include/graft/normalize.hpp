#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graft/profile.hpp"

namespace graft {

std::set<std::string> default_prefixes();
std::set<std::string> default_honorifics();

struct NormalizationConfig {
  std::size_t min_name_length = 2;
  std::set<std::string> prefixes = default_prefixes();
  std::set<std::string> honorifics = default_honorifics();
  bool case_fold = true;

  // Throws std::invalid_argument when min_name_length is 0 or a list entry
  // is empty, untrimmed or not lowercase.
  void validate() const;
};

struct NormalizationStats {
  std::size_t names_dropped = 0;
  std::size_t prefixes_stripped = 0;
  std::size_t honorifics_stripped = 0;
  std::size_t short_tokens_dropped = 0;

  NormalizationStats& operator+=(const NormalizationStats& other);
  friend bool operator==(const NormalizationStats&,
                         const NormalizationStats&) = default;
};

// Cleans one raw name. Tokens are split on whitespace and stripped of
// leading/trailing punctuation; honorifics, prepositional prefixes and
// tokens shorter than `min_name_length` code points are dropped. Returns
// std::nullopt when no token survives.
std::optional<std::string> normalize_name(std::string_view raw,
                                          const NormalizationConfig& config);
std::optional<std::string> normalize_name(std::string_view raw,
                                          const NormalizationConfig& config,
                                          NormalizationStats& stats);

struct NormalizedProfiles {
  std::vector<ProfileRecord> profiles;
  NormalizationStats stats;
};

// Normalizes forename and surname of every profile independently. Profiles
// are kept even when both names end up absent; parent links are copied.
NormalizedProfiles normalize_profiles(std::span<const RawProfile> profiles,
                                      const NormalizationConfig& config);

}  // namespace graft
