#pragma once

#include <optional>
#include <set>
#include <string>

namespace graft {

// One row of a genealogical dump, exactly as read. Empty name fields are
// empty strings; absent parent links are std::nullopt.
struct RawProfile {
  std::string id;
  std::string forename;
  std::string surname;
  std::optional<std::string> father_id;
  std::optional<std::string> mother_id;

  friend bool operator==(const RawProfile&, const RawProfile&) = default;
};

// A profile after name cleaning. A name field is absent when nothing usable
// survived normalization.
struct ProfileRecord {
  std::string id;
  std::optional<std::string> forename;
  std::optional<std::string> surname;
  std::optional<std::string> father_id;
  std::optional<std::string> mother_id;

  friend bool operator==(const ProfileRecord&, const ProfileRecord&) = default;
};

// Known synonyms of one query name. `synonyms` never contains `query`.
struct GroundTruthEntry {
  std::string query;
  std::set<std::string> synonyms;

  friend bool operator==(const GroundTruthEntry&,
                         const GroundTruthEntry&) = default;
};

}  // namespace graft
