#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graft/error.hpp"
#include "graft/normalize.hpp"
#include "graft/profile.hpp"

namespace graft {

enum class TableFormat { tsv, csv };

// .csv selects CSV; anything else is read as TSV.
TableFormat format_from_extension(const std::filesystem::path& path);

class IngestError : public Error {
 public:
  enum class Kind {
    unreadable,
    empty_file,
    missing_column,
    malformed_row,
    duplicate_id,
  };

  IngestError(Kind kind, std::size_t line, const std::string& message);

  Kind kind() const noexcept { return kind_; }
  // 1-based line number, 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

// Profile tables carry a header naming the columns id, forename, surname,
// father_id and mother_id in any order; other columns are ignored. Empty
// parent fields become std::nullopt.
std::vector<RawProfile> read_profiles(std::istream& in, TableFormat format);
std::vector<RawProfile> load_profiles(
    const std::filesystem::path& path,
    std::optional<TableFormat> format = std::nullopt);

void write_profiles(std::ostream& out, std::span<const RawProfile> profiles,
                    TableFormat format);
void save_profiles(const std::filesystem::path& path,
                   std::span<const RawProfile> profiles,
                   std::optional<TableFormat> format = std::nullopt);

struct GroundTruth {
  std::vector<GroundTruthEntry> entries;  // sorted by query
  std::size_t dropped_self_pairs = 0;
  std::size_t dropped_unusable = 0;  // a side normalized to nothing
};

// Headerless two-column TSV, one `query<TAB>synonym` pair per line. Both
// names go through `config`, the same cleaning applied to profile names.
GroundTruth read_ground_truth(std::istream& in,
                              const NormalizationConfig& config = {});
GroundTruth load_ground_truth(const std::filesystem::path& path,
                              const NormalizationConfig& config = {});

void write_ground_truth(std::ostream& out,
                        std::span<const GroundTruthEntry> entries);
void save_ground_truth(const std::filesystem::path& path,
                       std::span<const GroundTruthEntry> entries);

}  // namespace graft
