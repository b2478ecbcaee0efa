#include "graft/ingest.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_set>

namespace graft {
namespace {

constexpr std::array<std::string_view, 5> kColumns = {
    "id", "forename", "surname", "father_id", "mother_id"};

std::string kind_label(IngestError::Kind kind) {
  switch (kind) {
    case IngestError::Kind::unreadable: return "unreadable input";
    case IngestError::Kind::empty_file: return "empty file";
    case IngestError::Kind::missing_column: return "missing column";
    case IngestError::Kind::malformed_row: return "malformed row";
    case IngestError::Kind::duplicate_id: return "duplicate id";
  }
  return "ingest error";
}

std::string format_message(IngestError::Kind kind, std::size_t line,
                           const std::string& message) {
  std::string out = kind_label(kind);
  if (line > 0) out += " at line " + std::to_string(line);
  return out + ": " + message;
}

void strip_line_ending(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

void strip_bom(std::string& line) {
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);
  }
}

std::vector<std::string> split_tsv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.emplace_back(line.substr(start));
      return fields;
    }
    fields.emplace_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

// RFC 4180 fields within a single physical line.
std::vector<std::string> split_csv(const std::string& line,
                                   std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (true) {
    field.clear();
    if (i < n && line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < n) {
        if (line[i] == '"') {
          if (i + 1 < n && line[i + 1] == '"') {
            field.push_back('"');
            i += 2;
          } else {
            ++i;
            closed = true;
            break;
          }
        } else {
          field.push_back(line[i++]);
        }
      }
      if (!closed) {
        throw IngestError(IngestError::Kind::malformed_row, line_no,
                          "unterminated quoted field");
      }
      if (i < n && line[i] != ',') {
        throw IngestError(IngestError::Kind::malformed_row, line_no,
                          "unexpected character after closing quote");
      }
    } else {
      while (i < n && line[i] != ',') field.push_back(line[i++]);
    }
    fields.push_back(field);
    if (i >= n) return fields;
    ++i;  // comma
  }
}

std::vector<std::string> split_fields(const std::string& line,
                                      TableFormat format, std::size_t line_no) {
  return format == TableFormat::csv ? split_csv(line, line_no)
                                    : split_tsv(line);
}

std::string trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

bool valid_key(std::string_view key) {
  return !key.empty() &&
         std::none_of(key.begin(), key.end(), [](unsigned char c) {
           return c <= 0x20 || c == 0x7F;
         });
}

std::optional<std::string> parent_key(const std::string& field,
                                      std::size_t line_no, const char* column) {
  std::string key = trim(field);
  if (key.empty()) return std::nullopt;
  if (!valid_key(key)) {
    throw IngestError(IngestError::Kind::malformed_row, line_no,
                      std::string("invalid ") + column + " '" + key + "'");
  }
  return key;
}

std::string quote_csv(const std::string& field) {
  bool needs = field.find_first_of(",\"\r\n") != std::string::npos ||
               (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!needs) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IngestError(IngestError::Kind::unreadable, 0,
                      "cannot open '" + path.string() + "'");
  }
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IngestError(IngestError::Kind::unreadable, 0,
                      "cannot write '" + path.string() + "'");
  }
  return out;
}

}  // namespace

IngestError::IngestError(Kind kind, std::size_t line,
                         const std::string& message)
    : Error(format_message(kind, line, message)), kind_(kind), line_(line) {}

TableFormat format_from_extension(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".csv" ? TableFormat::csv : TableFormat::tsv;
}

std::vector<RawProfile> read_profiles(std::istream& in, TableFormat format) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw IngestError(IngestError::Kind::empty_file, 0, "no header row");
  }
  ++line_no;
  strip_bom(line);
  strip_line_ending(line);

  std::array<std::size_t, kColumns.size()> column_of{};
  auto header = split_fields(line, format, line_no);
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
      auto it = std::find_if(header.begin(), header.end(),
                             [&](const std::string& h) {
                               return trim(h) == kColumns[c];
                             });
      if (it == header.end()) {
        throw IngestError(IngestError::Kind::missing_column, line_no,
                          std::string(kColumns[c]));
      }
      column_of[c] = static_cast<std::size_t>(it - header.begin());
    }
    const std::size_t expected = header.size();

    std::vector<RawProfile> profiles;
    std::unordered_set<std::string> seen;
    while (std::getline(in, line)) {
      ++line_no;
      strip_line_ending(line);
      if (line.empty()) continue;
      auto fields = split_fields(line, format, line_no);
      if (fields.size() != expected) {
        throw IngestError(IngestError::Kind::malformed_row, line_no,
                          "expected " + std::to_string(expected) +
                              " fields, found " +
                              std::to_string(fields.size()));
      }
      RawProfile p;
      p.id = trim(fields[column_of[0]]);
      if (!valid_key(p.id)) {
        throw IngestError(IngestError::Kind::malformed_row, line_no,
                          "invalid id '" + p.id + "'");
      }
      p.forename = std::move(fields[column_of[1]]);
      p.surname = std::move(fields[column_of[2]]);
      p.father_id = parent_key(fields[column_of[3]], line_no, "father_id");
      p.mother_id = parent_key(fields[column_of[4]], line_no, "mother_id");
      if (!seen.insert(p.id).second) {
        throw IngestError(IngestError::Kind::duplicate_id, line_no, p.id);
      }
      profiles.push_back(std::move(p));
    }
    return profiles;
}

std::vector<RawProfile> load_profiles(const std::filesystem::path& path,
                                      std::optional<TableFormat> format) {
  auto in = open_input(path);
  return read_profiles(in, format.value_or(format_from_extension(path)));
}

void write_profiles(std::ostream& out, std::span<const RawProfile> profiles,
                    TableFormat format) {
  const char sep = format == TableFormat::csv ? ',' : '\t';
  auto field = [&](const std::string& s) {
    return format == TableFormat::csv ? quote_csv(s) : s;
  };
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    if (c > 0) out << sep;
    out << kColumns[c];
  }
  out << '\n';
  for (const RawProfile& p : profiles) {
    out << field(p.id) << sep << field(p.forename) << sep
        << field(p.surname) << sep << field(p.father_id.value_or("")) << sep
        << field(p.mother_id.value_or("")) << '\n';
  }
}

void save_profiles(const std::filesystem::path& path,
                   std::span<const RawProfile> profiles,
                   std::optional<TableFormat> format) {
  auto out = open_output(path);
  write_profiles(out, profiles, format.value_or(format_from_extension(path)));
}

GroundTruth read_ground_truth(std::istream& in,
                              const NormalizationConfig& config) {
  GroundTruth truth;
  std::map<std::string, std::set<std::string>> grouped;
  std::string line;
  std::size_t line_no = 0;
  std::size_t pairs = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) strip_bom(line);
    strip_line_ending(line);
    if (trim(line).empty()) continue;
    auto fields = split_tsv(line);
    if (fields.size() != 2) {
      throw IngestError(IngestError::Kind::malformed_row, line_no,
                        "expected query<TAB>synonym, found " +
                            std::to_string(fields.size()) + " fields");
    }
    ++pairs;
    auto query = normalize_name(fields[0], config);
    auto synonym = normalize_name(fields[1], config);
    if (!query || !synonym) {
      ++truth.dropped_unusable;
      continue;
    }
    if (*query == *synonym) {
      ++truth.dropped_self_pairs;
      continue;
    }
    grouped[*query].insert(std::move(*synonym));
  }
  if (pairs == 0) {
    throw IngestError(IngestError::Kind::empty_file, 0,
                      "ground truth contains no pairs");
  }
  truth.entries.reserve(grouped.size());
  for (auto& [query, synonyms] : grouped) {
    truth.entries.push_back({query, std::move(synonyms)});
  }
  return truth;
}

GroundTruth load_ground_truth(const std::filesystem::path& path,
                              const NormalizationConfig& config) {
  auto in = open_input(path);
  return read_ground_truth(in, config);
}

void write_ground_truth(std::ostream& out,
                        std::span<const GroundTruthEntry> entries) {
  for (const auto& entry : entries) {
    for (const auto& synonym : entry.synonyms) {
      out << entry.query << '\t' << synonym << '\n';
    }
  }
}

void save_ground_truth(const std::filesystem::path& path,
                       std::span<const GroundTruthEntry> entries) {
  auto out = open_output(path);
  write_ground_truth(out, entries);
}

}  // namespace graft
