#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graft/error.hpp"

namespace graft {

enum class PhoneticAlgorithm { soundex, metaphone, double_metaphone, nysiis, mra };

inline constexpr PhoneticAlgorithm kAllPhoneticAlgorithms[] = {
    PhoneticAlgorithm::soundex, PhoneticAlgorithm::metaphone,
    PhoneticAlgorithm::double_metaphone, PhoneticAlgorithm::nysiis,
    PhoneticAlgorithm::mra};

// Accepts soundex, metaphone, dmetaphone|double_metaphone, nysiis, mra.
PhoneticAlgorithm parse_phonetic_algorithm(std::string_view text);
std::string_view to_string(PhoneticAlgorithm algorithm);

struct PhoneticCode {
  std::string primary;
  std::optional<std::string> secondary;  // Double Metaphone only

  friend bool operator==(const PhoneticCode&, const PhoneticCode&) = default;
};

class UnencodableName : public Error {
 public:
  explicit UnencodableName(std::string_view name);
};

// Accent-folds to ASCII, uppercases and drops everything that is not A-Z.
std::string phonetic_letters(std::string_view name);

// Raw encoders. Input must already be uppercase A-Z (see phonetic_letters)
// and non-empty.
std::string soundex(std::string_view letters);
std::string metaphone(std::string_view letters);
PhoneticCode double_metaphone(std::string_view letters,
                              std::size_t max_length = 4);
std::string nysiis(std::string_view letters, std::size_t max_length = 6);
std::string mra_codex(std::string_view letters);

// Throws UnencodableName when the name has no letters left after folding.
PhoneticCode encode(std::string_view name, PhoneticAlgorithm algorithm);

// Buckets names by sound code. Double Metaphone names are filed under both
// codes. Immutable once built.
class CodeIndex {
 public:
  CodeIndex() = default;

  PhoneticAlgorithm algorithm() const noexcept { return algorithm_; }
  std::size_t bucket_count() const noexcept { return buckets_.size(); }
  std::size_t name_count() const noexcept { return name_count_; }
  std::size_t skipped() const noexcept { return skipped_; }
  bool empty() const noexcept { return buckets_.empty(); }

  // Sorted names filed under `code`; empty when the code is unknown.
  std::span<const std::string> bucket(std::string_view code) const;

  // Union of the buckets for every code of `code`, sorted and unique.
  std::vector<std::string> candidates(const PhoneticCode& code) const;

  const std::map<std::string, std::vector<std::string>, std::less<>>& buckets()
      const noexcept {
    return buckets_;
  }

 private:
  friend CodeIndex build_code_index(std::span<const std::string> names,
                                    PhoneticAlgorithm algorithm);

  PhoneticAlgorithm algorithm_ = PhoneticAlgorithm::soundex;
  std::map<std::string, std::vector<std::string>, std::less<>> buckets_;
  std::size_t name_count_ = 0;
  std::size_t skipped_ = 0;
};

CodeIndex build_code_index(std::span<const std::string> names,
                           PhoneticAlgorithm algorithm);

}  // namespace graft
