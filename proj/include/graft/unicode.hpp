#pragma once

#include <cstddef>
#include <string>
#include <string_view>

// Thin wrappers around ICU for the handful of Unicode operations the
// pipeline needs. All strings are UTF-8 on the way in and out.
namespace graft::unicode {

bool is_ascii(std::string_view s) noexcept;

// Decodes UTF-8 into Unicode scalar values. Ill-formed sequences decode to
// U+FFFD, one per maximal ill-formed subpart.
std::u32string to_code_points(std::string_view utf8);

std::size_t code_point_count(std::string_view utf8);

// Canonical composition (NFC).
std::string nfc(std::string_view utf8);

// Full Unicode lowercase mapping using the root locale, followed by NFC.
std::string to_lower(std::string_view utf8);

// Folds accented Latin letters to their ASCII base (é -> e, ß -> ss,
// ø -> o). Characters without an ASCII rendering are left in place.
std::string fold_to_ascii(std::string_view utf8);

bool is_whitespace(char32_t cp) noexcept;
bool is_punctuation(char32_t cp) noexcept;

}  // namespace graft::unicode
