#pragma once

#include <cstddef>
#include <string>
#include <string_view>

// Minimal UTF-8 utilities. Covers the scripts the shipped languages need
// (Latin incl. Turkish, Greek, Cyrillic); no normalization is performed.
namespace idiomcraft::unicode {

struct Decoded {
  char32_t code_point;
  std::size_t length;  // bytes consumed, >= 1
};

/// Decodes one code point at `offset`. Invalid sequences decode as U+FFFD
/// consuming a single byte so iteration always advances.
Decoded decode(std::string_view text, std::size_t offset);

void append_utf8(std::string& out, char32_t cp);

bool is_space(char32_t cp);
bool is_punct(char32_t cp);

/// Simple case mapping. `language` selects locale rules ("tr": I -> ı).
char32_t to_lower(char32_t cp, std::string_view language = {});
std::string to_lower(std::string_view text, std::string_view language = {});

std::string trim(std::string_view text);

}  // namespace idiomcraft::unicode
