#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "idiomcraft/lexical.hpp"

namespace idiomcraft {

struct Constituent {
  std::string lemma;
  bool operator==(const Constituent&) const = default;
};

struct Wildcard {
  static constexpr int kDefaultCapacity = 2;
  int max_tokens = kDefaultCapacity;
  bool operator==(const Wildcard&) const = default;
};

using Slot = std::variant<Constituent, Wildcard>;

struct IdiomPattern {
  std::string id;
  std::string language;
  std::vector<Slot> slots;
  std::string gloss;          // idiomatic meaning
  std::string literal_gloss;
  bool ordered = true;        // constituents must appear in pattern order

  std::vector<std::string> constituent_lemmas() const;
  /// Pattern back in file syntax, e.g. "hold * tongue".
  std::string pattern_text() const;
  /// Human-facing form with wildcards shown as an ellipsis.
  std::string display_text() const;

  bool operator==(const IdiomPattern&) const = default;
};

/// Pattern grammar: space separated tokens; a constituent is a word without
/// punctuation, `*` is a wildcard of default capacity, `*N` has capacity N.
IdiomPattern parse_pattern(std::string_view source, std::string_view language);

/// One line of an idiom list: `id<TAB>pattern<TAB>literal gloss<TAB>idiomatic gloss`
/// with an optional fifth column `unordered`.
IdiomPattern parse_idiom_line(std::string_view line, std::string_view language);
std::vector<IdiomPattern> parse_idiom_list(std::string_view content, std::string_view language);
std::string format_idiom_line(const IdiomPattern& pattern);

struct IdiomMatch {
  std::vector<std::size_t> constituent_positions;
  std::size_t gap_tokens = 0;

  std::size_t span() const {
    return constituent_positions.back() - constituent_positions.front();
  }
  bool operator==(const IdiomMatch&) const = default;
};

enum class SampleType { A, B, C, D };

std::string_view to_string(SampleType type);
SampleType sample_type_from_string(std::string_view text);
inline constexpr std::size_t index_of(SampleType t) { return static_cast<std::size_t>(t); }
inline constexpr bool is_idiomatic(SampleType t) { return t == SampleType::A || t == SampleType::B; }

/// Finds constituents by lemma. Among all placements the one with minimal
/// span wins, then the leftmost, then the lexicographically smallest.
/// Punctuation tokens inside the span are neither gaps nor wildcard fill.
std::optional<IdiomMatch> locate(const std::vector<Token>& tokens,
                                 const std::vector<LemmaSet>& lemmas,
                                 const IdiomPattern& pattern);

/// Gap count for a fixed placement; positions must be strictly increasing.
std::size_t count_gap_tokens(const std::vector<Token>& tokens,
                             const std::vector<std::size_t>& positions,
                             const IdiomPattern& pattern);

SampleType classify(const IdiomMatch& match, bool idiomatic);

}  // namespace idiomcraft
