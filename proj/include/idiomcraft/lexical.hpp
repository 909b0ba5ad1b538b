#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace idiomcraft {

struct Token {
  std::string surface;
  std::size_t index = 0;
  std::size_t begin = 0;  // byte offsets into the source text
  std::size_t end = 0;
  bool punct = false;     // a single punctuation mark

  bool operator==(const Token&) const = default;
};

/// Candidate lemmas for one token, sorted. Never empty.
using LemmaSet = std::set<std::string>;

/// Surface form -> lemma candidates, keyed by the lowercased surface.
class LemmaDictionary {
 public:
  LemmaDictionary() = default;
  explicit LemmaDictionary(std::string language) : language_(std::move(language)) {}

  static LemmaDictionary from_file(const std::filesystem::path& path, std::string language);

  /// Parses `surface<TAB>lemma1,lemma2,...` lines; `#` lines are comments.
  /// Loading the same content twice leaves the dictionary unchanged.
  void load(std::string_view content);
  void add(std::string_view surface, std::string_view lemma);

  const std::string& language() const { return language_; }
  std::size_t size() const { return entries_.size(); }

  /// Lemmas listed for `surface` (case-insensitive); empty if unknown.
  const std::set<std::string>& lookup(std::string_view surface) const;

 private:
  std::string language_;
  std::map<std::string, std::set<std::string>, std::less<>> entries_;
};

/// Splits on Unicode whitespace; every punctuation mark is its own token.
/// Throws GameError(EmptyText) when the input is blank.
std::vector<Token> tokenize(std::string_view text);

/// Dictionary candidates plus the lowercased surface form.
LemmaSet lemma_candidates(const Token& token, const LemmaDictionary& dict);
LemmaSet lemma_candidates(std::string_view surface, const LemmaDictionary& dict);

std::vector<LemmaSet> lemmatize(const std::vector<Token>& tokens, const LemmaDictionary& dict);

}  // namespace idiomcraft
