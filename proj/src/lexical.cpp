#include "idiomcraft/lexical.hpp"

#include <fstream>
#include <sstream>

#include "idiomcraft/error.hpp"
#include "idiomcraft/unicode.hpp"

namespace idiomcraft {

namespace {

const std::set<std::string> kNoLemmas;

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

LemmaDictionary LemmaDictionary::from_file(const std::filesystem::path& path,
                                           std::string language) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::DictionaryFormat, "cannot open lemma dictionary " + path.string());
  std::ostringstream content;
  content << in.rdbuf();
  LemmaDictionary dict(std::move(language));
  dict.load(content.str());
  return dict;
}

void LemmaDictionary::load(std::string_view content) {
  std::size_t line_no = 0;
  for (auto line : split(content, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto trimmed = unicode::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      fail(ErrorCode::DictionaryFormat,
           "line " + std::to_string(line_no) + ": expected surface<TAB>lemmas");
    }
    const auto surface = unicode::trim(line.substr(0, tab));
    if (surface.empty()) {
      fail(ErrorCode::DictionaryFormat, "line " + std::to_string(line_no) + ": empty surface");
    }
    for (auto lemma : split(line.substr(tab + 1), ',')) {
      const auto cleaned = unicode::trim(lemma);
      if (!cleaned.empty()) add(surface, cleaned);
    }
  }
}

void LemmaDictionary::add(std::string_view surface, std::string_view lemma) {
  entries_[unicode::to_lower(surface, language_)].insert(unicode::to_lower(lemma, language_));
}

const std::set<std::string>& LemmaDictionary::lookup(std::string_view surface) const {
  const auto it = entries_.find(unicode::to_lower(surface, language_));
  return it == entries_.end() ? kNoLemmas : it->second;
}

std::vector<Token> tokenize(std::string_view text) {
  if (unicode::trim(text).empty()) fail(ErrorCode::EmptyText, "submission text is blank");

  std::vector<Token> tokens;
  std::size_t word_start = std::string_view::npos;
  const auto close_word = [&](std::size_t end) {
    if (word_start == std::string_view::npos) return;
    tokens.push_back(Token{std::string(text.substr(word_start, end - word_start)),
                           tokens.size(), word_start, end, false});
    word_start = std::string_view::npos;
  };

  for (std::size_t i = 0; i < text.size();) {
    const auto d = unicode::decode(text, i);
    if (unicode::is_space(d.code_point)) {
      close_word(i);
    } else if (unicode::is_punct(d.code_point)) {
      close_word(i);
      tokens.push_back(Token{std::string(text.substr(i, d.length)), tokens.size(), i,
                             i + d.length, true});
    } else if (word_start == std::string_view::npos) {
      word_start = i;
    }
    i += d.length;
  }
  close_word(text.size());
  return tokens;
}

LemmaSet lemma_candidates(std::string_view surface, const LemmaDictionary& dict) {
  LemmaSet out = dict.lookup(surface);
  out.insert(unicode::to_lower(surface, dict.language()));
  return out;
}

LemmaSet lemma_candidates(const Token& token, const LemmaDictionary& dict) {
  return lemma_candidates(token.surface, dict);
}

std::vector<LemmaSet> lemmatize(const std::vector<Token>& tokens, const LemmaDictionary& dict) {
  std::vector<LemmaSet> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(lemma_candidates(t, dict));
  return out;
}

}  // namespace idiomcraft
