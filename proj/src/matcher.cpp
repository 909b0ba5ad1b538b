#include "idiomcraft/matcher.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "idiomcraft/error.hpp"
#include "idiomcraft/unicode.hpp"

namespace idiomcraft {

namespace {

constexpr int kMaxWildcardCapacity = 10;

std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && unicode::is_space(unicode::decode(text, i).code_point)) {
      i += unicode::decode(text, i).length;
    }
    const std::size_t start = i;
    while (i < text.size() && !unicode::is_space(unicode::decode(text, i).code_point)) {
      i += unicode::decode(text, i).length;
    }
    if (i > start) parts.push_back(text.substr(start, i - start));
  }
  return parts;
}

bool has_punct(std::string_view word) {
  for (std::size_t i = 0; i < word.size();) {
    const auto d = unicode::decode(word, i);
    if (unicode::is_punct(d.code_point)) return true;
    i += d.length;
  }
  return false;
}

using Key = std::pair<std::size_t, std::vector<std::size_t>>;  // (span, positions)

std::optional<std::vector<std::size_t>> greedy_from(const std::vector<LemmaSet>& lemmas,
                                                    const std::vector<std::string>& order,
                                                    std::size_t start) {
  std::vector<std::size_t> positions{start};
  std::size_t pos = start;
  for (std::size_t j = 1; j < order.size(); ++j) {
    std::size_t q = pos + 1;
    while (q < lemmas.size() && !lemmas[q].contains(order[j])) ++q;
    if (q == lemmas.size()) return std::nullopt;
    positions.push_back(q);
    pos = q;
  }
  return positions;
}

std::optional<std::vector<std::size_t>> best_placement(const std::vector<Token>& tokens,
                                                       const std::vector<LemmaSet>& lemmas,
                                                       const std::vector<std::string>& order) {
  std::optional<Key> best;
  for (std::size_t start = 0; start < tokens.size(); ++start) {
    if (tokens[start].punct || !lemmas[start].contains(order.front())) continue;
    auto placed = greedy_from(lemmas, order, start);
    if (!placed) break;  // later starts cannot succeed either
    Key key{placed->back() - placed->front(), *placed};
    if (!best || key < *best) best = std::move(key);
  }
  if (!best) return std::nullopt;
  return best->second;
}

}  // namespace

std::vector<std::string> IdiomPattern::constituent_lemmas() const {
  std::vector<std::string> out;
  for (const auto& slot : slots) {
    if (const auto* c = std::get_if<Constituent>(&slot)) out.push_back(c->lemma);
  }
  return out;
}

std::string IdiomPattern::pattern_text() const {
  std::string out;
  for (const auto& slot : slots) {
    if (!out.empty()) out += ' ';
    if (const auto* c = std::get_if<Constituent>(&slot)) {
      out += c->lemma;
    } else {
      const auto& w = std::get<Wildcard>(slot);
      out += '*';
      if (w.max_tokens != Wildcard::kDefaultCapacity) out += std::to_string(w.max_tokens);
    }
  }
  return out;
}

std::string IdiomPattern::display_text() const {
  std::string out;
  for (const auto& slot : slots) {
    if (!out.empty()) out += ' ';
    if (const auto* c = std::get_if<Constituent>(&slot)) {
      out += c->lemma;
    } else {
      out += "\u2026";
    }
  }
  return out;
}

IdiomPattern parse_pattern(std::string_view source, std::string_view language) {
  IdiomPattern pattern;
  pattern.language = std::string(language);
  const auto words = split_ws(source);
  for (const auto word : words) {
    if (word.front() == '*') {
      int capacity = Wildcard::kDefaultCapacity;
      if (word.size() > 1) {
        const auto digits = word.substr(1);
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), capacity);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || capacity < 1 ||
            capacity > kMaxWildcardCapacity) {
          fail(ErrorCode::PatternSyntax, "bad wildcard token '" + std::string(word) + "'");
        }
      }
      pattern.slots.emplace_back(Wildcard{capacity});
      continue;
    }
    if (has_punct(word)) {
      fail(ErrorCode::PatternSyntax, "constituent '" + std::string(word) + "' contains punctuation");
    }
    pattern.slots.emplace_back(Constituent{unicode::to_lower(word, language)});
  }
  if (std::holds_alternative<Wildcard>(pattern.slots.front()) ||
      std::holds_alternative<Wildcard>(pattern.slots.back())) {
    fail(ErrorCode::BadWildcardPosition, "wildcard at pattern edge: '" + std::string(source) + "'");
  }
  const auto constituents = std::count_if(pattern.slots.begin(), pattern.slots.end(), [](const Slot& s) {
    return std::holds_alternative<Constituent>(s);
  });
  if (constituents < 2) {
    fail(ErrorCode::TooFewConstituents, "an idiom needs at least two constituents: '" + std::string(source) + "'");
  }
  return pattern;
}

IdiomPattern parse_idiom_line(std::string_view line, std::string_view language) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> cols;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    cols.emplace_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  if (cols.size() < 4 || cols.size() > 5) {
    fail(ErrorCode::PatternSyntax,
         "idiom line needs id<TAB>pattern<TAB>literal gloss<TAB>idiomatic gloss");
  }
  const auto id = unicode::trim(cols[0]);
  if (id.empty()) fail(ErrorCode::PatternSyntax, "idiom line has an empty id");
  auto pattern = parse_pattern(cols[1], language);
  pattern.id = id;
  pattern.literal_gloss = unicode::trim(cols[2]);
  pattern.gloss = unicode::trim(cols[3]);
  if (cols.size() == 5) {
    const auto flag = unicode::trim(cols[4]);
    if (flag == "unordered") {
      pattern.ordered = false;
    } else if (!flag.empty() && flag != "ordered") {
      fail(ErrorCode::PatternSyntax, "unknown idiom flag '" + flag + "'");
    }
  }
  return pattern;
}

std::vector<IdiomPattern> parse_idiom_list(std::string_view content, std::string_view language) {
  std::vector<IdiomPattern> out;
  std::size_t start = 0;
  while (start <= content.size()) {
    const auto nl = content.find('\n', start);
    const auto line = content.substr(start, nl == std::string_view::npos ? nl : nl - start);
    const auto trimmed = unicode::trim(line);
    if (!trimmed.empty() && trimmed.front() != '#') out.push_back(parse_idiom_line(line, language));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

std::string format_idiom_line(const IdiomPattern& p) {
  std::string line = p.id + '\t' + p.pattern_text() + '\t' + p.literal_gloss + '\t' + p.gloss;
  if (!p.ordered) line += "\tunordered";
  return line;
}

std::string_view to_string(SampleType type) {
  switch (type) {
    case SampleType::A: return "A";
    case SampleType::B: return "B";
    case SampleType::C: return "C";
    case SampleType::D: return "D";
  }
  return "?";
}

SampleType sample_type_from_string(std::string_view text) {
  if (text == "A") return SampleType::A;
  if (text == "B") return SampleType::B;
  if (text == "C") return SampleType::C;
  if (text == "D") return SampleType::D;
  fail(ErrorCode::ValidationFailed, "unknown sample type '" + std::string(text) + "'");
}

std::size_t count_gap_tokens(const std::vector<Token>& tokens,
                             const std::vector<std::size_t>& positions,
                             const IdiomPattern& pattern) {
  const auto words_between = [&](std::size_t from, std::size_t to) {
    std::size_t n = 0;
    for (std::size_t i = from + 1; i < to; ++i) n += tokens[i].punct ? 0 : 1;
    return n;
  };

  if (!pattern.ordered) {
    std::size_t capacity = 0;
    for (const auto& slot : pattern.slots) {
      if (const auto* w = std::get_if<Wildcard>(&slot)) capacity += w->max_tokens;
    }
    std::size_t filler = words_between(positions.front(), positions.back()) - (positions.size() - 2);
    return filler > capacity ? filler - capacity : 0;
  }

  // capacity of the wildcards sitting between consecutive constituents
  std::vector<std::size_t> capacities;
  std::size_t pending = 0;
  bool seen_constituent = false;
  for (const auto& slot : pattern.slots) {
    if (const auto* w = std::get_if<Wildcard>(&slot)) {
      pending += w->max_tokens;
    } else {
      if (seen_constituent) capacities.push_back(pending);
      pending = 0;
      seen_constituent = true;
    }
  }
  std::size_t gap = 0;
  for (std::size_t j = 0; j + 1 < positions.size(); ++j) {
    const auto filler = words_between(positions[j], positions[j + 1]);
    if (filler > capacities[j]) gap += filler - capacities[j];
  }
  return gap;
}

std::optional<IdiomMatch> locate(const std::vector<Token>& tokens,
                                 const std::vector<LemmaSet>& lemmas,
                                 const IdiomPattern& pattern) {
  if (tokens.size() != lemmas.size()) {
    fail(ErrorCode::ValidationFailed, "tokens and lemma sets are not aligned");
  }
  auto order = pattern.constituent_lemmas();
  if (order.empty() || tokens.empty()) return std::nullopt;

  std::optional<std::vector<std::size_t>> best;
  if (pattern.ordered) {
    best = best_placement(tokens, lemmas, order);
  } else {
    std::optional<Key> best_key;
    std::vector<std::size_t> perm(order.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<std::string> permuted;
      for (auto i : perm) permuted.push_back(order[i]);
      if (auto placed = best_placement(tokens, lemmas, permuted)) {
        Key key{placed->back() - placed->front(), *placed};
        if (!best_key || key < *best_key) best_key = std::move(key);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (best_key) best = best_key->second;
  }
  if (!best) return std::nullopt;
  IdiomMatch match;
  match.constituent_positions = *best;
  match.gap_tokens = count_gap_tokens(tokens, match.constituent_positions, pattern);
  return match;
}

SampleType classify(const IdiomMatch& match, bool idiomatic) {
  const bool juxtaposed = match.gap_tokens == 0;
  if (idiomatic) return juxtaposed ? SampleType::A : SampleType::B;
  return juxtaposed ? SampleType::C : SampleType::D;
}

}  // namespace idiomcraft
