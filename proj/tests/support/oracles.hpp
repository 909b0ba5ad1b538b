#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "idiomcraft/lexical.hpp"
#include "idiomcraft/matcher.hpp"

namespace oracles {

using namespace idiomcraft;

/// Brute force: every strictly increasing position tuple whose lemmas fit the
/// constituents (in pattern order, or any order for unordered patterns);
/// minimal span first, then the lexicographically smallest tuple.
inline std::optional<IdiomMatch> locate_brute(const std::vector<Token>& tokens, const std::vector<LemmaSet>& lemmas,
                                              const IdiomPattern& pattern) {
  const auto words = pattern.constituent_lemmas();
  const std::size_t k = words.size();
  const std::size_t n = tokens.size();
  std::optional<std::vector<std::size_t>> best;

  const auto fits = [&](const std::vector<std::size_t>& pos) {
    std::vector<std::size_t> perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = i;
    do {
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) ok = lemmas[pos[i]].count(words[perm[i]]) > 0;
      if (ok) return true;
    } while (!pattern.ordered && std::next_permutation(perm.begin(), perm.end()));
    return false;
  };

  std::vector<std::size_t> pos(k);
  const auto recurse = [&](auto&& self, std::size_t depth, std::size_t from) -> void {
    if (depth == k) {
      if (!fits(pos)) return;
      if (!best || pos.back() - pos.front() < best->back() - best->front() ||
          (pos.back() - pos.front() == best->back() - best->front() && pos < *best)) {
        best = pos;
      }
      return;
    }
    for (std::size_t i = from; i < n; ++i) {
      pos[depth] = i;
      self(self, depth + 1, i + 1);
    }
  };
  recurse(recurse, 0, 0);
  if (!best) return std::nullopt;

  // gap: word tokens between neighbours beyond the wildcard capacity there
  std::size_t gap = 0;
  const auto words_between = [&](std::size_t a, std::size_t b) {
    std::size_t c = 0;
    for (std::size_t i = a + 1; i < b; ++i) c += tokens[i].punct ? 0 : 1;
    return c;
  };
  if (pattern.ordered) {
    std::size_t constituent = 0;
    std::size_t capacity = 0;
    for (const auto& slot : pattern.slots) {
      if (const auto* w = std::get_if<Wildcard>(&slot)) {
        capacity += static_cast<std::size_t>(w->max_tokens);
        continue;
      }
      if (constituent > 0) {
        const auto between = words_between((*best)[constituent - 1], (*best)[constituent]);
        gap += between > capacity ? between - capacity : 0;
      }
      capacity = 0;
      ++constituent;
    }
  } else {
    std::size_t capacity = 0;
    for (const auto& slot : pattern.slots) {
      if (const auto* w = std::get_if<Wildcard>(&slot)) capacity += static_cast<std::size_t>(w->max_tokens);
    }
    std::size_t filler = 0;
    for (std::size_t j = 0; j + 1 < k; ++j) filler += words_between((*best)[j], (*best)[j + 1]);
    gap = filler > capacity ? filler - capacity : 0;
  }
  return IdiomMatch{*best, gap};
}

struct Instance {
  std::vector<Token> tokens;
  std::vector<LemmaSet> lemmas;
  IdiomPattern pattern;
};

/// Small random instance: up to 12 tokens over a 5-word vocabulary with
/// commas, extra lemma candidates, and 2 or 3 constituents.
inline Instance random_instance(std::mt19937_64& rng, bool allow_unordered = true) {
  static const std::vector<std::string> vocab{"x", "y", "z", "w", "v", ","};
  Instance inst;
  const auto len = 1 + rng() % 12;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < len; ++i) {
    Token t;
    t.surface = vocab[rng() % vocab.size()];
    t.index = i;
    t.begin = offset;
    t.end = offset + t.surface.size();
    t.punct = t.surface == ",";
    offset = t.end + 1;
    LemmaSet set{t.surface};
    if (!t.punct && rng() % 4 == 0) set.insert(vocab[rng() % 3]);
    inst.tokens.push_back(t);
    inst.lemmas.push_back(set);
  }
  std::string source;
  const auto k = 2 + rng() % 2;
  for (std::size_t c = 0; c < k; ++c) {
    if (c > 0) {
      source += " ";
      if (rng() % 2) source += (rng() % 2 ? "* " : "*" + std::to_string(1 + rng() % 3) + " ");
    }
    source += vocab[rng() % 3];
  }
  inst.pattern = parse_pattern(source, "en");
  inst.pattern.ordered = !(allow_unordered && rng() % 5 == 0);
  return inst;
}

}  // namespace oracles
