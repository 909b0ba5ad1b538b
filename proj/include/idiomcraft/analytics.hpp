#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "idiomcraft/corpus.hpp"
#include "idiomcraft/lexical.hpp"
#include "idiomcraft/matcher.hpp"
#include "idiomcraft/scoring.hpp"
#include "idiomcraft/state.hpp"

namespace idiomcraft {

/// Exact fraction; den is never zero.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Ratio& o) const { return num * o.den == o.num * den; }
};

struct DayStats {
  std::string date;
  std::string idiom_id;
  int idiomatic_count = 0;
  int nonidiomatic_count = 0;
  int total = 0;
  int likes = 0;
  int dislikes = 0;
  int reports = 0;
  Ratio avg_reviews_per_submission;  // 0 for an empty day
  Ratio dislike_pct;                 // percent, over likes + dislikes
  TypeCounts type_counts;
  std::map<int, int> review_histogram;  // review count -> submissions
  std::array<int, 24> hourly_interactions{};

  /// Everything a corpus export can carry, i.e. all but hourly_interactions.
  bool same_corpus_fields(const DayStats& o) const;
};

/// Throws UnknownDay. Excluded submissions and reviews by banned players are left out.
DayStats day_stats(const GameState& state, const std::string& date);

/// Same statistics recomputed from exported records (excluded ones are skipped).
DayStats day_stats_from_corpus(const std::vector<CorpusRecord>& records, const std::string& date);

std::vector<DayStats> all_day_stats(const GameState& state);

struct CandidateSentence {
  std::string sentence;
  bool matched = false;
  std::optional<IdiomMatch> match;
};

/// Sentences containing every constituent lemma, in input order.
std::vector<CandidateSentence> find_candidate_sentences(const std::vector<std::string>& corpus,
                                                        const IdiomPattern& pattern,
                                                        const LemmaDictionary& dict);

std::string stats_csv(const std::vector<DayStats>& stats, const std::map<std::string, IdiomPattern>& idioms);
std::string histogram_csv(const std::vector<DayStats>& stats);
std::string csv_escape(const std::string& cell);

}  // namespace idiomcraft
