#include "idiomcraft/analytics.hpp"

#include <sstream>

#include "idiomcraft/error.hpp"

namespace idiomcraft {

namespace {

struct Row {
  bool idiomatic;
  SampleType type;
  int likes;
  int dislikes;
  int reports;
};

void finish(DayStats& s, const std::vector<Row>& rows) {
  std::int64_t reviews = 0;
  for (const auto& r : rows) {
    ++s.total;
    (r.idiomatic ? s.idiomatic_count : s.nonidiomatic_count) += 1;
    s.type_counts.n[index_of(r.type)] += 1;
    s.likes += r.likes;
    s.dislikes += r.dislikes;
    s.reports += r.reports;
    reviews += r.likes + r.dislikes;
    s.review_histogram[r.likes + r.dislikes] += 1;
  }
  s.avg_reviews_per_submission = s.total ? Ratio{reviews, s.total} : Ratio{0, 1};
  const int verdicts = s.likes + s.dislikes;
  s.dislike_pct = verdicts ? Ratio{100LL * s.dislikes, verdicts} : Ratio{0, 1};
}

std::string format_ratio(const Ratio& r) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << r.value();
  return out.str();
}

}  // namespace

bool DayStats::same_corpus_fields(const DayStats& o) const {
  return date == o.date && idiom_id == o.idiom_id && idiomatic_count == o.idiomatic_count &&
         nonidiomatic_count == o.nonidiomatic_count && total == o.total && likes == o.likes &&
         dislikes == o.dislikes && reports == o.reports &&
         avg_reviews_per_submission == o.avg_reviews_per_submission && dislike_pct == o.dislike_pct &&
         type_counts.n == o.type_counts.n && review_histogram == o.review_histogram;
}

DayStats day_stats(const GameState& state, const std::string& date) {
  const auto day = state.days.find(date);
  if (day == state.days.end()) fail(ErrorCode::UnknownDay, "no game day " + date);
  DayStats s;
  s.date = date;
  s.idiom_id = day->second.idiom_id;
  std::vector<Row> rows;
  for (const auto id : day->second.submission_ids) {
    const auto* sub = state.find_submission(id);
    if (!sub || is_excluded(sub->status)) continue;
    rows.push_back({sub->idiomatic, sub->sample_type, sub->likes, sub->dislikes, sub->reports});
    s.hourly_interactions[clock::minute_of_day(sub->created_at) / 60] += 1;
  }
  for (const auto& r : state.reviews) {
    const auto* sub = state.find_submission(r.submission_id);
    if (!sub || sub->date != date || is_excluded(sub->status) || state.is_banned(r.reviewer)) continue;
    s.hourly_interactions[clock::minute_of_day(r.at) / 60] += 1;
  }
  finish(s, rows);
  return s;
}

DayStats day_stats_from_corpus(const std::vector<CorpusRecord>& records, const std::string& date) {
  DayStats s;
  s.date = date;
  std::vector<Row> rows;
  bool seen = false;
  for (const auto& r : records) {
    if (r.date != date) continue;
    if (!seen) s.idiom_id = r.idiom_id;
    seen = true;
    if (r.excluded) continue;
    rows.push_back({r.idiomatic, r.sample_type, r.likes, r.dislikes, r.reports});
  }
  if (!seen) fail(ErrorCode::UnknownDay, "no records for " + date);
  finish(s, rows);
  return s;
}

std::vector<DayStats> all_day_stats(const GameState& state) {
  std::vector<DayStats> out;
  for (const auto& [date, _] : state.days) out.push_back(day_stats(state, date));
  return out;
}

std::vector<CandidateSentence> find_candidate_sentences(const std::vector<std::string>& corpus,
                                                        const IdiomPattern& pattern,
                                                        const LemmaDictionary& dict) {
  std::vector<CandidateSentence> out;
  const auto wanted = pattern.constituent_lemmas();
  for (const auto& sentence : corpus) {
    std::vector<Token> tokens;
    try {
      tokens = tokenize(sentence);
    } catch (const GameError&) {
      continue;  // blank line
    }
    const auto lemmas = lemmatize(tokens, dict);
    bool all = true;
    for (const auto& w : wanted) {
      bool found = false;
      for (const auto& set : lemmas) found = found || set.count(w);
      if (!(all = found)) break;
    }
    if (!all) continue;
    auto match = locate(tokens, lemmas, pattern);
    out.push_back({sentence, match.has_value(), std::move(match)});
  }
  return out;
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (const char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string stats_csv(const std::vector<DayStats>& stats, const std::map<std::string, IdiomPattern>& idioms) {
  std::ostringstream out;
  out << "date,idiom_id,idiom,literal_gloss,idiomatic_gloss,idiomatic,nonidiomatic,total,avg_reviews,"
         "dislike_pct,A,B,C,D\n";
  for (const auto& s : stats) {
    const auto it = idioms.find(s.idiom_id);
    const IdiomPattern empty;
    const auto& p = it == idioms.end() ? empty : it->second;
    out << s.date << ',' << csv_escape(s.idiom_id) << ',' << csv_escape(p.display_text()) << ','
        << csv_escape(p.literal_gloss) << ',' << csv_escape(p.gloss) << ',' << s.idiomatic_count << ','
        << s.nonidiomatic_count << ',' << s.total << ',' << format_ratio(s.avg_reviews_per_submission) << ','
        << format_ratio(s.dislike_pct);
    for (const auto n : s.type_counts.n) out << ',' << n;
    out << '\n';
  }
  return out.str();
}

std::string histogram_csv(const std::vector<DayStats>& stats) {
  std::ostringstream out;
  out << "date,idiom_id,review_count,submissions\n";
  for (const auto& s : stats) {
    for (const auto& [reviews, subs] : s.review_histogram) {
      out << s.date << ',' << csv_escape(s.idiom_id) << ',' << reviews << ',' << subs << '\n';
    }
  }
  return out.str();
}

}  // namespace idiomcraft
