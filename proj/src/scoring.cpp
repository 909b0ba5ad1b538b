#include "idiomcraft/scoring.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "idiomcraft/error.hpp"

namespace idiomcraft {

Points TypeScores::of(SampleType t) const {
  switch (t) {
    case SampleType::A: return a;
    case SampleType::B: return b;
    case SampleType::C: return c;
    case SampleType::D: return d;
  }
  return 0;
}

std::string_view to_string(BalanceState s) {
  switch (s) {
    case BalanceState::Neutral: return "Neutral";
    case BalanceState::BoostNonidiomatic: return "BoostNonidiomatic";
    case BalanceState::BoostIdiomatic: return "BoostIdiomatic";
  }
  return "?";
}

BalanceState balance_state_from_string(std::string_view text) {
  if (text == "Neutral") return BalanceState::Neutral;
  if (text == "BoostNonidiomatic") return BalanceState::BoostNonidiomatic;
  if (text == "BoostIdiomatic") return BalanceState::BoostIdiomatic;
  fail(ErrorCode::ValidationFailed, "unknown balance state '" + std::string(text) + "'");
}

BalanceState update_balance(const TypeCounts& counts, BalanceState state,
                            const ScoringConfig& config) {
  const bool totals = config.compare == BalanceCompare::IdiomaticVersusNonidiomatic;
  const std::int64_t idio = totals ? counts.idiomatic() : counts[SampleType::A];
  const std::int64_t nonidio = totals ? counts.nonidiomatic() : counts[SampleType::C];
  const std::int64_t gap = idio - nonidio;

  const bool idio_leads = gap >= config.activate_gap;
  const bool nonidio_leads = -gap >= config.activate_gap;

  switch (state) {
    case BalanceState::Neutral:
      if (idio_leads) return BalanceState::BoostNonidiomatic;
      if (nonidio_leads) return BalanceState::BoostIdiomatic;
      return BalanceState::Neutral;
    case BalanceState::BoostNonidiomatic:
      if (std::abs(gap) < config.release_gap) return BalanceState::Neutral;
      if (nonidio_leads) return BalanceState::BoostIdiomatic;
      return state;
    case BalanceState::BoostIdiomatic:
      if (std::abs(gap) < config.release_gap) return BalanceState::Neutral;
      if (idio_leads) return BalanceState::BoostNonidiomatic;
      return state;
  }
  return state;
}

TypeScores effective_scores(BalanceState state, const ScoringConfig& config) {
  TypeScores s = config.base;
  if (state == BalanceState::BoostNonidiomatic) {
    s.c += config.boost_delta;
    s.d += config.boost_delta;
  } else if (state == BalanceState::BoostIdiomatic) {
    s.a += config.boost_delta;
    s.b += config.boost_delta;
  }
  return s;
}

std::string_view to_string(PointReason r) {
  return r == PointReason::Like ? "Like" : "Review";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Like: return "Like";
    case Verdict::Dislike: return "Dislike";
    case Verdict::Report: return "Report";
  }
  return "?";
}

Verdict verdict_from_string(std::string_view text) {
  if (text == "Like" || text == "like") return Verdict::Like;
  if (text == "Dislike" || text == "dislike") return Verdict::Dislike;
  if (text == "Report" || text == "report") return Verdict::Report;
  fail(ErrorCode::ValidationFailed, "unknown verdict '" + std::string(text) + "'");
}

std::optional<PointEvent> award_like(const LikeTarget& submission, const std::string& reviewer,
                                     Verdict verdict, std::int64_t at) {
  if (reviewer == submission.author) {
    fail(ErrorCode::SelfReview, "player " + reviewer + " cannot review their own submission");
  }
  if (verdict != Verdict::Like) return std::nullopt;
  PointEvent e;
  e.player = submission.author;
  e.date = submission.date;
  e.points = submission.score_snapshot;
  e.reason = PointReason::Like;
  e.submission_id = submission.submission_id;
  e.at = at;
  return e;
}

Points review_points(bool happy_hour_active, const ScoringConfig& config) {
  return happy_hour_active ? config.happy_hour_review_points : config.review_points;
}

Points review_points(Verdict verdict, bool happy_hour_active, const ScoringConfig& config) {
  if (verdict == Verdict::Report) return 0;
  return review_points(happy_hour_active, config);
}

int level_for(Points total_points, const ScoringConfig& config) {
  return 1 + static_cast<int>(std::max<Points>(total_points, 0) / config.level_divisor);
}

std::string_view to_string(AchievementId id) {
  switch (id) {
    case AchievementId::EarlyBird: return "EarlyBird";
    case AchievementId::Author: return "Author";
    case AchievementId::Reviewer: return "Reviewer";
    case AchievementId::Streak: return "Streak";
  }
  return "?";
}

AchievementId achievement_from_string(std::string_view text) {
  for (auto id : {AchievementId::EarlyBird, AchievementId::Author, AchievementId::Reviewer,
                  AchievementId::Streak}) {
    if (to_string(id) == text) return id;
  }
  fail(ErrorCode::ValidationFailed, "unknown achievement '" + std::string(text) + "'");
}

std::set<AchievementId> check_achievements(const PlayerDaySummary& s, const ScoringConfig& config) {
  std::set<AchievementId> unlocked;
  const auto maybe = [&](AchievementId id, bool condition) {
    if (condition && !s.unlocked_today.contains(id)) unlocked.insert(id);
  };
  maybe(AchievementId::Author, s.submissions_today >= config.author_threshold);
  maybe(AchievementId::Reviewer, s.reviews_today >= config.reviewer_threshold);
  maybe(AchievementId::EarlyBird,
        s.submission_minute && *s.submission_minute >= s.window_open_minute &&
            *s.submission_minute < s.window_open_minute + config.early_bird_minutes);
  if (!s.streak_unlocked && s.consecutive_active_days >= config.streak_days) {
    unlocked.insert(AchievementId::Streak);
  }
  return unlocked;
}

std::vector<PlayerScore> tally(const std::vector<PointEvent>& events, const std::string& date,
                               const ScoringConfig& config) {
  std::map<std::string, PlayerScore> by_player;
  for (const auto& e : events) {
    auto& score = by_player[e.player];
    score.player_id = e.player;
    score.total_points += e.points;
    if (e.date == date) score.day_points += e.points;
  }
  std::vector<PlayerScore> out;
  for (auto& [_, score] : by_player) {
    score.level = level_for(score.total_points, config);
    out.push_back(std::move(score));
  }
  return out;
}

}  // namespace idiomcraft
