#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "idiomcraft/matcher.hpp"

namespace idiomcraft {

using Points = std::int64_t;

struct TypeScores {
  Points a = 10;
  Points b = 12;
  Points c = 10;
  Points d = 10;

  Points of(SampleType t) const;
  bool operator==(const TypeScores&) const = default;
};

/// Per-type sample counts, indexed by SampleType.
struct TypeCounts {
  std::array<std::int64_t, 4> n{};

  std::int64_t& operator[](SampleType t) { return n[index_of(t)]; }
  std::int64_t operator[](SampleType t) const { return n[index_of(t)]; }
  std::int64_t idiomatic() const { return n[0] + n[1]; }
  std::int64_t nonidiomatic() const { return n[2] + n[3]; }
  std::int64_t total() const { return n[0] + n[1] + n[2] + n[3]; }
  bool operator==(const TypeCounts&) const = default;
};

enum class BalanceState { Neutral, BoostNonidiomatic, BoostIdiomatic };

std::string_view to_string(BalanceState s);
BalanceState balance_state_from_string(std::string_view text);

enum class BalanceCompare {
  AVersusC,                  // #A vs #C
  IdiomaticVersusNonidiomatic  // (A+B) vs (C+D)
};

struct ScoringConfig {
  TypeScores base;
  Points boost_delta = 5;
  std::int64_t activate_gap = 15;  // boost when the gap reaches this
  std::int64_t release_gap = 5;    // release once the gap falls below this
  BalanceCompare compare = BalanceCompare::AVersusC;
  Points level_divisor = 100;
  Points review_points = 1;
  Points happy_hour_review_points = 2;
  int author_threshold = 10;      // submissions in a day
  int reviewer_threshold = 25;    // reviews in a day
  int streak_days = 3;            // consecutive active days
  int early_bird_minutes = 60;    // after the window opens
};

/// Hysteresis controller. Activates a boost when one side leads by at least
/// `activate_gap`, releases when the gap drops below `release_gap`; inside the
/// band the previous state is kept.
BalanceState update_balance(const TypeCounts& counts, BalanceState state,
                            const ScoringConfig& config = {});

TypeScores effective_scores(BalanceState state, const ScoringConfig& config = {});

/// Source of per-type submission scores. The live engine uses the hysteresis
/// policy; the simulator plugs in the historical alternatives.
class TypeScorePolicy {
 public:
  virtual ~TypeScorePolicy() = default;
  virtual TypeScores scores(const TypeCounts& counts, BalanceState state) const = 0;
  virtual std::string name() const = 0;
};

class HysteresisPolicy final : public TypeScorePolicy {
 public:
  explicit HysteresisPolicy(ScoringConfig config = {}) : config_(std::move(config)) {}
  TypeScores scores(const TypeCounts&, BalanceState state) const override {
    return effective_scores(state, config_);
  }
  std::string name() const override { return "Hysteresis"; }

 private:
  ScoringConfig config_;
};

enum class PointReason { Like, Review };

std::string_view to_string(PointReason r);

struct PointEvent {
  std::uint64_t seq = 0;      // position in the point ledger
  std::string player;
  std::string date;           // game day, YYYY-MM-DD
  Points points = 0;
  PointReason reason = PointReason::Review;
  std::uint64_t submission_id = 0;
  std::int64_t at = 0;        // local timestamp, seconds

  bool operator==(const PointEvent&) const = default;
};

enum class Verdict { Like, Dislike, Report };

std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view text);

/// What a like is worth: the score frozen at submission time.
struct LikeTarget {
  std::uint64_t submission_id = 0;
  std::string author;
  std::string date;
  Points score_snapshot = 0;
};

/// Point event for the author of a liked submission; none for other verdicts.
/// Throws GameError(SelfReview) if reviewer is the author.
std::optional<PointEvent> award_like(const LikeTarget& submission, const std::string& reviewer,
                                     Verdict verdict, std::int64_t at);

Points review_points(bool happy_hour_active, const ScoringConfig& config = {});
/// Reports earn nothing; likes and dislikes earn review_points().
Points review_points(Verdict verdict, bool happy_hour_active, const ScoringConfig& config = {});

int level_for(Points total_points, const ScoringConfig& config = {});

enum class AchievementId { EarlyBird, Author, Reviewer, Streak };

std::string_view to_string(AchievementId id);
AchievementId achievement_from_string(std::string_view text);

struct Achievement {
  AchievementId id = AchievementId::Author;
  std::int64_t unlocked_at = 0;
  bool operator==(const Achievement&) const = default;
};

/// Activity of one player on one day, after the action being evaluated.
struct PlayerDaySummary {
  int submissions_today = 0;
  int reviews_today = 0;
  /// Minute of day of the action just taken, if it was a submission.
  std::optional<int> submission_minute;
  int window_open_minute = 11 * 60;
  int consecutive_active_days = 1;  // including today
  std::set<AchievementId> unlocked_today;
  bool streak_unlocked = false;     // lifetime scope
};

std::set<AchievementId> check_achievements(const PlayerDaySummary& summary,
                                           const ScoringConfig& config = {});

struct PlayerScore {
  std::string player_id;
  Points day_points = 0;
  Points total_points = 0;
  int level = 1;
};

/// Folds a point ledger into per-player scores for `date`.
std::vector<PlayerScore> tally(const std::vector<PointEvent>& events, const std::string& date,
                               const ScoringConfig& config = {});

}  // namespace idiomcraft
