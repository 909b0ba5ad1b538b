#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "idiomcraft/clock.hpp"
#include "idiomcraft/matcher.hpp"
#include "idiomcraft/scoring.hpp"

namespace idiomcraft {

using clock::Timestamp;

enum class SubmissionStatus { Active, Flagged, ExcludedByBan, Removed };

std::string_view to_string(SubmissionStatus s);
SubmissionStatus submission_status_from_string(std::string_view text);

/// Flagged submissions wait for a moderator but stay in analytics and the queue.
inline bool is_excluded(SubmissionStatus s) {
  return s == SubmissionStatus::ExcludedByBan || s == SubmissionStatus::Removed;
}

struct Submission {
  std::uint64_t id = 0;
  std::string date;
  std::string language;
  std::string idiom_id;
  std::string author;
  std::string text;
  bool idiomatic = true;
  std::vector<std::size_t> constituent_positions;
  std::size_t gap_tokens = 0;
  SampleType sample_type = SampleType::A;
  Points score_snapshot = 0;
  // counts over reviews from players that are not banned
  int likes = 0;
  int dislikes = 0;
  int reports = 0;
  SubmissionStatus status = SubmissionStatus::Active;
  SubmissionStatus status_before_ban = SubmissionStatus::Active;
  std::optional<std::uint64_t> near_duplicate_of;
  std::string tip_key;
  Timestamp created_at = 0;

  int review_count() const { return likes + dislikes; }
};

struct Review {
  std::string reviewer;
  std::uint64_t submission_id = 0;
  Verdict verdict = Verdict::Like;
  Timestamp at = 0;
  Points points_awarded = 0;
};

enum class ModerationKind { Flag, Ban, Unban };

std::string_view to_string(ModerationKind k);

struct ModerationAction {
  std::string moderator;
  ModerationKind action = ModerationKind::Flag;
  std::string target;  // player id, or submission id for Flag
  std::string reason;
  Timestamp at = 0;
};

enum class NotificationKind { Morning, ScoreChange, HappyHour, LikeReceived, RankGained, RankLost };

std::string_view to_string(NotificationKind k);
NotificationKind notification_kind_from_string(std::string_view text);
/// Morning, ScoreChange and HappyHour go to every player.
inline bool is_broadcast(NotificationKind k) {
  return k == NotificationKind::Morning || k == NotificationKind::ScoreChange ||
         k == NotificationKind::HappyHour;
}

struct Notification {
  std::uint64_t seq = 0;
  NotificationKind kind = NotificationKind::Morning;
  std::string date;
  std::vector<std::string> recipients;
  std::string key;  // catalog message key
  std::map<std::string, std::string> params;
  Timestamp sent_at = 0;
};

struct HappyHour {
  Timestamp start = 0;
  Timestamp end = 0;  // exclusive
  bool contains(Timestamp t) const { return t >= start && t < end; }
};

struct BalancePoint {
  std::uint64_t submission_id = 0;
  Timestamp at = 0;
  TypeCounts counts;
  BalanceState state = BalanceState::Neutral;
  bool changed = false;
};

struct DayState {
  std::string date;
  std::string idiom_id;
  std::uint64_t seed = 0;
  bool closed = false;
  int submission_count = 0;  // every committed submission, never decreases
  TypeCounts type_counts;    // non-excluded submissions only
  BalanceState balance = BalanceState::Neutral;
  std::vector<BalancePoint> balance_timeline;
  std::vector<HappyHour> happy_hours;
  bool target_reached = false;
  std::set<std::string> active_players;
  std::vector<std::uint64_t> submission_ids;
};

struct PlayerState {
  std::string id;
  std::string name;
  bool banned = false;
  Timestamp registered_at = 0;
  std::set<std::string> active_days;
  std::map<std::string, std::vector<Achievement>> achievements;  // by date
  bool streak_unlocked = false;
  std::optional<Timestamp> last_like_notice;
  std::map<std::string, int> submissions_by_day;
  std::map<std::string, int> reviews_by_day;
};

struct GameState {
  std::string language;
  std::map<std::string, IdiomPattern> idioms;
  std::map<std::string, std::string> schedule;  // date -> idiom id
  std::map<std::string, DayState> days;
  std::map<std::string, PlayerState> players;
  std::vector<Submission> submissions;  // id = index + 1
  std::vector<Review> reviews;
  std::vector<PointEvent> points;
  std::vector<Notification> notifications;
  std::vector<ModerationAction> moderation;
  std::uint64_t last_seq = 0;

  const Submission* find_submission(std::uint64_t id) const {
    return id >= 1 && id <= submissions.size() ? &submissions[id - 1] : nullptr;
  }
  bool is_banned(const std::string& player) const {
    const auto it = players.find(player);
    return it != players.end() && it->second.banned;
  }
};

}  // namespace idiomcraft
