#include "idiomcraft/state.hpp"

#include "idiomcraft/error.hpp"

namespace idiomcraft {

std::string_view to_string(SubmissionStatus s) {
  switch (s) {
    case SubmissionStatus::Active: return "active";
    case SubmissionStatus::Flagged: return "flagged";
    case SubmissionStatus::ExcludedByBan: return "excluded_by_ban";
    case SubmissionStatus::Removed: return "removed";
  }
  return "active";
}

SubmissionStatus submission_status_from_string(std::string_view text) {
  if (text == "active") return SubmissionStatus::Active;
  if (text == "flagged") return SubmissionStatus::Flagged;
  if (text == "excluded_by_ban") return SubmissionStatus::ExcludedByBan;
  if (text == "removed") return SubmissionStatus::Removed;
  fail(ErrorCode::ValidationFailed, "unknown submission status '" + std::string(text) + "'");
}

std::string_view to_string(ModerationKind k) {
  switch (k) {
    case ModerationKind::Flag: return "flag";
    case ModerationKind::Ban: return "ban";
    case ModerationKind::Unban: return "unban";
  }
  return "flag";
}

std::string_view to_string(NotificationKind k) {
  switch (k) {
    case NotificationKind::Morning: return "morning";
    case NotificationKind::ScoreChange: return "score_change";
    case NotificationKind::HappyHour: return "happy_hour";
    case NotificationKind::LikeReceived: return "like_received";
    case NotificationKind::RankGained: return "rank_gained";
    case NotificationKind::RankLost: return "rank_lost";
  }
  return "morning";
}

NotificationKind notification_kind_from_string(std::string_view text) {
  for (const auto k : {NotificationKind::Morning, NotificationKind::ScoreChange, NotificationKind::HappyHour,
                       NotificationKind::LikeReceived, NotificationKind::RankGained, NotificationKind::RankLost}) {
    if (to_string(k) == text) return k;
  }
  fail(ErrorCode::ValidationFailed, "unknown notification kind '" + std::string(text) + "'");
}

}  // namespace idiomcraft
