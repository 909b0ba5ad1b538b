#pragma once

#include <map>
#include <memory>
#include <set>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "idiomcraft/config.hpp"
#include "idiomcraft/lexical.hpp"
#include "idiomcraft/matcher.hpp"
#include "idiomcraft/scoring.hpp"
#include "idiomcraft/state.hpp"
#include "idiomcraft/store.hpp"

namespace idiomcraft {

/// Tip keys shown after a submission; they steer toward reviews, B and C types.
const std::vector<std::string>& tip_keys();

/// Lowercase, drop punctuation, collapse whitespace.
std::string normalize_sentence(std::string_view text, std::string_view language);
double token_jaccard(std::string_view a, std::string_view b, std::string_view language);

/// Result of the first submit step: the sentence was matched (or not) and
/// the player must now label it.
struct SubmissionOutcome {
  enum class Kind { NeedsIdiom, AwaitLabel } kind = Kind::NeedsIdiom;
  std::vector<Token> tokens;
  std::optional<IdiomMatch> match;
  std::vector<std::string> located_words;  // surfaces at the matched positions
};

struct CommandOutcome {
  std::uint64_t seq = 0;
  std::optional<std::uint64_t> submission_id;
  std::optional<SampleType> sample_type;
  Points score_snapshot = 0;
  std::string tip_key;
  std::vector<AchievementId> achievements;
  Points reviewer_points = 0;
  std::optional<PointEvent> like_event;
  std::optional<HappyHour> happy_hour;
  std::vector<Notification> notifications;  // emitted by this command
};

struct ScoreboardRow {
  int rank = 0;
  std::string player;
  std::string name;
  Points points = 0;
};

struct ScoreboardView {
  std::vector<ScoreboardRow> top;
  std::optional<ScoreboardRow> viewer;
  std::optional<int> remaining_to_target;  // present until the soft target is hit
};

/// Serialized command processor for one language. Every mutation is
/// validated against current state, appended to the event log, then folded
/// into state. Queries take a shared lock and return copies.
class Engine {
 public:
  Engine(GameConfig config, LemmaDictionary dictionary, EventLog& log,
         std::shared_ptr<const TypeScorePolicy> policy = nullptr);

  /// Folds every record already in the log. Throws CorruptLog if a record
  /// does not validate against the state built so far.
  void replay_log();

  CommandOutcome execute(const Command& command);

  // convenience wrappers around execute()
  CommandOutcome register_player(const std::string& id, const std::string& name, Timestamp at);
  IdiomPattern add_idiom(const std::string& line, Timestamp at);
  CommandOutcome schedule_idiom(const std::string& date, const std::string& idiom_id, Timestamp at);
  CommandOutcome open_day(const std::string& date, const std::string& idiom_id, Timestamp at,
                          std::uint64_t seed = 0);
  CommandOutcome close_day(const std::string& date, Timestamp at);
  SubmissionOutcome submit(const std::string& player, const std::string& text, Timestamp at) const;
  CommandOutcome label_submission(const std::string& player, const std::string& text, bool idiomatic,
                                  Timestamp at);
  CommandOutcome record_review(const std::string& reviewer, std::uint64_t submission_id, Verdict verdict,
                               Timestamp at);
  HappyHour start_happy_hour(const std::string& moderator, Timestamp at);
  CommandOutcome ban(const std::string& moderator, const std::string& player, const std::string& reason,
                     Timestamp at);
  CommandOutcome unban(const std::string& moderator, const std::string& player, const std::string& reason,
                       Timestamp at);
  CommandOutcome flag_submission(const std::string& moderator, std::uint64_t submission_id,
                                 const std::string& reason, Timestamp at);

  // queries
  std::optional<Submission> next_for(const std::string& reviewer, const std::string& date) const;
  ScoreboardView scoreboard(const std::string& date, const std::string& viewer) const;
  std::vector<ScoreboardRow> leaderboard(const std::string& date) const;
  TypeScores current_scores(const std::string& date) const;
  std::optional<DayState> day(const std::string& date) const;
  std::optional<std::string> current_day_for(Timestamp at) const;
  std::optional<IdiomPattern> idiom(const std::string& id) const;
  std::optional<IdiomPattern> idiom_of_day(const std::string& date) const;
  std::optional<Submission> submission(std::uint64_t id) const;
  std::optional<PlayerState> player(const std::string& id) const;
  std::vector<Submission> reports() const;
  std::vector<Notification> notifications_since(std::uint64_t after_seq) const;
  GameState snapshot() const;
  std::string state_hash() const;

  const GameConfig& config() const { return config_; }
  const LemmaDictionary& dictionary() const { return dictionary_; }
  EventLog& log() { return log_; }

 private:
  void validate(const Command& command) const;
  CommandOutcome apply(const Command& command, std::uint64_t seq);

  GameConfig config_;
  LemmaDictionary dictionary_;
  EventLog& log_;
  std::shared_ptr<const TypeScorePolicy> policy_;
  mutable std::shared_mutex mutex_;
  GameState state_;
  // derived indexes, rebuilt by apply()
  std::map<std::uint64_t, std::string> normalized_;
  std::set<std::pair<std::string, std::uint64_t>> reviewed_;
};

/// Rank table for a day: players with points, best first; ties go to whoever
/// reached their total earlier.
std::vector<ScoreboardRow> rank_players(const GameState& state, const std::string& date);

std::string state_hash(const GameState& state);

}  // namespace idiomcraft
