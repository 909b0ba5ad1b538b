#include "idiomcraft/engine.hpp"

#include <algorithm>
#include <limits>
#include <mutex>

#include "idiomcraft/error.hpp"
#include "idiomcraft/json_io.hpp"
#include "idiomcraft/unicode.hpp"

namespace idiomcraft {

namespace {

template <typename... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::string day_key(Timestamp at) { return clock::format_date(clock::date_of(at)); }

std::set<std::string> word_set(std::string_view text, std::string_view language) {
  std::set<std::string> out;
  if (unicode::trim(text).empty()) return out;
  for (const auto& t : tokenize(text)) {
    if (!t.punct) out.insert(unicode::to_lower(t.surface, language));
  }
  return out;
}

std::string score_change_key(BalanceState s) {
  switch (s) {
    case BalanceState::BoostIdiomatic: return "notify_score_idiomatic";
    case BalanceState::BoostNonidiomatic: return "notify_score_nonidiomatic";
    case BalanceState::Neutral: break;
  }
  return "notify_score_neutral";
}

}  // namespace

const std::vector<std::string>& tip_keys() {
  static const std::vector<std::string> keys = {"tip_review", "tip_b_type", "tip_c_type",
                                                "tip_review_points", "tip_scoreboard"};
  return keys;
}

std::string normalize_sentence(std::string_view text, std::string_view language) {
  const auto lowered = unicode::to_lower(text, language);
  std::string out;
  bool pending_space = false;
  for (std::size_t i = 0; i < lowered.size();) {
    const auto d = unicode::decode(lowered, i);
    i += d.length;
    if (unicode::is_punct(d.code_point)) continue;
    if (unicode::is_space(d.code_point)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    unicode::append_utf8(out, d.code_point);
  }
  return out;
}

double token_jaccard(std::string_view a, std::string_view b, std::string_view language) {
  const auto sa = word_set(a, language);
  const auto sb = word_set(b, language);
  if (sa.empty() && sb.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto& w : sa) common += sb.contains(w) ? 1 : 0;
  return static_cast<double>(common) / static_cast<double>(sa.size() + sb.size() - common);
}

std::vector<ScoreboardRow> rank_players(const GameState& state, const std::string& date) {
  struct Acc {
    Points points = 0;
    std::size_t last = 0;
  };
  std::map<std::string, Acc> acc;
  for (std::size_t i = 0; i < state.points.size(); ++i) {
    const auto& e = state.points[i];
    if (e.date != date || state.is_banned(e.player)) continue;
    auto& a = acc[e.player];
    a.points += e.points;
    a.last = i;
  }
  std::vector<std::pair<std::string, Acc>> rows(acc.begin(), acc.end());
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    if (x.second.points != y.second.points) return x.second.points > y.second.points;
    return x.second.last < y.second.last;
  });
  std::vector<ScoreboardRow> out;
  for (const auto& [player, a] : rows) {
    if (a.points <= 0) continue;
    const auto it = state.players.find(player);
    out.push_back({static_cast<int>(out.size()) + 1, player,
                   it == state.players.end() ? player : it->second.name, a.points});
  }
  return out;
}

std::string state_hash(const GameState& state) {
  return sha256_hex(nlohmann::json(state).dump());
}

Engine::Engine(GameConfig config, LemmaDictionary dictionary, EventLog& log,
               std::shared_ptr<const TypeScorePolicy> policy)
    : config_(std::move(config)),
      dictionary_(std::move(dictionary)),
      log_(log),
      policy_(policy ? std::move(policy) : std::make_shared<HysteresisPolicy>(config_.scoring)) {
  state_.language = config_.language;
}

void Engine::replay_log() {
  std::unique_lock lock(mutex_);
  for (const auto& record : log_.records()) {
    if (record.seq <= state_.last_seq) continue;
    const auto command = from_record(record);
    try {
      validate(command);
    } catch (const GameError& e) {
      fail(ErrorCode::CorruptLog,
           "event " + std::to_string(record.seq) + " (" + record.kind + ") does not replay: " + e.what());
    }
    apply(command, record.seq);
  }
}

CommandOutcome Engine::execute(const Command& command) {
  std::unique_lock lock(mutex_);
  validate(command);
  const auto seq = log_.append(to_record(command, state_.last_seq + 1), state_.last_seq + 1);
  return apply(command, seq);
}

// --- validation ---------------------------------------------------------------

void Engine::validate(const Command& command) const {
  const auto require_player = [&](const std::string& id) -> const PlayerState& {
    const auto it = state_.players.find(id);
    if (it == state_.players.end()) fail(ErrorCode::UnknownPlayer, "unknown player '" + id + "'");
    return it->second;
  };
  const auto require_open_day = [&](Timestamp at) -> const DayState& {
    if (!config_.in_window(clock::minute_of_day(at))) {
      fail(ErrorCode::OutsideWindow, "the game is played between " +
                                         clock::format_hhmm(config_.window_open_minute) + " and " +
                                         clock::format_hhmm(config_.window_close_minute));
    }
    const auto it = state_.days.find(day_key(at));
    if (it == state_.days.end() || it->second.closed) {
      fail(ErrorCode::DayClosed, "no game day is open on " + day_key(at));
    }
    return it->second;
  };

  std::visit(
      overloaded{
          [&](const RegisterPlayer& c) {
            if (c.player.empty()) fail(ErrorCode::ValidationFailed, "player id is empty");
            if (state_.players.contains(c.player)) {
              fail(ErrorCode::AlreadyRegistered, "player '" + c.player + "' already registered");
            }
          },
          [&](const AddIdiom& c) {
            const auto pattern = parse_idiom_line(c.line, config_.language);
            if (state_.idioms.contains(pattern.id)) {
              fail(ErrorCode::DuplicateIdiom, "idiom '" + pattern.id + "' already exists");
            }
          },
          [&](const ScheduleIdiom& c) {
            clock::parse_date(c.date);
            if (!state_.idioms.contains(c.idiom_id)) {
              fail(ErrorCode::UnknownIdiom, "unknown idiom '" + c.idiom_id + "'");
            }
          },
          [&](const OpenDay& c) {
            clock::parse_date(c.date);
            if (state_.days.contains(c.date)) {
              fail(ErrorCode::DayAlreadyOpen, "a day is already open for " + c.date);
            }
            if (c.idiom_id.empty()) {
              if (!state_.schedule.contains(c.date)) {
                fail(ErrorCode::NoIdiomScheduled, "no idiom scheduled for " + c.date);
              }
            } else if (!state_.idioms.contains(c.idiom_id)) {
              fail(state_.idioms.empty() ? ErrorCode::NoIdiomScheduled : ErrorCode::UnknownIdiom,
                   "unknown idiom '" + c.idiom_id + "'");
            }
          },
          [&](const CloseDay& c) {
            const auto it = state_.days.find(c.date);
            if (it == state_.days.end()) fail(ErrorCode::UnknownDay, "no game day " + c.date);
            if (it->second.closed) fail(ErrorCode::DayClosed, "day " + c.date + " is already closed");
          },
          [&](const CommitSubmission& c) {
            if (require_player(c.player).banned) fail(ErrorCode::Banned, "player is banned");
            const auto& day = require_open_day(c.at);
            const auto& pattern = state_.idioms.at(day.idiom_id);
            const auto tokens = tokenize(c.text);
            if (!locate(tokens, lemmatize(tokens, dictionary_), pattern)) {
              fail(ErrorCode::NoMatch, "sentence does not contain '" + pattern.display_text() + "'");
            }
            const auto norm = normalize_sentence(c.text, config_.language);
            for (const auto id : day.submission_ids) {
              if (normalized_.at(id) == norm) {
                fail(ErrorCode::DuplicateSentence, "this sentence was already submitted today");
              }
            }
          },
          [&](const RecordReview& c) {
            if (require_player(c.reviewer).banned) fail(ErrorCode::Banned, "player is banned");
            require_open_day(c.at);
            const auto* sub = state_.find_submission(c.submission_id);
            if (!sub || is_excluded(sub->status) || sub->date != day_key(c.at)) {
              fail(ErrorCode::UnknownSubmission,
                   "submission " + std::to_string(c.submission_id) + " is not open for review");
            }
            if (sub->author == c.reviewer) fail(ErrorCode::SelfReview, "cannot review your own submission");
            if (reviewed_.contains({c.reviewer, c.submission_id})) {
              fail(ErrorCode::AlreadyReviewed, "submission already reviewed by this player");
            }
          },
          [&](const StartHappyHour& c) {
            const auto& day = require_open_day(c.at);
            for (const auto& hh : day.happy_hours) {
              if (hh.contains(c.at)) fail(ErrorCode::HappyHourActive, "a happy hour is already running");
            }
          },
          [&](const BanPlayer& c) {
            if (require_player(c.player).banned) fail(ErrorCode::AlreadyBanned, "player already banned");
          },
          [&](const UnbanPlayer& c) {
            if (!require_player(c.player).banned) fail(ErrorCode::NotBanned, "player is not banned");
          },
          [&](const FlagSubmission& c) {
            if (!state_.find_submission(c.submission_id)) {
              fail(ErrorCode::UnknownSubmission, "unknown submission " + std::to_string(c.submission_id));
            }
          },
      },
      command);
}

// --- state fold ---------------------------------------------------------------

CommandOutcome Engine::apply(const Command& command, std::uint64_t seq) {
  CommandOutcome out;
  out.seq = seq;
  state_.last_seq = seq;

  const auto notify = [&](NotificationKind kind, const std::string& date, std::vector<std::string> recipients,
                          std::string key, std::map<std::string, std::string> params, Timestamp at) {
    Notification n;
    n.seq = state_.notifications.size() + 1;
    n.kind = kind;
    n.date = date;
    n.recipients = std::move(recipients);
    n.key = std::move(key);
    n.params = std::move(params);
    n.sent_at = at;
    state_.notifications.push_back(n);
    out.notifications.push_back(std::move(n));
  };
  const auto everyone = [&] {
    std::vector<std::string> ids;
    for (const auto& [id, p] : state_.players) {
      if (!p.banned) ids.push_back(id);
    }
    return ids;
  };
  const auto recount = [&] {
    for (auto& s : state_.submissions) s.likes = s.dislikes = s.reports = 0;
    for (const auto& r : state_.reviews) {
      if (state_.is_banned(r.reviewer)) continue;
      auto& s = state_.submissions[r.submission_id - 1];
      switch (r.verdict) {
        case Verdict::Like: ++s.likes; break;
        case Verdict::Dislike: ++s.dislikes; break;
        case Verdict::Report: ++s.reports; break;
      }
    }
    for (auto& [_, day] : state_.days) {
      day.type_counts = {};
      for (const auto id : day.submission_ids) {
        const auto& s = state_.submissions[id - 1];
        if (!is_excluded(s.status)) ++day.type_counts[s.sample_type];
      }
    }
  };
  const auto consecutive_days = [&](const PlayerState& p, const std::string& date) {
    int n = 0;
    auto d = clock::days_from_civil(clock::parse_date(date));
    while (p.active_days.contains(clock::format_date(clock::civil_from_days(d)))) {
      ++n;
      --d;
    }
    return n;
  };
  const auto unlock = [&](PlayerState& p, const std::string& date, std::optional<int> submission_minute,
                          Timestamp at) {
    PlayerDaySummary summary;
    summary.submissions_today = p.submissions_by_day[date];
    summary.reviews_today = p.reviews_by_day[date];
    summary.submission_minute = submission_minute;
    summary.window_open_minute = config_.window_open_minute;
    summary.consecutive_active_days = consecutive_days(p, date);
    for (const auto& a : p.achievements[date]) summary.unlocked_today.insert(a.id);
    summary.streak_unlocked = p.streak_unlocked;
    for (const auto id : check_achievements(summary, config_.scoring)) {
      p.achievements[date].push_back({id, at});
      if (id == AchievementId::Streak) p.streak_unlocked = true;
      out.achievements.push_back(id);
    }
  };

  std::visit(
      overloaded{
          [&](const RegisterPlayer& c) {
            PlayerState p;
            p.id = c.player;
            p.name = c.name.empty() ? c.player : c.name;
            p.registered_at = c.at;
            state_.players.emplace(c.player, std::move(p));
          },
          [&](const AddIdiom& c) {
            auto pattern = parse_idiom_line(c.line, config_.language);
            state_.idioms.emplace(pattern.id, std::move(pattern));
          },
          [&](const ScheduleIdiom& c) { state_.schedule[c.date] = c.idiom_id; },
          [&](const OpenDay& c) {
            DayState day;
            day.date = c.date;
            day.idiom_id = c.idiom_id.empty() ? state_.schedule.at(c.date) : c.idiom_id;
            day.seed = c.seed;
            const auto& pattern = state_.idioms.at(day.idiom_id);
            state_.days.emplace(c.date, std::move(day));
            notify(NotificationKind::Morning, c.date, everyone(), "notify_morning",
                   {{"idiom", pattern.display_text()}, {"gloss", pattern.gloss}, {"date", c.date}}, c.at);
          },
          [&](const CloseDay& c) { state_.days.at(c.date).closed = true; },
          [&](const CommitSubmission& c) {
            const auto date = day_key(c.at);
            auto& day = state_.days.at(date);
            const auto& pattern = state_.idioms.at(day.idiom_id);
            const auto tokens = tokenize(c.text);
            const auto match = *locate(tokens, lemmatize(tokens, dictionary_), pattern);

            Submission s;
            s.id = state_.submissions.size() + 1;
            s.date = date;
            s.language = config_.language;
            s.idiom_id = day.idiom_id;
            s.author = c.player;
            s.text = c.text;
            s.idiomatic = c.idiomatic;
            s.constituent_positions = match.constituent_positions;
            s.gap_tokens = match.gap_tokens;
            s.sample_type = classify(match, c.idiomatic);
            const auto scores_before = policy_->scores(day.type_counts, day.balance);
            s.score_snapshot = scores_before.of(s.sample_type);
            s.created_at = c.at;
            for (const auto other : day.submission_ids) {
              const auto& o = state_.submissions[other - 1];
              if (is_excluded(o.status)) continue;
              if (token_jaccard(c.text, o.text, config_.language) >= config_.near_duplicate_jaccard) {
                s.near_duplicate_of = other;
                break;
              }
            }
            const auto& tips = tip_keys();
            s.tip_key = tips[splitmix64(day.seed ^ (static_cast<std::uint64_t>(day.submission_count) << 20)) %
                             tips.size()];

            ++day.submission_count;
            day.submission_ids.push_back(s.id);
            ++day.type_counts[s.sample_type];
            if (day.submission_count >= config_.soft_target) day.target_reached = true;

            const auto previous = day.balance;
            day.balance = update_balance(day.type_counts, previous, config_.scoring);
            const bool changed = day.balance != previous;
            day.balance_timeline.push_back({s.id, c.at, day.type_counts, day.balance, changed});
            if (changed && policy_->scores(day.type_counts, day.balance) != scores_before) {
              const auto scores = policy_->scores(day.type_counts, day.balance);
              notify(NotificationKind::ScoreChange, date, everyone(), score_change_key(day.balance),
                     {{"a", std::to_string(scores.a)},
                      {"b", std::to_string(scores.b)},
                      {"c", std::to_string(scores.c)},
                      {"d", std::to_string(scores.d)}},
                     c.at);
            }

            auto& player = state_.players.at(c.player);
            player.active_days.insert(date);
            ++player.submissions_by_day[date];
            day.active_players.insert(c.player);
            unlock(player, date, clock::minute_of_day(c.at), c.at);

            out.submission_id = s.id;
            out.sample_type = s.sample_type;
            out.score_snapshot = s.score_snapshot;
            out.tip_key = s.tip_key;
            normalized_[s.id] = normalize_sentence(c.text, config_.language);
            state_.submissions.push_back(std::move(s));
          },
          [&](const RecordReview& c) {
            auto& sub = state_.submissions[c.submission_id - 1];
            const auto& date = sub.date;
            auto& day = state_.days.at(date);
            const bool happy = std::any_of(day.happy_hours.begin(), day.happy_hours.end(),
                                           [&](const HappyHour& h) { return h.contains(c.at); });
            const auto ranks_before = rank_players(state_, date);

            Review r{c.reviewer, c.submission_id, c.verdict, c.at,
                     review_points(c.verdict, happy, config_.scoring)};
            state_.reviews.push_back(r);
            reviewed_.insert({c.reviewer, c.submission_id});
            switch (c.verdict) {
              case Verdict::Like: ++sub.likes; break;
              case Verdict::Dislike: ++sub.dislikes; break;
              case Verdict::Report:
                ++sub.reports;
                if (sub.status == SubmissionStatus::Active) sub.status = SubmissionStatus::Flagged;
                break;
            }
            if (r.points_awarded > 0) {
              PointEvent e;
              e.seq = state_.points.size() + 1;
              e.player = c.reviewer;
              e.date = date;
              e.points = r.points_awarded;
              e.reason = PointReason::Review;
              e.submission_id = c.submission_id;
              e.at = c.at;
              state_.points.push_back(e);
            }
            out.reviewer_points = r.points_awarded;
            const LikeTarget target{sub.id, sub.author, sub.date, sub.score_snapshot};
            if (auto like = award_like(target, c.reviewer, c.verdict, c.at)) {
              like->seq = state_.points.size() + 1;
              state_.points.push_back(*like);
              out.like_event = like;
              auto& author = state_.players.at(sub.author);
              const auto cooldown = static_cast<Timestamp>(config_.like_cooldown_minutes) * 60;
              if (!author.banned && (!author.last_like_notice || c.at - *author.last_like_notice >= cooldown)) {
                author.last_like_notice = c.at;
                notify(NotificationKind::LikeReceived, date, {sub.author}, "notify_like",
                       {{"points", std::to_string(sub.score_snapshot)}}, c.at);
              }
            }

            const auto ranks_after = rank_players(state_, date);
            constexpr int kUnranked = std::numeric_limits<int>::max();
            std::map<std::string, std::pair<int, int>> moves;  // player -> (before, after)
            for (const auto& row : ranks_before) moves[row.player] = {row.rank, kUnranked};
            for (const auto& row : ranks_after) {
              auto [it, inserted] = moves.try_emplace(row.player, kUnranked, row.rank);
              if (!inserted) it->second.second = row.rank;
            }
            for (const auto& [player, move] : moves) {
              const auto [before, after] = move;
              if (after < before) {
                if (after == 1) {
                  notify(NotificationKind::RankGained, date, {player}, "notify_rank_leader", {}, c.at);
                } else if (after <= 5 && before > 5) {
                  notify(NotificationKind::RankGained, date, {player}, "notify_rank_top5",
                         {{"rank", std::to_string(after)}}, c.at);
                }
              } else if (after > before) {
                const auto rank = after == kUnranked ? std::string("-") : std::to_string(after);
                if (before <= 5 && after > 5) {
                  notify(NotificationKind::RankLost, date, {player}, "notify_rank_lost_top5", {{"rank", rank}}, c.at);
                } else if (before <= 3 && after > 3) {
                  notify(NotificationKind::RankLost, date, {player}, "notify_rank_lost_top3", {{"rank", rank}}, c.at);
                } else if (before == 1) {
                  notify(NotificationKind::RankLost, date, {player}, "notify_rank_lost_first", {{"rank", rank}}, c.at);
                }
              }
            }

            auto& reviewer = state_.players.at(c.reviewer);
            reviewer.active_days.insert(date);
            ++reviewer.reviews_by_day[date];
            day.active_players.insert(c.reviewer);
            unlock(reviewer, date, std::nullopt, c.at);
          },
          [&](const StartHappyHour& c) {
            const auto date = day_key(c.at);
            auto& day = state_.days.at(date);
            HappyHour hh{c.at, c.at + static_cast<Timestamp>(config_.happy_hour_minutes) * 60};
            day.happy_hours.push_back(hh);
            out.happy_hour = hh;
            notify(NotificationKind::HappyHour, date, everyone(), "notify_happy_hour",
                   {{"minutes", std::to_string(config_.happy_hour_minutes)},
                    {"until", clock::format_hhmm(clock::minute_of_day(hh.end))}},
                   c.at);
          },
          [&](const BanPlayer& c) {
            state_.players.at(c.player).banned = true;
            for (auto& s : state_.submissions) {
              if (s.author != c.player || s.status == SubmissionStatus::ExcludedByBan) continue;
              s.status_before_ban = s.status;
              s.status = SubmissionStatus::ExcludedByBan;
            }
            recount();
            state_.moderation.push_back({c.moderator, ModerationKind::Ban, c.player, c.reason, c.at});
          },
          [&](const UnbanPlayer& c) {
            state_.players.at(c.player).banned = false;
            for (auto& s : state_.submissions) {
              if (s.author == c.player && s.status == SubmissionStatus::ExcludedByBan) s.status = s.status_before_ban;
            }
            recount();
            state_.moderation.push_back({c.moderator, ModerationKind::Unban, c.player, c.reason, c.at});
          },
          [&](const FlagSubmission& c) {
            auto& s = state_.submissions[c.submission_id - 1];
            if (s.status == SubmissionStatus::ExcludedByBan) {
              s.status_before_ban = SubmissionStatus::Removed;
            } else {
              s.status = SubmissionStatus::Removed;
            }
            recount();
            state_.moderation.push_back(
                {c.moderator, ModerationKind::Flag, std::to_string(c.submission_id), c.reason, c.at});
          },
      },
      command);
  return out;
}

// --- command wrappers -----------------------------------------------------------

CommandOutcome Engine::register_player(const std::string& id, const std::string& name, Timestamp at) {
  return execute(RegisterPlayer{id, name, at});
}

IdiomPattern Engine::add_idiom(const std::string& line, Timestamp at) {
  execute(AddIdiom{line, at});
  const auto id = parse_idiom_line(line, config_.language).id;
  std::shared_lock lock(mutex_);
  return state_.idioms.at(id);
}

CommandOutcome Engine::schedule_idiom(const std::string& date, const std::string& idiom_id, Timestamp at) {
  return execute(ScheduleIdiom{date, idiom_id, at});
}

CommandOutcome Engine::open_day(const std::string& date, const std::string& idiom_id, Timestamp at,
                                std::uint64_t seed) {
  return execute(OpenDay{date, idiom_id, seed, at});
}

CommandOutcome Engine::close_day(const std::string& date, Timestamp at) {
  return execute(CloseDay{date, at});
}

SubmissionOutcome Engine::submit(const std::string& player, const std::string& text, Timestamp at) const {
  std::shared_lock lock(mutex_);
  const auto it = state_.players.find(player);
  if (it == state_.players.end()) fail(ErrorCode::UnknownPlayer, "unknown player '" + player + "'");
  if (it->second.banned) fail(ErrorCode::Banned, "player is banned");
  if (!config_.in_window(clock::minute_of_day(at))) {
    fail(ErrorCode::OutsideWindow, "the game is played between " + clock::format_hhmm(config_.window_open_minute) +
                                       " and " + clock::format_hhmm(config_.window_close_minute));
  }
  const auto day = state_.days.find(day_key(at));
  if (day == state_.days.end() || day->second.closed) {
    fail(ErrorCode::DayClosed, "no game day is open on " + day_key(at));
  }
  SubmissionOutcome outcome;
  outcome.tokens = tokenize(text);
  const auto& pattern = state_.idioms.at(day->second.idiom_id);
  outcome.match = locate(outcome.tokens, lemmatize(outcome.tokens, dictionary_), pattern);
  if (!outcome.match) return outcome;
  const auto norm = normalize_sentence(text, config_.language);
  for (const auto id : day->second.submission_ids) {
    if (normalized_.at(id) == norm) fail(ErrorCode::DuplicateSentence, "this sentence was already submitted today");
  }
  outcome.kind = SubmissionOutcome::Kind::AwaitLabel;
  for (const auto pos : outcome.match->constituent_positions) {
    outcome.located_words.push_back(outcome.tokens[pos].surface);
  }
  return outcome;
}

CommandOutcome Engine::label_submission(const std::string& player, const std::string& text, bool idiomatic,
                                        Timestamp at) {
  return execute(CommitSubmission{player, text, idiomatic, at});
}

CommandOutcome Engine::record_review(const std::string& reviewer, std::uint64_t submission_id, Verdict verdict,
                                     Timestamp at) {
  return execute(RecordReview{reviewer, submission_id, verdict, at});
}

HappyHour Engine::start_happy_hour(const std::string& moderator, Timestamp at) {
  return *execute(StartHappyHour{moderator, at}).happy_hour;
}

CommandOutcome Engine::ban(const std::string& moderator, const std::string& player, const std::string& reason,
                           Timestamp at) {
  return execute(BanPlayer{moderator, player, reason, at});
}

CommandOutcome Engine::unban(const std::string& moderator, const std::string& player, const std::string& reason,
                             Timestamp at) {
  return execute(UnbanPlayer{moderator, player, reason, at});
}

CommandOutcome Engine::flag_submission(const std::string& moderator, std::uint64_t submission_id,
                                       const std::string& reason, Timestamp at) {
  return execute(FlagSubmission{moderator, submission_id, reason, at});
}

// --- queries ------------------------------------------------------------------

std::optional<Submission> Engine::next_for(const std::string& reviewer, const std::string& date) const {
  std::shared_lock lock(mutex_);
  if (state_.is_banned(reviewer)) return std::nullopt;
  const auto day = state_.days.find(date);
  if (day == state_.days.end()) return std::nullopt;
  const Submission* best = nullptr;
  for (const auto id : day->second.submission_ids) {
    const auto& s = state_.submissions[id - 1];
    if (is_excluded(s.status) || s.author == reviewer || reviewed_.contains({reviewer, id})) continue;
    if (!best || s.review_count() < best->review_count()) best = &s;  // ids ascend: ties keep the oldest
  }
  if (!best) return std::nullopt;
  return *best;
}

std::vector<ScoreboardRow> Engine::leaderboard(const std::string& date) const {
  std::shared_lock lock(mutex_);
  return rank_players(state_, date);
}

ScoreboardView Engine::scoreboard(const std::string& date, const std::string& viewer) const {
  std::shared_lock lock(mutex_);
  ScoreboardView view;
  const auto ranks = rank_players(state_, date);
  for (const auto& row : ranks) {
    if (row.rank <= 5) view.top.push_back(row);
    if (row.player == viewer) view.viewer = row;
  }
  const auto day = state_.days.find(date);
  if (day == state_.days.end()) {
    view.remaining_to_target = config_.soft_target;
  } else if (!day->second.target_reached) {
    view.remaining_to_target = config_.soft_target - day->second.submission_count;
  }
  return view;
}

TypeScores Engine::current_scores(const std::string& date) const {
  std::shared_lock lock(mutex_);
  const auto day = state_.days.find(date);
  if (day == state_.days.end()) return policy_->scores({}, BalanceState::Neutral);
  return policy_->scores(day->second.type_counts, day->second.balance);
}

std::optional<DayState> Engine::day(const std::string& date) const {
  std::shared_lock lock(mutex_);
  const auto it = state_.days.find(date);
  if (it == state_.days.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> Engine::current_day_for(Timestamp at) const {
  std::shared_lock lock(mutex_);
  const auto it = state_.days.find(day_key(at));
  if (it == state_.days.end() || it->second.closed) return std::nullopt;
  return it->first;
}

std::optional<IdiomPattern> Engine::idiom(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const auto it = state_.idioms.find(id);
  if (it == state_.idioms.end()) return std::nullopt;
  return it->second;
}

std::optional<IdiomPattern> Engine::idiom_of_day(const std::string& date) const {
  std::shared_lock lock(mutex_);
  const auto day = state_.days.find(date);
  if (day == state_.days.end()) return std::nullopt;
  return state_.idioms.at(day->second.idiom_id);
}

std::optional<Submission> Engine::submission(std::uint64_t id) const {
  std::shared_lock lock(mutex_);
  const auto* s = state_.find_submission(id);
  if (!s) return std::nullopt;
  return *s;
}

std::optional<PlayerState> Engine::player(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const auto it = state_.players.find(id);
  if (it == state_.players.end()) return std::nullopt;
  return it->second;
}

std::vector<Submission> Engine::reports() const {
  std::shared_lock lock(mutex_);
  std::vector<Submission> out;
  for (const auto& s : state_.submissions) {
    if (s.status == SubmissionStatus::Flagged ||
        (s.near_duplicate_of && !is_excluded(s.status))) {
      out.push_back(s);
    }
  }
  return out;
}

std::vector<Notification> Engine::notifications_since(std::uint64_t after_seq) const {
  std::shared_lock lock(mutex_);
  if (after_seq >= state_.notifications.size()) return {};
  return {state_.notifications.begin() + static_cast<std::ptrdiff_t>(after_seq), state_.notifications.end()};
}

GameState Engine::snapshot() const {
  std::shared_lock lock(mutex_);
  return state_;
}

std::string Engine::state_hash() const {
  std::shared_lock lock(mutex_);
  return idiomcraft::state_hash(state_);
}

}  // namespace idiomcraft
