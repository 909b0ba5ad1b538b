#include "idiomcraft/dispatcher.hpp"

#include <algorithm>
#include <charconv>

namespace idiomcraft {

namespace {

std::string error_key(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutsideWindow: return "error_outside_window";
    case ErrorCode::DayClosed: return "error_day_closed";
    case ErrorCode::Banned: return "error_banned";
    case ErrorCode::DuplicateSentence: return "error_duplicate_sentence";
    case ErrorCode::AlreadyReviewed: return "error_already_reviewed";
    case ErrorCode::SelfReview: return "error_self_review";
    case ErrorCode::UnknownSubmission: return "error_unknown_submission";
    case ErrorCode::EmptyText: return "error_empty_text";
    case ErrorCode::UnknownPlayer: return "error_not_registered";
    default: return "error_generic";
  }
}

std::string achievement_key(AchievementId id) {
  switch (id) {
    case AchievementId::EarlyBird: return "achievement_early_bird";
    case AchievementId::Author: return "achievement_author";
    case AchievementId::Reviewer: return "achievement_reviewer";
    case AchievementId::Streak: return "achievement_streak";
  }
  return "achievement_author";
}

}  // namespace

std::string mark_constituents(const std::string& text, const std::vector<std::size_t>& positions) {
  const auto tokens = tokenize(text);
  std::string out;
  std::size_t cursor = 0;
  for (const auto& t : tokens) {
    out.append(text, cursor, t.begin - cursor);
    const bool marked = std::find(positions.begin(), positions.end(), t.index) != positions.end();
    if (marked) out += '[';
    out += t.surface;
    if (marked) out += ']';
    cursor = t.end;
  }
  out.append(text, cursor, std::string::npos);
  return out;
}

Dispatcher::Dispatcher(Engine& engine, const Catalog& catalog, Transport& transport)
    : engine_(engine), catalog_(catalog), transport_(transport) {
  const auto pending = engine_.notifications_since(0);
  // history before this dispatcher existed is not re-sent
  if (!pending.empty()) notified_seq_ = pending.back().seq;
}

void Dispatcher::reply(Out& out, const std::string& to, const std::string& key, const Params& params,
                       std::vector<Button> buttons) const {
  OutboundMessage m;
  m.recipient = to;
  m.key = key;
  m.text = catalog_.render(key, params);
  m.buttons = std::move(buttons);
  out.push_back(std::move(m));
}

void Dispatcher::menu(Out& out, const std::string& to) const {
  std::vector<Button> buttons;
  for (const auto* choice : {kMenuSubmit, kMenuReview, kMenuScoreboard, kMenuIdiom, kMenuHelp}) {
    buttons.push_back({catalog_.render(std::string("menu_") + choice), choice});
  }
  reply(out, to, "menu", {}, std::move(buttons));
}

void Dispatcher::error(Out& out, const std::string& to, const GameError& e) const {
  const auto key = error_key(e.code());
  const auto& cfg = engine_.config();
  reply(out, to, key,
        {{"message", e.what()},
         {"open", clock::format_hhmm(cfg.window_open_minute)},
         {"close", clock::format_hhmm(cfg.window_close_minute)}});
}

Dispatcher::Step Dispatcher::step(const std::string& player) const {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(player);
  return it == sessions_.end() ? Step::Idle : it->second.step;
}

std::vector<OutboundMessage> Dispatcher::dispatch(const InboundEvent& event) {
  std::lock_guard lock(mutex_);
  Out out;
  if (event.kind != InboundEvent::Kind::Start && !engine_.player(event.player)) {
    reply(out, event.player, "error_not_registered");
  } else {
    switch (event.kind) {
      case InboundEvent::Kind::Start: on_start(out, event); break;
      case InboundEvent::Kind::MenuChoice: on_menu(out, event); break;
      case InboundEvent::Kind::FreeText: on_text(out, event); break;
      case InboundEvent::Kind::ReviewVerdict: on_verdict(out, event); break;
    }
  }
  for (auto& m : out) m.id = transport_.deliver(m);
  auto pushes = flush_locked();
  out.insert(out.end(), pushes.begin(), pushes.end());
  return out;
}

void Dispatcher::on_start(Out& out, const InboundEvent& e) {
  const auto name = e.display_name.empty() ? e.player : e.display_name;
  if (!engine_.player(e.player)) {
    try {
      engine_.register_player(e.player, name, e.at);
    } catch (const GameError& err) {
      error(out, e.player, err);
      return;
    }
  }
  sessions_[e.player] = Session{};
  for (int i = 1; i <= 5; ++i) reply(out, e.player, "tutorial_" + std::to_string(i), {{"name", name}});
  menu(out, e.player);
}

void Dispatcher::on_menu(Out& out, const InboundEvent& e) {
  auto& session = sessions_[e.player];
  if (e.payload == kLabelYes || e.payload == kLabelNo) {
    if (session.step == Step::AwaitLabel) {
      on_label(out, e, e.payload == kLabelYes);
      return;
    }
  }
  const auto date = engine_.current_day_for(e.at);
  if (e.payload == kMenuSubmit) {
    if (!date) {
      reply(out, e.player, "no_day");
      return;
    }
    session = Session{Step::AwaitSentence, {}};
    reply(out, e.player, "submit_prompt", {{"idiom", engine_.idiom_of_day(*date)->display_text()}});
  } else if (e.payload == kMenuReview) {
    session = Session{};
    if (!date) {
      reply(out, e.player, "no_day");
      return;
    }
    serve_review(out, e.player, *date);
  } else if (e.payload == kMenuScoreboard) {
    session = Session{};
    const auto view = engine_.scoreboard(date.value_or(clock::format_date(clock::date_of(e.at))), e.player);
    if (view.top.empty()) {
      reply(out, e.player, "scoreboard_empty");
    } else {
      reply(out, e.player, "scoreboard_header");
      for (const auto& row : view.top) {
        reply(out, e.player, "scoreboard_row",
              {{"rank", std::to_string(row.rank)}, {"name", row.name}, {"points", std::to_string(row.points)}});
      }
    }
    if (view.viewer) {
      reply(out, e.player, "scoreboard_you",
            {{"rank", std::to_string(view.viewer->rank)}, {"points", std::to_string(view.viewer->points)}});
    }
    if (view.remaining_to_target) {
      reply(out, e.player, "soft_target_remaining", {{"remaining", std::to_string(*view.remaining_to_target)}});
    }
    menu(out, e.player);
  } else if (e.payload == kMenuIdiom) {
    session = Session{};
    if (!date) {
      reply(out, e.player, "no_day");
      return;
    }
    const auto idiom = engine_.idiom_of_day(*date);
    reply(out, e.player, "todays_idiom",
          {{"idiom", idiom->display_text()}, {"literal", idiom->literal_gloss}, {"gloss", idiom->gloss}});
  } else {
    session = Session{};
    reply(out, e.player, "help");
    menu(out, e.player);
  }
}

void Dispatcher::on_text(Out& out, const InboundEvent& e) {
  auto& session = sessions_[e.player];
  if (session.step != Step::AwaitSentence) {
    reply(out, e.player, "help");
    menu(out, e.player);
    return;
  }
  try {
    const auto outcome = engine_.submit(e.player, e.payload, e.at);
    if (outcome.kind == SubmissionOutcome::Kind::NeedsIdiom) {
      const auto date = engine_.current_day_for(e.at);
      reply(out, e.player, "needs_idiom", {{"idiom", engine_.idiom_of_day(*date)->display_text()}});
      return;
    }
    std::string words;
    for (const auto& w : outcome.located_words) words += (words.empty() ? "" : ", ") + w;
    session = Session{Step::AwaitLabel, e.payload};
    reply(out, e.player, "label_question", {{"words", words}},
          {{catalog_.render("label_yes"), kLabelYes}, {catalog_.render("label_no"), kLabelNo}});
  } catch (const GameError& err) {
    session = Session{};
    error(out, e.player, err);
    menu(out, e.player);
  }
}

void Dispatcher::on_label(Out& out, const InboundEvent& e, bool idiomatic) {
  auto& session = sessions_[e.player];
  const auto text = session.pending;
  session = Session{};
  try {
    const auto outcome = engine_.label_submission(e.player, text, idiomatic, e.at);
    reply(out, e.player, "submit_thanks",
          {{"type", std::string(to_string(*outcome.sample_type))}, {"points", std::to_string(outcome.score_snapshot)}});
    if (const auto sub = engine_.submission(*outcome.submission_id); sub && sub->near_duplicate_of) {
      reply(out, e.player, "near_duplicate");
    }
    const auto& scoring = engine_.config().scoring;
    for (const auto id : outcome.achievements) {
      const int count = id == AchievementId::Author     ? scoring.author_threshold
                        : id == AchievementId::Reviewer ? scoring.reviewer_threshold
                                                        : scoring.streak_days;
      reply(out, e.player, achievement_key(id), {{"count", std::to_string(count)}});
    }
    reply(out, e.player, outcome.tip_key);
  } catch (const GameError& err) {
    error(out, e.player, err);
  }
  menu(out, e.player);
}

void Dispatcher::serve_review(Out& out, const std::string& player, const std::string& date) {
  const auto next = engine_.next_for(player, date);
  if (!next) {
    reply(out, player, "review_empty");
    menu(out, player);
    return;
  }
  const auto id = std::to_string(next->id);
  reply(out, player, "review_prompt", {{"sentence", mark_constituents(next->text, next->constituent_positions)}},
        {{catalog_.render("verdict_like"), id + ":like"},
         {catalog_.render("verdict_dislike"), id + ":dislike"},
         {catalog_.render("verdict_report"), id + ":report"}});
}

void Dispatcher::on_verdict(Out& out, const InboundEvent& e) {
  sessions_[e.player] = Session{};
  const auto colon = e.payload.find(':');
  std::uint64_t id = 0;
  std::optional<Verdict> verdict;
  if (colon != std::string::npos) {
    const auto* first = e.payload.data();
    const auto [ptr, ec] = std::from_chars(first, first + colon, id);
    if (ec == std::errc{} && ptr == first + colon) {
      try {
        verdict = verdict_from_string(e.payload.substr(colon + 1));
      } catch (const GameError&) {
      }
    }
  }
  if (!verdict) {
    reply(out, e.player, "help");
    menu(out, e.player);
    return;
  }
  try {
    const auto outcome = engine_.record_review(e.player, id, *verdict, e.at);
    reply(out, e.player, "review_thanks", {{"points", std::to_string(outcome.reviewer_points)}});
    for (const auto a : outcome.achievements) {
      const int count = a == AchievementId::Reviewer ? engine_.config().scoring.reviewer_threshold
                                                     : engine_.config().scoring.streak_days;
      reply(out, e.player, achievement_key(a), {{"count", std::to_string(count)}});
    }
  } catch (const GameError& err) {
    error(out, e.player, err);
    menu(out, e.player);
    return;
  }
  const auto date = engine_.current_day_for(e.at);
  if (date) {
    serve_review(out, e.player, *date);
  } else {
    menu(out, e.player);
  }
}

std::vector<OutboundMessage> Dispatcher::flush_notifications() {
  std::lock_guard lock(mutex_);
  return flush_locked();
}

std::vector<OutboundMessage> Dispatcher::flush_locked() {
  Out out;
  for (const auto& n : engine_.notifications_since(notified_seq_)) {
    notified_seq_ = n.seq;
    const auto text = catalog_.render(n.key, n.params);
    for (const auto& r : n.recipients) {
      OutboundMessage m;
      m.kind = OutboundMessage::Kind::Push;
      m.recipient = r;
      m.key = n.key;
      m.text = text;
      m.id = transport_.deliver(m);
      out.push_back(std::move(m));
    }
  }
  return out;
}

}  // namespace idiomcraft
