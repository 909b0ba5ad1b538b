#include "idiomcraft/json_io.hpp"

#include <openssl/evp.h>

#include <cstdio>

namespace idiomcraft {

using nlohmann::json;

void to_json(json& j, const TypeScores& s) {
  j = json{{"a", s.a}, {"b", s.b}, {"c", s.c}, {"d", s.d}};
}

void to_json(json& j, const TypeCounts& c) {
  j = json{{"A", c[SampleType::A]}, {"B", c[SampleType::B]}, {"C", c[SampleType::C]}, {"D", c[SampleType::D]}};
}

void to_json(json& j, const IdiomPattern& p) {
  j = json{{"id", p.id},
           {"language", p.language},
           {"pattern", p.pattern_text()},
           {"constituents", p.constituent_lemmas()},
           {"literal_gloss", p.literal_gloss},
           {"gloss", p.gloss},
           {"ordered", p.ordered}};
}

void to_json(json& j, const Submission& s) {
  j = json{{"id", s.id},
           {"date", s.date},
           {"language", s.language},
           {"idiom_id", s.idiom_id},
           {"author", s.author},
           {"text", s.text},
           {"idiomatic", s.idiomatic},
           {"constituent_positions", s.constituent_positions},
           {"gap_tokens", s.gap_tokens},
           {"sample_type", std::string(to_string(s.sample_type))},
           {"score_snapshot", s.score_snapshot},
           {"likes", s.likes},
           {"dislikes", s.dislikes},
           {"reports", s.reports},
           {"status", std::string(to_string(s.status))},
           {"near_duplicate_of", s.near_duplicate_of ? json(*s.near_duplicate_of) : json(nullptr)},
           {"tip_key", s.tip_key},
           {"created_at", clock::format_timestamp(s.created_at)}};
}

void to_json(json& j, const Review& r) {
  j = json{{"reviewer", r.reviewer},
           {"submission_id", r.submission_id},
           {"verdict", std::string(to_string(r.verdict))},
           {"at", clock::format_timestamp(r.at)},
           {"points_awarded", r.points_awarded}};
}

void to_json(json& j, const PointEvent& e) {
  j = json{{"seq", e.seq},
           {"player", e.player},
           {"date", e.date},
           {"points", e.points},
           {"reason", std::string(to_string(e.reason))},
           {"submission_id", e.submission_id},
           {"at", clock::format_timestamp(e.at)}};
}

void to_json(json& j, const ModerationAction& m) {
  j = json{{"moderator", m.moderator},
           {"action", std::string(to_string(m.action))},
           {"target", m.target},
           {"reason", m.reason},
           {"at", clock::format_timestamp(m.at)}};
}

void to_json(json& j, const Notification& n) {
  j = json{{"seq", n.seq},
           {"kind", std::string(to_string(n.kind))},
           {"date", n.date},
           {"recipients", n.recipients},
           {"key", n.key},
           {"params", n.params},
           {"sent_at", clock::format_timestamp(n.sent_at)}};
}

void to_json(json& j, const HappyHour& h) {
  j = json{{"start", clock::format_timestamp(h.start)}, {"end", clock::format_timestamp(h.end)}};
}

void to_json(json& j, const BalancePoint& b) {
  j = json{{"submission_id", b.submission_id},
           {"at", clock::format_timestamp(b.at)},
           {"counts", b.counts},
           {"state", std::string(to_string(b.state))},
           {"changed", b.changed}};
}

void to_json(json& j, const DayState& d) {
  j = json{{"date", d.date},
           {"idiom_id", d.idiom_id},
           {"seed", d.seed},
           {"closed", d.closed},
           {"submission_count", d.submission_count},
           {"type_counts", d.type_counts},
           {"balance", std::string(to_string(d.balance))},
           {"balance_timeline", d.balance_timeline},
           {"happy_hours", d.happy_hours},
           {"target_reached", d.target_reached},
           {"active_players", d.active_players},
           {"submission_ids", d.submission_ids}};
}

void to_json(json& j, const PlayerState& p) {
  json achievements = json::object();
  for (const auto& [date, list] : p.achievements) {
    json items = json::array();
    for (const auto& a : list) {
      items.push_back({{"id", std::string(to_string(a.id))}, {"at", clock::format_timestamp(a.unlocked_at)}});
    }
    achievements[date] = std::move(items);
  }
  j = json{{"id", p.id},
           {"name", p.name},
           {"banned", p.banned},
           {"registered_at", clock::format_timestamp(p.registered_at)},
           {"active_days", p.active_days},
           {"achievements", std::move(achievements)},
           {"streak_unlocked", p.streak_unlocked},
           {"last_like_notice", p.last_like_notice ? json(*p.last_like_notice) : json(nullptr)},
           {"submissions_by_day", p.submissions_by_day},
           {"reviews_by_day", p.reviews_by_day}};
}

void to_json(json& j, const GameState& g) {
  json idioms = json::object();
  for (const auto& [id, p] : g.idioms) idioms[id] = p;
  json days = json::object();
  for (const auto& [date, d] : g.days) days[date] = d;
  json players = json::object();
  for (const auto& [id, p] : g.players) players[id] = p;
  j = json{{"language", g.language},
           {"idioms", std::move(idioms)},
           {"schedule", g.schedule},
           {"days", std::move(days)},
           {"players", std::move(players)},
           {"submissions", g.submissions},
           {"reviews", g.reviews},
           {"points", g.points},
           {"notifications", g.notifications},
           {"moderation", g.moderation},
           {"last_seq", g.last_seq}};
}

void to_json(json& j, const ScoreboardRow& r) {
  j = json{{"rank", r.rank}, {"player", r.player}, {"name", r.name}, {"points", r.points}};
}

void to_json(json& j, const ScoreboardView& v) {
  j = json{{"top", v.top},
           {"viewer", v.viewer ? json(*v.viewer) : json(nullptr)},
           {"remaining_to_target", v.remaining_to_target ? json(*v.remaining_to_target) : json(nullptr)}};
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
  std::string out;
  out.reserve(length * 2);
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    out += buf;
  }
  return out;
}

}  // namespace idiomcraft
