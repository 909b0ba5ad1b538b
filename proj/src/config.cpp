#include "idiomcraft/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "idiomcraft/clock.hpp"
#include "idiomcraft/error.hpp"
#include "idiomcraft/unicode.hpp"

namespace idiomcraft {

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    fail(ErrorCode::ConfigInvalid, "config key '" + key + "' expects a number, got '" + value + "'");
  }
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double out = std::stod(value, &used);
    if (used == value.size()) return out;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::ConfigInvalid, "config key '" + key + "' expects a number, got '" + value + "'");
}

using Setter = std::function<void(GameConfig&, const std::string&, const std::string&)>;

template <typename T>
Setter number(T GameConfig::*field) {
  return [field](GameConfig& c, const std::string& k, const std::string& v) {
    c.*field = parse_number<T>(k, v);
  };
}

template <typename T>
Setter scoring_number(T ScoringConfig::*field) {
  return [field](GameConfig& c, const std::string& k, const std::string& v) {
    c.scoring.*field = parse_number<T>(k, v);
  };
}

Setter base_score(Points TypeScores::*field) {
  return [field](GameConfig& c, const std::string& k, const std::string& v) {
    c.scoring.base.*field = parse_number<Points>(k, v);
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"language", [](GameConfig& c, auto&, const std::string& v) { c.language = v; }},
      {"timezone", [](GameConfig& c, auto&, const std::string& v) { c.timezone = v; }},
      {"window_open", [](GameConfig& c, auto&, const std::string& v) { c.window_open_minute = clock::parse_hhmm(v); }},
      {"window_close", [](GameConfig& c, auto&, const std::string& v) { c.window_close_minute = clock::parse_hhmm(v); }},
      {"soft_target", number(&GameConfig::soft_target)},
      {"happy_hour_minutes", number(&GameConfig::happy_hour_minutes)},
      {"like_cooldown_minutes", number(&GameConfig::like_cooldown_minutes)},
      {"near_duplicate_jaccard",
       [](GameConfig& c, const std::string& k, const std::string& v) { c.near_duplicate_jaccard = parse_double(k, v); }},
      {"admin_token", [](GameConfig& c, auto&, const std::string& v) { c.admin_token = v; }},
      {"pseudonym_salt", [](GameConfig& c, auto&, const std::string& v) { c.pseudonym_salt = v; }},
      {"scoring.base_a", base_score(&TypeScores::a)},
      {"scoring.base_b", base_score(&TypeScores::b)},
      {"scoring.base_c", base_score(&TypeScores::c)},
      {"scoring.base_d", base_score(&TypeScores::d)},
      {"scoring.boost_delta", scoring_number(&ScoringConfig::boost_delta)},
      {"scoring.activate_gap", scoring_number(&ScoringConfig::activate_gap)},
      {"scoring.release_gap", scoring_number(&ScoringConfig::release_gap)},
      {"scoring.level_divisor", scoring_number(&ScoringConfig::level_divisor)},
      {"scoring.review_points", scoring_number(&ScoringConfig::review_points)},
      {"scoring.happy_hour_review_points", scoring_number(&ScoringConfig::happy_hour_review_points)},
      {"scoring.author_threshold", scoring_number(&ScoringConfig::author_threshold)},
      {"scoring.reviewer_threshold", scoring_number(&ScoringConfig::reviewer_threshold)},
      {"scoring.streak_days", scoring_number(&ScoringConfig::streak_days)},
      {"scoring.early_bird_minutes", scoring_number(&ScoringConfig::early_bird_minutes)},
      {"balance.compare",
       [](GameConfig& c, const std::string& k, const std::string& v) {
         if (v == "a_vs_c") {
           c.scoring.compare = BalanceCompare::AVersusC;
         } else if (v == "idio_vs_nonidio") {
           c.scoring.compare = BalanceCompare::IdiomaticVersusNonidiomatic;
         } else {
           fail(ErrorCode::ConfigInvalid, "config key '" + k + "' expects a_vs_c or idio_vs_nonidio");
         }
       }},
  };
  return table;
}

void validate(const GameConfig& c) {
  if (c.window_open_minute >= c.window_close_minute) {
    fail(ErrorCode::ConfigInvalid, "window_open must precede window_close");
  }
  if (c.soft_target < 0 || c.happy_hour_minutes <= 0 || c.like_cooldown_minutes < 0) {
    fail(ErrorCode::ConfigInvalid, "soft_target, happy_hour_minutes and like_cooldown_minutes must be positive");
  }
  if (c.scoring.level_divisor <= 0 || c.scoring.release_gap < 0 ||
      c.scoring.activate_gap < c.scoring.release_gap) {
    fail(ErrorCode::ConfigInvalid, "scoring thresholds are inconsistent");
  }
}

}  // namespace

GameConfig parse_config(std::string_view content, GameConfig config) {
  std::istringstream in{std::string(content)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto trimmed = unicode::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::ConfigInvalid, "config line " + std::to_string(line_no) + ": expected key=value");
    }
    const auto key = unicode::trim(std::string_view(trimmed).substr(0, eq));
    const auto value = unicode::trim(std::string_view(trimmed).substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) fail(ErrorCode::ConfigInvalid, "unknown config key '" + key + "'");
    it->second(config, key, value);
  }
  validate(config);
  return config;
}

GameConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigInvalid, "cannot open config " + path.string());
  std::ostringstream content;
  content << in.rdbuf();
  return parse_config(content.str());
}

std::map<std::string, std::string> config_entries(const GameConfig& c) {
  const auto& s = c.scoring;
  return {
      {"language", c.language},
      {"timezone", c.timezone},
      {"window_open", clock::format_hhmm(c.window_open_minute)},
      {"window_close", clock::format_hhmm(c.window_close_minute)},
      {"soft_target", std::to_string(c.soft_target)},
      {"happy_hour_minutes", std::to_string(c.happy_hour_minutes)},
      {"like_cooldown_minutes", std::to_string(c.like_cooldown_minutes)},
      {"scoring.base_a", std::to_string(s.base.a)},
      {"scoring.base_b", std::to_string(s.base.b)},
      {"scoring.base_c", std::to_string(s.base.c)},
      {"scoring.base_d", std::to_string(s.base.d)},
      {"scoring.boost_delta", std::to_string(s.boost_delta)},
      {"scoring.activate_gap", std::to_string(s.activate_gap)},
      {"scoring.release_gap", std::to_string(s.release_gap)},
      {"scoring.level_divisor", std::to_string(s.level_divisor)},
      {"balance.compare", s.compare == BalanceCompare::AVersusC ? "a_vs_c" : "idio_vs_nonidio"},
  };
}

}  // namespace idiomcraft
