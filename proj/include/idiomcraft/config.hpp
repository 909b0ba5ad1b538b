#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "idiomcraft/scoring.hpp"

namespace idiomcraft {

struct GameConfig {
  std::string language = "en";
  std::string timezone = "Europe/Istanbul";
  int window_open_minute = 11 * 60;   // inclusive
  int window_close_minute = 23 * 60;  // exclusive
  int soft_target = 100;
  int happy_hour_minutes = 60;
  int like_cooldown_minutes = 10;
  double near_duplicate_jaccard = 0.8;
  ScoringConfig scoring;

  std::string admin_token;
  std::string pseudonym_salt;

  bool in_window(int minute_of_day) const {
    return minute_of_day >= window_open_minute && minute_of_day < window_close_minute;
  }
};

/// Parses `key=value` lines (`#` comments). Unknown keys and malformed
/// values raise GameError(ConfigInvalid).
GameConfig parse_config(std::string_view content, GameConfig defaults = {});
GameConfig load_config(const std::filesystem::path& path);

std::map<std::string, std::string> config_entries(const GameConfig& config);

}  // namespace idiomcraft
