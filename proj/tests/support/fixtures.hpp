#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "idiomcraft/engine.hpp"
#include "idiomcraft/error.hpp"
#include "idiomcraft/store.hpp"

namespace fixtures {

using namespace idiomcraft;

template <class F>
std::optional<ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const GameError& e) {
    return e.code();
  }
  return std::nullopt;
}

inline std::filesystem::path data_dir() { return IDIOMCRAFT_DATA_DIR; }

inline LemmaDictionary dictionary(const std::string& language = "en") {
  return LemmaDictionary::from_file(data_dir() / "lemmas" / (language + ".tsv"), language);
}

inline Timestamp at(const std::string& date, int hour, int minute, int second = 0) {
  return clock::make_timestamp(clock::parse_date(date), hour, minute, second);
}

inline const char* kDay = "2020-10-28";

/// Engine over an in-memory log with players p1..pN registered.
struct Game {
  MemoryEventLog log;
  Engine engine;

  explicit Game(GameConfig config = {}, std::shared_ptr<const TypeScorePolicy> policy = nullptr)
      : engine(config, dictionary(config.language), log, std::move(policy)) {}

  void players(int n, const std::string& date = kDay) {
    for (int i = 1; i <= n; ++i) {
      engine.register_player("p" + std::to_string(i), "Player " + std::to_string(i), at(date, 9, 0));
    }
  }

  /// Adds the idiom line and opens `date` with it.
  void open(const std::string& line, const std::string& date = kDay, std::uint64_t seed = 7) {
    const auto p = engine.add_idiom(line, at(date, 9, 0));
    engine.open_day(date, p.id, at(date, 10, 0), seed);
  }

  std::uint64_t commit(const std::string& player, const std::string& text, bool idiomatic, Timestamp when) {
    return *engine.label_submission(player, text, idiomatic, when).submission_id;
  }
};

inline const char* kHoldTongue = "hold_tongue\thold * tongue\tto hold the tongue\tto stay silent";
inline const char* kPullLeg = "pull_leg\tpull * leg\tto pull the leg\tto tease someone";
inline const char* kGoHome = "go_home\tgo home\tto go home\tto leave";

}  // namespace fixtures
