#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "idiomcraft/engine.hpp"
#include "idiomcraft/state.hpp"

// JSON views of engine types, used by the admin API, reports and state hashing.
namespace idiomcraft {

void to_json(nlohmann::json& j, const TypeScores& s);
void to_json(nlohmann::json& j, const TypeCounts& c);
void to_json(nlohmann::json& j, const IdiomPattern& p);
void to_json(nlohmann::json& j, const Submission& s);
void to_json(nlohmann::json& j, const Review& r);
void to_json(nlohmann::json& j, const PointEvent& e);
void to_json(nlohmann::json& j, const ModerationAction& m);
void to_json(nlohmann::json& j, const Notification& n);
void to_json(nlohmann::json& j, const HappyHour& h);
void to_json(nlohmann::json& j, const BalancePoint& b);
void to_json(nlohmann::json& j, const DayState& d);
void to_json(nlohmann::json& j, const PlayerState& p);
void to_json(nlohmann::json& j, const GameState& g);
void to_json(nlohmann::json& j, const ScoreboardRow& r);
void to_json(nlohmann::json& j, const ScoreboardView& v);

std::string sha256_hex(std::string_view data);

}  // namespace idiomcraft
