#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "idiomcraft/config.hpp"
#include "idiomcraft/engine.hpp"
#include "idiomcraft/store.hpp"
#include "idiomcraft/transport.hpp"

namespace idiomcraft::sim {

enum class AgentKind { GreedyType, NaturalMix, ReviewHeavy, NearDuplicator };
enum class ScoringRegime { Fixed30401020, Decay, Hysteresis };

std::string_view to_string(AgentKind k);
std::string_view to_string(ScoringRegime r);
ScoringRegime regime_from_string(std::string_view text);

struct AgentParams {
  AgentKind kind = AgentKind::NaturalMix;
  std::array<double, 4> weights{0.35, 0.15, 0.30, 0.20};  // A B C D
  double review_ratio = 0.5;
  double greed = 0.0;       // chance of taking the best-paying type
  double like_rate = 0.75;
  double report_rate = 0.05;
  double duplicate_rate = 0.0;
};

AgentParams default_params(AgentKind kind);

/// Fixed historical scores 30/40/20/10.
class FixedPolicy final : public TypeScorePolicy {
 public:
  TypeScores scores(const TypeCounts&, BalanceState) const override { return {30, 40, 20, 10}; }
  std::string name() const override { return "Fixed30401020"; }
};

/// 30/40/20/10 shrunk by decay^(samples of that type today), never below 1.
class DecayPolicy final : public TypeScorePolicy {
 public:
  explicit DecayPolicy(double decay) : decay_(decay) {}
  TypeScores scores(const TypeCounts& counts, BalanceState) const override;
  std::string name() const override { return "Decay"; }

 private:
  double decay_;
};

std::shared_ptr<const TypeScorePolicy> make_policy(ScoringRegime regime, const ScoringConfig& scoring,
                                                   double decay = 0.9);

/// Deterministic generator with platform-independent draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return n ? static_cast<std::size_t>(next() % n) : 0; }
  std::size_t weighted(const std::array<double, 4>& w);

 private:
  std::mt19937_64 engine_;
};

/// Builds sentences of a requested type for one idiom from word banks.
class SentenceBank {
 public:
  SentenceBank(const IdiomPattern& pattern, const LemmaDictionary& dict);
  std::string make(SampleType type, Rng& rng) const;
  /// A word absent from `sentence`, for near-duplicates.
  std::string extra_word(const std::string& sentence, Rng& rng) const;

 private:
  IdiomPattern pattern_;
  std::vector<std::string> subjects_;
  std::vector<std::string> fillers_;
  std::vector<std::string> tails_;
};

struct SimEvent {
  enum class Kind { Submitted, Rejected, Reviewed, HappyHour } kind = Kind::Submitted;
  std::string player;
  std::uint64_t submission_id = 0;
  std::string date;
};

struct SimConfig {
  int players = 20;          // acting agents
  int idle_players = 0;      // registered, never act
  int days = 1;
  std::string policy = "natural";  // greedy | natural | review_heavy | near_duplicator | mixed
  ScoringRegime regime = ScoringRegime::Hysteresis;
  std::uint64_t seed = 1;
  int submissions_per_day = 100;
  std::string language = "en";
  std::string start_date = "2026-01-05";
  int happy_hour_at_submission = 50;  // 0 disables
  double decay = 0.9;
  int warmup = 15;                    // submissions per day left out of gap bounds
  std::filesystem::path data_dir;
  GameConfig game;
  std::function<void(const Engine&, const SimEvent&)> observer;
};

struct SimDay {
  std::string date;
  std::string idiom_id;
  int submissions = 0;
  int reviews = 0;
  int rejected_duplicates = 0;
  int near_duplicates = 0;
  int misclassified = 0;  // stored type differs from the generated one
  TypeCounts counts;
  std::int64_t max_gap = 0;               // max |A - C|
  std::int64_t max_gap_after_warmup = 0;
  int balance_changes = 0;
  std::vector<BalancePoint> timeline;
  std::string fingerprint;

  double b_share() const {
    return counts.total() ? static_cast<double>(counts[SampleType::B]) / static_cast<double>(counts.total()) : 0.0;
  }
};

struct SimReport {
  SimConfig config;
  std::vector<SimDay> days;
  std::string state_hash;

  bool empty() const { return days.empty(); }
  std::string jsonl() const;
  std::string csv() const;
};

struct SimRun {
  SimReport report;
  GameState state;
  std::vector<EventRecord> events;
  std::vector<OutboundMessage> messages;
};

/// Throws ConfigInvalid.
void validate(const SimConfig& config);
SimRun run_sim(const SimConfig& config);

/// Hash over a day's leaderboard, counts, balance timeline and notifications.
std::string day_fingerprint(const GameState& state, const std::string& date);

std::vector<AgentKind> agent_kinds(const std::string& policy, int players);

}  // namespace idiomcraft::sim
