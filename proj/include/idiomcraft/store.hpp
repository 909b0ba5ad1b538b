#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "idiomcraft/clock.hpp"
#include "idiomcraft/scoring.hpp"

namespace idiomcraft {

using clock::Timestamp;

// Commands are the only way state changes. Each accepted command is stored
// verbatim as one event; state is the left fold of the event sequence.
struct RegisterPlayer {
  std::string player;
  std::string name;
  Timestamp at = 0;
};
struct AddIdiom {
  std::string line;  // idiom list line
  Timestamp at = 0;
};
struct ScheduleIdiom {
  std::string date;
  std::string idiom_id;
  Timestamp at = 0;
};
struct OpenDay {
  std::string date;
  std::string idiom_id;  // empty: use the schedule
  std::uint64_t seed = 0;
  Timestamp at = 0;
};
struct CloseDay {
  std::string date;
  Timestamp at = 0;
};
struct CommitSubmission {
  std::string player;
  std::string text;
  bool idiomatic = true;
  Timestamp at = 0;
};
struct RecordReview {
  std::string reviewer;
  std::uint64_t submission_id = 0;
  Verdict verdict = Verdict::Like;
  Timestamp at = 0;
};
struct StartHappyHour {
  std::string moderator;
  Timestamp at = 0;
};
struct BanPlayer {
  std::string moderator;
  std::string player;
  std::string reason;
  Timestamp at = 0;
};
struct UnbanPlayer {
  std::string moderator;
  std::string player;
  std::string reason;
  Timestamp at = 0;
};
struct FlagSubmission {
  std::string moderator;
  std::uint64_t submission_id = 0;
  std::string reason;
  Timestamp at = 0;
};

using Command = std::variant<RegisterPlayer, AddIdiom, ScheduleIdiom, OpenDay, CloseDay,
                             CommitSubmission, RecordReview, StartHappyHour, BanPlayer,
                             UnbanPlayer, FlagSubmission>;

std::string command_kind(const Command& command);
Timestamp command_time(const Command& command);

struct EventRecord {
  std::uint64_t seq = 0;
  std::string kind;
  nlohmann::json payload;
  Timestamp timestamp = 0;

  bool operator==(const EventRecord&) const = default;
};

EventRecord to_record(const Command& command, std::uint64_t seq);
Command from_record(const EventRecord& record);

nlohmann::json record_to_json(const EventRecord& record);
EventRecord record_from_json(const nlohmann::json& j);

inline constexpr int kEventLogVersion = 1;

/// Append-only, gapless event sequence starting at seq 1.
class EventLog {
 public:
  virtual ~EventLog() = default;

  /// Stores the record; durable before returning. `expected_seq`, when set,
  /// must equal the seq this record will receive, otherwise ValidationFailed.
  virtual std::uint64_t append(EventRecord record, std::optional<std::uint64_t> expected_seq = {}) = 0;
  virtual std::vector<EventRecord> records() const = 0;
  virtual std::uint64_t last_seq() const = 0;
};

class MemoryEventLog final : public EventLog {
 public:
  std::uint64_t append(EventRecord record, std::optional<std::uint64_t> expected_seq = {}) override;
  std::vector<EventRecord> records() const override;
  std::uint64_t last_seq() const override;

 private:
  mutable std::mutex mutex_;
  std::vector<EventRecord> records_;
};

/// JSON-lines file: a version header line followed by one record per line.
/// A torn trailing line (crash mid-write) is dropped on open.
class FileEventLog final : public EventLog {
 public:
  explicit FileEventLog(std::filesystem::path path, bool sync = true);
  ~FileEventLog() override;
  FileEventLog(const FileEventLog&) = delete;
  FileEventLog& operator=(const FileEventLog&) = delete;

  std::uint64_t append(EventRecord record, std::optional<std::uint64_t> expected_seq = {}) override;
  std::vector<EventRecord> records() const override;
  std::uint64_t last_seq() const override;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  bool sync_;
  std::FILE* file_ = nullptr;
  mutable std::mutex mutex_;
  std::vector<EventRecord> records_;
};

/// Reads a log file's complete records without opening it for writing.
std::vector<EventRecord> read_event_log(const std::filesystem::path& path);
std::vector<EventRecord> parse_event_log(const std::string& content);
std::string serialize_event_log(const std::vector<EventRecord>& records);

}  // namespace idiomcraft
