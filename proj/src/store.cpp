#include "idiomcraft/store.hpp"

#include <unistd.h>

#include <fstream>
#include <sstream>

#include "idiomcraft/error.hpp"

namespace idiomcraft {

using nlohmann::json;

namespace {

template <typename... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

json header_line() {
  return json{{"format", "idiomcraft-events"}, {"version", kEventLogVersion}};
}

void check_header(const json& j) {
  if (!j.is_object() || j.value("format", "") != "idiomcraft-events") {
    fail(ErrorCode::CorruptLog, "not an idiomcraft event log");
  }
  if (j.value("version", 0) != kEventLogVersion) {
    fail(ErrorCode::CorruptLog, "unsupported event log version " + j.value("version", json()).dump());
  }
}

template <typename T>
T field(const json& payload, const char* name) {
  const auto it = payload.find(name);
  if (it == payload.end()) fail(ErrorCode::CorruptLog, std::string("event payload lacks '") + name + "'");
  return it->get<T>();
}

}  // namespace

std::string command_kind(const Command& command) {
  return std::visit(overloaded{
                        [](const RegisterPlayer&) { return "RegisterPlayer"; },
                        [](const AddIdiom&) { return "AddIdiom"; },
                        [](const ScheduleIdiom&) { return "ScheduleIdiom"; },
                        [](const OpenDay&) { return "OpenDay"; },
                        [](const CloseDay&) { return "CloseDay"; },
                        [](const CommitSubmission&) { return "CommitSubmission"; },
                        [](const RecordReview&) { return "RecordReview"; },
                        [](const StartHappyHour&) { return "StartHappyHour"; },
                        [](const BanPlayer&) { return "BanPlayer"; },
                        [](const UnbanPlayer&) { return "UnbanPlayer"; },
                        [](const FlagSubmission&) { return "FlagSubmission"; },
                    },
                    command);
}

Timestamp command_time(const Command& command) {
  return std::visit([](const auto& c) { return c.at; }, command);
}

EventRecord to_record(const Command& command, std::uint64_t seq) {
  EventRecord r;
  r.seq = seq;
  r.kind = command_kind(command);
  r.timestamp = command_time(command);
  r.payload = std::visit(
      overloaded{
          [](const RegisterPlayer& c) { return json{{"player", c.player}, {"name", c.name}}; },
          [](const AddIdiom& c) { return json{{"line", c.line}}; },
          [](const ScheduleIdiom& c) { return json{{"date", c.date}, {"idiom_id", c.idiom_id}}; },
          [](const OpenDay& c) {
            return json{{"date", c.date}, {"idiom_id", c.idiom_id}, {"seed", c.seed}};
          },
          [](const CloseDay& c) { return json{{"date", c.date}}; },
          [](const CommitSubmission& c) {
            return json{{"player", c.player}, {"text", c.text}, {"idiomatic", c.idiomatic}};
          },
          [](const RecordReview& c) {
            return json{{"reviewer", c.reviewer},
                        {"submission_id", c.submission_id},
                        {"verdict", std::string(to_string(c.verdict))}};
          },
          [](const StartHappyHour& c) { return json{{"moderator", c.moderator}}; },
          [](const BanPlayer& c) {
            return json{{"moderator", c.moderator}, {"player", c.player}, {"reason", c.reason}};
          },
          [](const UnbanPlayer& c) {
            return json{{"moderator", c.moderator}, {"player", c.player}, {"reason", c.reason}};
          },
          [](const FlagSubmission& c) {
            return json{{"moderator", c.moderator},
                        {"submission_id", c.submission_id},
                        {"reason", c.reason}};
          },
      },
      command);
  return r;
}

Command from_record(const EventRecord& r) {
  const auto& p = r.payload;
  const auto at = r.timestamp;
  try {
    if (r.kind == "RegisterPlayer") {
      return RegisterPlayer{field<std::string>(p, "player"), field<std::string>(p, "name"), at};
    }
    if (r.kind == "AddIdiom") return AddIdiom{field<std::string>(p, "line"), at};
    if (r.kind == "ScheduleIdiom") {
      return ScheduleIdiom{field<std::string>(p, "date"), field<std::string>(p, "idiom_id"), at};
    }
    if (r.kind == "OpenDay") {
      return OpenDay{field<std::string>(p, "date"), field<std::string>(p, "idiom_id"),
                     field<std::uint64_t>(p, "seed"), at};
    }
    if (r.kind == "CloseDay") return CloseDay{field<std::string>(p, "date"), at};
    if (r.kind == "CommitSubmission") {
      return CommitSubmission{field<std::string>(p, "player"), field<std::string>(p, "text"),
                              field<bool>(p, "idiomatic"), at};
    }
    if (r.kind == "RecordReview") {
      return RecordReview{field<std::string>(p, "reviewer"), field<std::uint64_t>(p, "submission_id"),
                          verdict_from_string(field<std::string>(p, "verdict")), at};
    }
    if (r.kind == "StartHappyHour") return StartHappyHour{field<std::string>(p, "moderator"), at};
    if (r.kind == "BanPlayer") {
      return BanPlayer{field<std::string>(p, "moderator"), field<std::string>(p, "player"),
                       field<std::string>(p, "reason"), at};
    }
    if (r.kind == "UnbanPlayer") {
      return UnbanPlayer{field<std::string>(p, "moderator"), field<std::string>(p, "player"),
                         field<std::string>(p, "reason"), at};
    }
    if (r.kind == "FlagSubmission") {
      return FlagSubmission{field<std::string>(p, "moderator"), field<std::uint64_t>(p, "submission_id"),
                            field<std::string>(p, "reason"), at};
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::CorruptLog, "event " + std::to_string(r.seq) + ": " + e.what());
  }
  fail(ErrorCode::CorruptLog, "unknown event kind '" + r.kind + "'");
}

json record_to_json(const EventRecord& r) {
  return json{{"seq", r.seq},
              {"kind", r.kind},
              {"timestamp", clock::format_timestamp(r.timestamp)},
              {"payload", r.payload}};
}

EventRecord record_from_json(const json& j) {
  try {
    EventRecord r;
    r.seq = j.at("seq").get<std::uint64_t>();
    r.kind = j.at("kind").get<std::string>();
    r.timestamp = clock::parse_timestamp(j.at("timestamp").get<std::string>());
    r.payload = j.at("payload");
    return r;
  } catch (const json::exception& e) {
    fail(ErrorCode::CorruptLog, std::string("malformed event record: ") + e.what());
  } catch (const GameError& e) {
    fail(ErrorCode::CorruptLog, std::string("malformed event record: ") + e.what());
  }
}

// --- memory log -------------------------------------------------------------

std::uint64_t MemoryEventLog::append(EventRecord record, std::optional<std::uint64_t> expected_seq) {
  std::lock_guard lock(mutex_);
  const auto next = records_.size() + 1;
  if (expected_seq && *expected_seq != next) {
    fail(ErrorCode::ValidationFailed, "stale append: expected seq " + std::to_string(*expected_seq) +
                                          " but log is at " + std::to_string(next));
  }
  record.seq = next;
  records_.push_back(std::move(record));
  return next;
}

std::vector<EventRecord> MemoryEventLog::records() const {
  std::lock_guard lock(mutex_);
  return records_;
}

std::uint64_t MemoryEventLog::last_seq() const {
  std::lock_guard lock(mutex_);
  return records_.size();
}

// --- file log ---------------------------------------------------------------

std::vector<EventRecord> parse_event_log(const std::string& content) {
  std::vector<EventRecord> out;
  std::size_t start = 0;
  bool header_seen = false;
  while (start < content.size()) {
    const auto nl = content.find('\n', start);
    if (nl == std::string::npos) break;  // torn tail: never acknowledged
    const auto line = std::string_view(content).substr(start, nl - start);
    start = nl + 1;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      fail(ErrorCode::CorruptLog, std::string("unparseable event line: ") + e.what());
    }
    if (!header_seen) {
      check_header(j);
      header_seen = true;
      continue;
    }
    auto record = record_from_json(j);
    if (record.seq != out.size() + 1) {
      fail(ErrorCode::CorruptLog, "event seq gap at " + std::to_string(record.seq));
    }
    out.push_back(std::move(record));
  }
  return out;
}

std::string serialize_event_log(const std::vector<EventRecord>& records) {
  std::string out = header_line().dump() + '\n';
  for (const auto& r : records) out += record_to_json(r).dump() + '\n';
  return out;
}

std::vector<EventRecord> read_event_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::CorruptLog, "cannot open event log " + path.string());
  std::ostringstream content;
  content << in.rdbuf();
  return parse_event_log(content.str());
}

FileEventLog::FileEventLog(std::filesystem::path path, bool sync)
    : path_(std::move(path)), sync_(sync) {
  std::string valid_prefix;
  if (std::filesystem::exists(path_)) {
    std::ifstream in(path_, std::ios::binary);
    std::ostringstream content;
    content << in.rdbuf();
    const auto text = content.str();
    records_ = parse_event_log(text);
    const auto last_nl = text.rfind('\n');
    if (last_nl != std::string::npos) valid_prefix = text.substr(0, last_nl + 1);
  }
  if (valid_prefix.empty()) valid_prefix = header_line().dump() + '\n';
  // rewrite to drop a torn tail, then append from there
  const auto tmp = path_.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << valid_prefix;
    if (!out) fail(ErrorCode::CorruptLog, "cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path_);
  file_ = std::fopen(path_.c_str(), "ab");
  if (!file_) fail(ErrorCode::CorruptLog, "cannot open " + path_.string() + " for append");
}

FileEventLog::~FileEventLog() {
  if (file_) std::fclose(file_);
}

std::uint64_t FileEventLog::append(EventRecord record, std::optional<std::uint64_t> expected_seq) {
  std::lock_guard lock(mutex_);
  const auto next = records_.size() + 1;
  if (expected_seq && *expected_seq != next) {
    fail(ErrorCode::ValidationFailed, "stale append: expected seq " + std::to_string(*expected_seq) +
                                          " but log is at " + std::to_string(next));
  }
  record.seq = next;
  const auto line = record_to_json(record).dump() + '\n';
  if (std::fwrite(line.data(), 1, line.size(), file_) != line.size() || std::fflush(file_) != 0) {
    fail(ErrorCode::CorruptLog, "write to " + path_.string() + " failed");
  }
  if (sync_) ::fsync(::fileno(file_));
  records_.push_back(std::move(record));
  return next;
}

std::vector<EventRecord> FileEventLog::records() const {
  std::lock_guard lock(mutex_);
  return records_;
}

std::uint64_t FileEventLog::last_seq() const {
  std::lock_guard lock(mutex_);
  return records_.size();
}

}  // namespace idiomcraft
