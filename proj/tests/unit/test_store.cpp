#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "fixtures.hpp"
#include "idiomcraft/store.hpp"

using namespace idiomcraft;
using fixtures::at;
using fixtures::error_of;
using fixtures::kDay;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("idiomcraft_store_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void play(Engine& e) {
  e.register_player("p1", "One", at(kDay, 9, 0));
  e.register_player("p2", "Two", at(kDay, 9, 0));
  e.register_player("p3", "Three", at(kDay, 9, 0));
  const auto p = e.add_idiom(fixtures::kPullLeg, at(kDay, 9, 0));
  e.open_day(kDay, p.id, at(kDay, 10, 0), 42);
  e.label_submission("p1", "They pulled my leg.", true, at(kDay, 12, 0));
  e.label_submission("p2", "She pulled his long hairy leg.", false, at(kDay, 12, 1));
  e.start_happy_hour("mod", at(kDay, 12, 5));
  e.record_review("p2", 1, Verdict::Like, at(kDay, 12, 6));
  e.record_review("p3", 1, Verdict::Dislike, at(kDay, 12, 7));
  e.record_review("p1", 2, Verdict::Report, at(kDay, 12, 8));
  e.ban("mod", "p3", "spam", at(kDay, 13, 0));
  e.flag_submission("mod", 2, "bad", at(kDay, 13, 1));
  e.unban("mod", "p3", "", at(kDay, 13, 2));
  e.close_day(kDay, at(kDay, 23, 0));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("memory log sequencing") {
  MemoryEventLog log;
  const Command c = RegisterPlayer{"p1", "One", 5};
  CHECK(log.append(to_record(c, 1), 1) == 1u);
  CHECK(error_of([&] { log.append(to_record(c, 2), 5); }) == ErrorCode::ValidationFailed);
  CHECK(log.append(to_record(c, 2)) == 2u);
  CHECK(log.last_seq() == 2u);
}

TEST_CASE("first engine event gets seq 1 and commands round-trip through records") {
  fixtures::Game g;
  g.players(1);
  const auto records = g.log.records();
  REQUIRE(records.size() == 1);
  CHECK(records[0].seq == 1u);
  CHECK(records[0].kind == "RegisterPlayer");
  CHECK(to_record(from_record(records[0]), 1) == records[0]);
  CHECK(record_from_json(record_to_json(records[0])) == records[0]);
}

TEST_CASE("stale precondition is rejected before append") {
  fixtures::Game g;
  g.players(1);
  const auto before = g.log.last_seq();
  CHECK(error_of([&] { g.engine.register_player("p1", "again", at(kDay, 9, 0)); }) == ErrorCode::AlreadyRegistered);
  CHECK(g.log.last_seq() == before);
}

TEST_CASE("replay reproduces the live state hash") {
  MemoryEventLog log;
  Engine live(GameConfig{}, fixtures::dictionary(), log);
  play(live);

  MemoryEventLog copy;
  for (const auto& r : log.records()) copy.append(r);
  Engine replayed(GameConfig{}, fixtures::dictionary(), copy);
  replayed.replay_log();
  CHECK(replayed.state_hash() == live.state_hash());
  CHECK(replayed.snapshot().notifications.size() == live.snapshot().notifications.size());
}

TEST_CASE("file log persists and reopens") {
  TempDir dir;
  const auto path = dir.path / "events.jsonl";
  std::string hash;
  {
    FileEventLog log(path, false);
    Engine e(GameConfig{}, fixtures::dictionary(), log);
    play(e);
    hash = e.state_hash();
  }
  FileEventLog log(path, false);
  Engine e(GameConfig{}, fixtures::dictionary(), log);
  e.replay_log();
  CHECK(e.state_hash() == hash);
  e.register_player("p4", "Four", at(kDay, 23, 30));
  CHECK(read_event_log(path).size() == log.records().size());
  CHECK(parse_event_log(serialize_event_log(log.records())) == log.records());
}

TEST_CASE("truncating the log at any byte leaves a loadable prefix state") {
  TempDir dir;
  const auto path = dir.path / "events.jsonl";
  std::vector<std::string> prefix_hashes;  // hash after k records
  {
    MemoryEventLog mem;
    Engine e(GameConfig{}, fixtures::dictionary(), mem);
    play(e);
    const auto all = mem.records();
    for (std::size_t k = 0; k <= all.size(); ++k) {
      MemoryEventLog part;
      for (std::size_t i = 0; i < k; ++i) part.append(all[i]);
      Engine r(GameConfig{}, fixtures::dictionary(), part);
      r.replay_log();
      prefix_hashes.push_back(r.state_hash());
    }
    std::ofstream(path, std::ios::binary) << serialize_event_log(all);
  }
  const auto full = slurp(path);
  for (std::size_t cut = 0; cut <= full.size(); ++cut) {
    const auto cut_path = dir.path / "cut.jsonl";
    std::ofstream(cut_path, std::ios::binary | std::ios::trunc) << full.substr(0, cut);
    FileEventLog log(cut_path, false);
    Engine e(GameConfig{}, fixtures::dictionary(), log);
    e.replay_log();
    const auto n = log.records().size();
    REQUIRE(n < prefix_hashes.size());
    CHECK(e.state_hash() == prefix_hashes[n]);
    // the reopened log accepts the next event at the right seq
    e.register_player("late", "Late", at(kDay, 23, 30));
    CHECK(log.last_seq() == n + 1);
  }
}

TEST_CASE("corrupt logs are reported") {
  CHECK(error_of([] { parse_event_log("not json\n"); }) == ErrorCode::CorruptLog);
  MemoryEventLog mem;
  Engine e(GameConfig{}, fixtures::dictionary(), mem);
  e.register_player("p1", "One", 0);
  auto records = mem.records();
  records[0].seq = 2;
  CHECK(error_of([&] { parse_event_log(serialize_event_log(records)); }) == ErrorCode::CorruptLog);

  // a record that does not validate against the state built so far
  MemoryEventLog bad;
  bad.append(to_record(Command{RegisterPlayer{"p1", "One", 0}}, 1));
  bad.append(to_record(Command{RegisterPlayer{"p1", "One", 0}}, 2));
  Engine r(GameConfig{}, fixtures::dictionary(), bad);
  CHECK(error_of([&] { r.replay_log(); }) == ErrorCode::CorruptLog);
}
