#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <thread>

#include <unistd.h>

#include <httplib.h>
#include <json.hpp>

#include "fixtures.hpp"
#include "idiomcraft/admin_api.hpp"
#include "idiomcraft/corpus.hpp"

using namespace idiomcraft;
using fixtures::at;
using fixtures::kDay;
using nlohmann::json;

namespace {

constexpr const char* kAuth = "Bearer s3cret";

struct Admin {
  fixtures::Game game;
  Timestamp now = at(kDay, 10, 0);
  AdminApi api{game.engine, "s3cret", [this] { return now; }};

  ApiResponse call(const std::string& method, const std::string& path, const std::string& body = {},
                   std::map<std::string, std::string> query = {}, const std::string& auth = kAuth) {
    return api.handle({method, path, std::move(query), body, auth});
  }
  json ok(const std::string& method, const std::string& path, const std::string& body = {}, int status = 200) {
    const auto r = call(method, path, body);
    INFO(r.body);
    REQUIRE(r.status == status);
    return json::parse(r.body);
  }
};

std::string sentence(int i) { return "Story " + std::to_string(i) + " about how they pulled my leg."; }

}  // namespace

TEST_CASE("authentication") {
  Admin a;
  CHECK(a.call("GET", "/api/reports", {}, {}, "").status == 401);
  CHECK(a.call("GET", "/api/reports", {}, {}, "Bearer wrong").status == 401);
  CHECK(a.call("GET", "/api/reports", {}, {}, "s3cret").status == 401);
  CHECK(a.call("GET", "/api/reports").status == 200);

  fixtures::Game g;
  AdminApi open_api(g.engine, "", [] { return Timestamp{0}; });
  CHECK(open_api.handle({"GET", "/api/reports", {}, {}, "Bearer "}).status == 401);
}

TEST_CASE("idiom, day and happy hour lifecycle") {
  Admin a;
  a.game.players(3);
  auto idiom = a.ok("POST", "/api/idioms", std::string(fixtures::kPullLeg) + "\n", 201);
  CHECK(idiom["id"] == "pull_leg");
  CHECK(a.call("POST", "/api/idioms", fixtures::kPullLeg).status == 409);
  CHECK(a.call("POST", "/api/idioms", "bad line").status == 422);
  idiom = a.ok("POST", "/api/idioms",
               json{{"line", fixtures::kHoldTongue}, {"date", "2020-10-29"}}.dump(), 201);
  CHECK(idiom["scheduled_for"] == "2020-10-29");

  CHECK(a.call("POST", "/api/days/2020-10-30/open", "{}").status == 422);
  CHECK(a.call("POST", "/api/days/2020-10-28/open", R"({"idiom_id": "nope"})").status == 422);
  const auto day = a.ok("POST", "/api/days/2020-10-28/open", R"({"idiom_id": "pull_leg", "seed": 9})");
  CHECK(day["idiom_id"] == "pull_leg");
  CHECK(a.call("POST", "/api/days/2020-10-28/open", R"({"idiom_id": "pull_leg"})").status == 409);
  CHECK(a.call("POST", "/api/days/2020-10-28/open", "{not json").status == 422);
  CHECK(a.call("POST", "/api/days/2020-10-28/open", R"({"idiom_id": 5})").status == 422);

  CHECK(a.call("POST", "/api/happy-hour", "{}").status == 409);  // 10:00 is outside the window
  a.now = at(kDay, 17, 0);
  const auto hh = a.ok("POST", "/api/happy-hour", R"({"moderator": "m1"})");
  CHECK(hh["start"] == "2020-10-28T17:00:00");
  CHECK(hh["end"] == "2020-10-28T18:00:00");
  CHECK(hh["minutes"] == 60);
  CHECK(a.call("POST", "/api/happy-hour", "{}").status == 409);

  a.now = at(kDay, 23, 0);
  CHECK(a.ok("POST", "/api/days/2020-10-28/close")["closed"] == true);
  CHECK(a.call("POST", "/api/days/2020-10-28/close").status == 409);
  CHECK(a.call("POST", "/api/days/2020-11-01/close").status == 404);
}

TEST_CASE("routing errors") {
  Admin a;
  CHECK(a.call("GET", "/api/nothing").status == 404);
  CHECK(a.call("GET", "/api/days/2020-10-28/stats").status == 404);
  CHECK(a.call("GET", "/api/leaderboard/2020-10-28").status == 404);
  CHECK(a.call("DELETE", "/api/reports").status == 405);
  CHECK(a.call("GET", "/api/days/2020-10-28/open").status == 405);
  CHECK(a.call("POST", "/api/players/ghost/ban", "{}").status == 404);
  CHECK(a.call("POST", "/api/submissions/3/flag", "{}").status == 404);
  const auto r = a.call("GET", "/api/days/2020-10-28/stats");
  CHECK(json::parse(r.body)["error"] == "UnknownDay");
}

TEST_CASE("ban changes stats, leaderboard and export") {
  Admin a;
  a.game.players(3);
  a.game.open(fixtures::kPullLeg);
  for (int i = 0; i < 3; ++i) a.game.commit("p1", sentence(i), true, at(kDay, 12, i));
  a.game.commit("p2", sentence(3), false, at(kDay, 12, 3));
  a.game.engine.record_review("p2", 1, Verdict::Like, at(kDay, 12, 4));
  a.game.engine.record_review("p3", 4, Verdict::Report, at(kDay, 12, 5));
  a.game.engine.record_review("p1", 4, Verdict::Dislike, at(kDay, 12, 6));

  auto stats = a.ok("GET", "/api/days/2020-10-28/stats");
  CHECK(stats["total"] == 4);
  CHECK(stats["idiomatic_count"] == 3);
  CHECK(stats["likes"] == 1);
  CHECK(stats["dislikes"] == 1);
  CHECK(stats["submission_count"] == 4);
  CHECK(stats["target_reached"] == false);
  CHECK(stats["dislike_pct_ratio"] == json::array({100, 2}));

  const auto reports = a.ok("GET", "/api/reports");
  REQUIRE(reports.size() == 1);
  CHECK(reports[0]["id"] == 4);
  CHECK(reports[0]["status"] == "flagged");

  auto board = a.ok("GET", "/api/leaderboard/2020-10-28");
  CHECK(board[0]["player"] == "p1");

  const auto banned = a.ok("POST", "/api/players/p1/ban", R"({"reason": "spam", "moderator": "m"})");
  CHECK(banned["banned"] == true);
  CHECK(a.call("POST", "/api/players/p1/ban", "{}").status == 409);
  stats = a.ok("GET", "/api/days/2020-10-28/stats");
  CHECK(stats["total"] == 1);
  CHECK(stats["idiomatic_count"] == 0);
  CHECK(stats["likes"] == 0);
  CHECK(stats["dislikes"] == 0);
  CHECK(stats["submission_count"] == 4);
  board = a.ok("GET", "/api/leaderboard/2020-10-28");
  for (const auto& row : board) CHECK(row["player"] != "p1");

  auto exported = a.call("GET", "/api/export");
  CHECK(exported.status == 200);
  CHECK(parse_jsonl(exported.body).size() == 1);
  exported = a.call("GET", "/api/export", {}, {{"include_excluded", "true"}, {"format", "tsv"}});
  const auto all = parse_tsv(exported.body);
  CHECK(all.size() == 4);
  CHECK(all[0].excluded);
  CHECK(all[0].author_pseudonym == pseudonymize("p1", a.game.engine.config().pseudonym_salt));
  CHECK(a.call("GET", "/api/export", {}, {{"from", "2020-10-29"}}).body.empty());
  CHECK(a.call("GET", "/api/export", {}, {{"from", "junk"}}).status == 422);
  CHECK(a.call("GET", "/api/export", {}, {{"format", "xml"}}).status == 422);

  a.ok("POST", "/api/players/p1/unban", "{}");
  CHECK(a.call("POST", "/api/players/p1/unban", "{}").status == 409);
  CHECK(a.ok("GET", "/api/days/2020-10-28/stats")["total"] == 4);

  a.now = at(kDay, 13, 0);
  CHECK(a.ok("POST", "/api/submissions/4/flag", R"({"reason": "rude"})")["status"] == "removed");
  CHECK(a.ok("GET", "/api/days/2020-10-28/stats")["total"] == 3);
}

TEST_CASE("mutations push notifications through the dispatcher") {
  fixtures::Game game;
  game.players(2);
  game.engine.add_idiom(fixtures::kPullLeg, at(kDay, 9, 0));
  const auto catalog = Catalog::from_file(fixtures::data_dir() / "catalog" / "en.txt", "en");
  LoopbackTransport transport;
  Dispatcher dispatcher(game.engine, catalog, transport);
  Timestamp now = at(kDay, 10, 0);
  AdminApi api(game.engine, "t", [&] { return now; }, &dispatcher);
  CHECK(api.handle({"POST", "/api/days/2020-10-28/open", {}, R"({"idiom_id": "pull_leg"})", "Bearer t"}).status == 200);
  CHECK(transport.size() == 2);
  now = at(kDay, 15, 0);
  CHECK(api.handle({"POST", "/api/happy-hour", {}, "", "Bearer t"}).status == 200);
  CHECK(transport.size() == 4);
  CHECK(transport.inbox("p1").back().key == "notify_happy_hour");
}

TEST_CASE("serves over HTTP") {
  fixtures::Game game;
  game.players(1);
  AdminApi api(game.engine, "t", [] { return at(kDay, 12, 0); });
  const int port = 18000 + static_cast<int>(::getpid() % 2000);
  std::thread server([&] { api.serve("127.0.0.1", port); });
  httplib::Client client("127.0.0.1", port);
  httplib::Result res;
  for (int attempt = 0; attempt < 100 && !res; ++attempt) {
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    res = client.Get("/api/reports", {{"Authorization", "Bearer t"}});
  }
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->body == "[]");
  res = client.Post("/api/idioms", {{"Authorization", "Bearer t"}}, fixtures::kGoHome, "text/plain");
  REQUIRE(res);
  CHECK(res->status == 201);
  res = client.Get("/api/reports");
  REQUIRE(res);
  CHECK(res->status == 401);
  api.stop();
  server.join();
}
