#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "idiomcraft/clock.hpp"
#include "idiomcraft/config.hpp"

using namespace idiomcraft;
using fixtures::error_of;

TEST_CASE("shipped config equals the defaults apart from secrets") {
  const auto cfg = load_config(fixtures::data_dir() / "config" / "idiomcraft.conf");
  GameConfig d;
  CHECK(cfg.window_open_minute == 11 * 60);
  CHECK(cfg.window_close_minute == 23 * 60);
  CHECK(cfg.soft_target == 100);
  CHECK(cfg.happy_hour_minutes == 60);
  CHECK(cfg.like_cooldown_minutes == 10);
  CHECK(cfg.scoring.base == d.scoring.base);
  CHECK(cfg.scoring.boost_delta == 5);
  CHECK(cfg.scoring.activate_gap == 15);
  CHECK(cfg.scoring.release_gap == 5);
  CHECK(cfg.scoring.compare == BalanceCompare::AVersusC);
  CHECK(cfg.admin_token == "change-me");
}

TEST_CASE("parse_config overrides and rejects") {
  const auto cfg = parse_config("# x\nwindow_open=10:30\nbalance.compare=idio_vs_nonidio\nscoring.base_b=20\n");
  CHECK(cfg.window_open_minute == 10 * 60 + 30);
  CHECK(cfg.scoring.compare == BalanceCompare::IdiomaticVersusNonidiomatic);
  CHECK(cfg.scoring.base.b == 20);
  CHECK(error_of([] { parse_config("nope=1\n"); }) == ErrorCode::ConfigInvalid);
  CHECK(error_of([] { parse_config("soft_target=abc\n"); }) == ErrorCode::ConfigInvalid);
  CHECK(error_of([] { parse_config("window_open=25:00\n"); }) == ErrorCode::ConfigInvalid);
  CHECK(error_of([] { parse_config("missing equals\n"); }) == ErrorCode::ConfigInvalid);
}

TEST_CASE("config entries round-trip") {
  GameConfig c;
  c.soft_target = 42;
  c.admin_token = "t";
  c.scoring.compare = BalanceCompare::IdiomaticVersusNonidiomatic;
  std::string text;
  for (const auto& [k, v] : config_entries(c)) text += k + "=" + v + "\n";
  const auto back = parse_config(text);
  CHECK(config_entries(back) == config_entries(c));
}

TEST_CASE("civil date arithmetic") {
  for (std::int64_t day = -800000; day <= 800000; day += 997) {
    CHECK(clock::days_from_civil(clock::civil_from_days(day)) == day);
  }
  CHECK(clock::format_date(clock::parse_date("2020-10-28")) == "2020-10-28");
  CHECK(clock::days_from_civil(clock::parse_date("1970-01-01")) == 0);
  CHECK(clock::days_from_civil(clock::parse_date("2000-03-01")) - clock::days_from_civil(clock::parse_date("2000-02-28")) == 2);
  const auto t = clock::make_timestamp(clock::parse_date("2020-10-28"), 17, 5, 9);
  CHECK(clock::format_date(clock::date_of(t)) == "2020-10-28");
  CHECK(clock::minute_of_day(t) == 17 * 60 + 5);
  CHECK(clock::format_hhmm(17 * 60 + 5) == "17:05");
  CHECK(clock::parse_hhmm("09:30") == 570);
  CHECK(error_of([] { clock::parse_date("2020-02-30"); }).has_value());
}
