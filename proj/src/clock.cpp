#include "idiomcraft/clock.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <mutex>

#include "idiomcraft/error.hpp"

namespace idiomcraft::clock {

namespace {

constexpr std::int64_t kSecondsPerDay = 86400;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  return a / b - ((a % b != 0) && ((a < 0) != (b < 0)));
}

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    fail(ErrorCode::ValidationFailed, "bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : kDays[m - 1];
}

}  // namespace

// Howard Hinnant's civil calendar algorithms.
std::int64_t days_from_civil(const Date& date) {
  const std::int64_t y = date.year - (date.month <= 2 ? 1 : 0);
  const std::int64_t era = floor_div(y, 400);
  const std::int64_t yoe = y - era * 400;
  const std::int64_t mp = (date.month + 9) % 12;
  const std::int64_t doy = (153 * mp + 2) / 5 + date.day - 1;
  const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

Date civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = floor_div(z, 146097);
  const std::int64_t doe = z - era * 146097;
  const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const std::int64_t mp = (5 * doy + 2) / 153;
  const int d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  const int m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  const int y = static_cast<int>(yoe + era * 400 + (m <= 2 ? 1 : 0));
  return {y, m, d};
}

Date date_of(Timestamp ts) { return civil_from_days(floor_div(ts, kSecondsPerDay)); }

int minute_of_day(Timestamp ts) {
  return static_cast<int>((ts - floor_div(ts, kSecondsPerDay) * kSecondsPerDay) / 60);
}

Timestamp make_timestamp(const Date& date, int hour, int minute, int second) {
  return days_from_civil(date) * kSecondsPerDay + hour * 3600 + minute * 60 + second;
}

std::string format_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", date.year, date.month, date.day);
  return buf;
}

Date parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    fail(ErrorCode::ValidationFailed, "expected YYYY-MM-DD, got '" + std::string(text) + "'");
  }
  Date d{parse_int(text.substr(0, 4), "year"), parse_int(text.substr(5, 2), "month"),
         parse_int(text.substr(8, 2), "day")};
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > days_in_month(d.year, d.month)) {
    fail(ErrorCode::ValidationFailed, "invalid calendar date '" + std::string(text) + "'");
  }
  return d;
}

std::string format_timestamp(Timestamp ts) {
  const int second_of_day = static_cast<int>(ts - floor_div(ts, kSecondsPerDay) * kSecondsPerDay);
  char buf[32];
  std::snprintf(buf, sizeof buf, "T%02d:%02d:%02d", second_of_day / 3600, (second_of_day / 60) % 60,
                second_of_day % 60);
  return format_date(date_of(ts)) + buf;
}

Timestamp parse_timestamp(std::string_view text) {
  if (text.size() != 19 || text[10] != 'T' || text[13] != ':' || text[16] != ':') {
    fail(ErrorCode::ValidationFailed, "expected YYYY-MM-DDTHH:MM:SS, got '" + std::string(text) + "'");
  }
  const auto date = parse_date(text.substr(0, 10));
  return make_timestamp(date, parse_int(text.substr(11, 2), "hour"),
                        parse_int(text.substr(14, 2), "minute"),
                        parse_int(text.substr(17, 2), "second"));
}

int parse_hhmm(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    fail(ErrorCode::ConfigInvalid, "expected HH:MM, got '" + std::string(text) + "'");
  }
  const int h = parse_int(text.substr(0, colon), "hour");
  const int m = parse_int(text.substr(colon + 1), "minute");
  if (h < 0 || h > 24 || m < 0 || m > 59 || (h == 24 && m != 0)) {
    fail(ErrorCode::ConfigInvalid, "time out of range '" + std::string(text) + "'");
  }
  return h * 60 + m;
}

std::string format_hhmm(int minutes) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d:%02d", minutes / 60, minutes % 60);
  return buf;
}

Timestamp now_in(const std::string& timezone) {
  static std::mutex tz_mutex;
  std::lock_guard lock(tz_mutex);
  const std::time_t now = std::time(nullptr);
  std::tm local{};
  if (!timezone.empty()) {
    ::setenv("TZ", timezone.c_str(), 1);
    ::tzset();
  }
  ::localtime_r(&now, &local);
  const Date d{local.tm_year + 1900, local.tm_mon + 1, local.tm_mday};
  return make_timestamp(d, local.tm_hour, local.tm_min, local.tm_sec);
}

}  // namespace idiomcraft::clock
