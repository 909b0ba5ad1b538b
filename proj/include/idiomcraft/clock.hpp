#pragma once

#include <cstdint>
#include <string>
#include <string_view>

// Timestamps are seconds on the local wall clock of the game's configured
// timezone, counted from 1970-01-01T00:00 local. Transports convert.
namespace idiomcraft::clock {

using Timestamp = std::int64_t;

struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;
  auto operator<=>(const Date&) const = default;
};

std::int64_t days_from_civil(const Date& date);
Date civil_from_days(std::int64_t days);

Date date_of(Timestamp ts);
int minute_of_day(Timestamp ts);
Timestamp make_timestamp(const Date& date, int hour, int minute, int second = 0);

std::string format_date(const Date& date);
/// Parses YYYY-MM-DD; throws GameError(ValidationFailed) otherwise.
Date parse_date(std::string_view text);
std::string format_timestamp(Timestamp ts);  // YYYY-MM-DDTHH:MM:SS
Timestamp parse_timestamp(std::string_view text);

/// "HH:MM" -> minutes after midnight.
int parse_hhmm(std::string_view text);
std::string format_hhmm(int minutes);

/// Current wall-clock time in the named IANA timezone (empty = process TZ).
Timestamp now_in(const std::string& timezone);

}  // namespace idiomcraft::clock
