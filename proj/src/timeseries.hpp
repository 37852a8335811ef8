#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace volkit {

// Calendar date, ISO-8601 text form YYYY-MM-DD.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  auto operator<=>(const Date&) const = default;

  static std::optional<Date> parse(std::string_view s);
  std::string str() const;

  // Days since 1970-01-01 (proleptic Gregorian).
  int64_t civil() const;
  static Date from_civil(int64_t days);

  // 0 = Monday ... 6 = Sunday.
  int weekday() const;

  bool valid() const;
};

// One trading session, wall-clock seconds since midnight.
struct Session {
  int open_sec = 0;
  int close_sec = 0;
};

// Wall-clock trading sessions of one exchange day (e.g. a morning and an
// afternoon session split by a lunch break).
struct SessionCalendar {
  std::vector<Session> sessions;

  // Parses "HH:MM-HH:MM,HH:MM-HH:MM"; validates ordering and overlap.
  static SessionCalendar parse(std::string_view spec);

  int total_seconds() const;
  bool contains(int sec_of_day) const;
  void validate() const;
};

// Tokyo-style default: 09:00-11:00 and 12:30-15:00.
SessionCalendar default_calendar();

// Daily log-return series.
struct ReturnSeries {
  std::vector<Date> dates;
  std::vector<double> values;
  std::string label;

  size_t size() const { return values.size(); }
  // Dates strictly increasing, values finite, length >= 2.
  void validate() const;
};

struct Tick {
  int sec_of_day = 0;
  double price = 0.0;
};

struct IntradayDay {
  Date date;
  std::vector<Tick> ticks;
};

// High-frequency panel: per-day tick data restricted to the calendar's
// sessions. Construction drops out-of-session ticks (counted) and days with
// no session holding at least two observations (recorded as warnings).
struct IntradayPanel {
  std::vector<IntradayDay> days;
  SessionCalendar calendar;
  size_t dropped_ticks = 0;
  std::vector<std::string> warnings;
};

// CSV schemas (header required):
//   daily:    date,return  or  date,close   (detected from the header)
//   intraday: date,time,price               (time HH:MM or HH:MM:SS)
ReturnSeries load_daily_returns(const std::filesystem::path& path,
                                std::string label = "");
IntradayPanel load_intraday(const std::filesystem::path& path,
                            const SessionCalendar& calendar);

void write_daily_returns(const std::filesystem::path& path, const ReturnSeries& s);
void write_intraday(const std::filesystem::path& path, const IntradayPanel& panel);

// Close prices -> close-to-close log-returns; the first price is the base.
ReturnSeries returns_from_closes(const std::vector<Date>& dates,
                                 const std::vector<double>& closes,
                                 std::string label = "");

}  // namespace volkit
