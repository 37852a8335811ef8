#include "timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "csv.hpp"
#include "errors.hpp"

namespace volkit {

namespace {

bool parse_int(std::string_view s, int& out) {
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

int days_in_month(int y, int m) {
  static constexpr int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2) {
    const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    return leap ? 29 : 28;
  }
  return lengths[m - 1];
}

// "HH:MM" or "HH:MM:SS" -> seconds since midnight.
std::optional<int> parse_time_of_day(std::string_view s) {
  auto parts = csv::split(s, ':');
  if (parts.size() != 2 && parts.size() != 3) return std::nullopt;
  int h = 0, m = 0, sec = 0;
  if (!parse_int(parts[0], h) || !parse_int(parts[1], m)) return std::nullopt;
  if (parts.size() == 3 && !parse_int(parts[2], sec)) return std::nullopt;
  if (h < 0 || h > 23 || m < 0 || m > 59 || sec < 0 || sec > 59) return std::nullopt;
  return h * 3600 + m * 60 + sec;
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

bool Date::valid() const {
  return month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
}

std::optional<Date> Date::parse(std::string_view s) {
  auto parts = csv::split(s, '-');
  if (parts.size() != 3) return std::nullopt;
  Date d;
  if (!parse_int(parts[0], d.year) || !parse_int(parts[1], d.month) ||
      !parse_int(parts[2], d.day))
    return std::nullopt;
  if (!d.valid()) return std::nullopt;
  return d;
}

std::string Date::str() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

int64_t Date::civil() const {
  // Standard civil-from-days inverse (proleptic Gregorian).
  int y = year;
  const int m = month;
  const int d = day;
  y -= m <= 2;
  const int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

Date Date::from_civil(int64_t z) {
  z += 719468;
  const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int64_t y = static_cast<int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

int Date::weekday() const {
  // 1970-01-01 was a Thursday.
  int64_t c = civil();
  return static_cast<int>(((c % 7) + 7 + 3) % 7);
}

SessionCalendar SessionCalendar::parse(std::string_view spec) {
  SessionCalendar cal;
  for (const auto& part : csv::split(spec, ',')) {
    auto bounds = csv::split(part, '-');
    if (bounds.size() != 2)
      throw ConfigError("bad session interval (want HH:MM-HH:MM): " + std::string(part));
    auto open = parse_time_of_day(bounds[0]);
    auto close = parse_time_of_day(bounds[1]);
    if (!open || !close)
      throw ConfigError("bad session time in: " + std::string(part));
    cal.sessions.push_back(Session{*open, *close});
  }
  cal.validate();
  return cal;
}

void SessionCalendar::validate() const {
  if (sessions.empty()) throw ConfigError("session calendar is empty");
  for (size_t i = 0; i < sessions.size(); ++i) {
    if (sessions[i].open_sec >= sessions[i].close_sec)
      throw ConfigError("session open must precede close");
    if (i > 0 && sessions[i].open_sec < sessions[i - 1].close_sec)
      throw ConfigError("sessions overlap or are out of order");
  }
}

int SessionCalendar::total_seconds() const {
  int total = 0;
  for (const auto& s : sessions) total += s.close_sec - s.open_sec;
  return total;
}

bool SessionCalendar::contains(int sec) const {
  for (const auto& s : sessions)
    if (sec >= s.open_sec && sec <= s.close_sec) return true;
  return false;
}

SessionCalendar default_calendar() {
  SessionCalendar cal;
  cal.sessions = {Session{9 * 3600, 11 * 3600}, Session{12 * 3600 + 1800, 15 * 3600}};
  return cal;
}

void ReturnSeries::validate() const {
  if (dates.size() != values.size())
    throw ContractError("return series: dates/values length mismatch");
  if (values.size() < 2) throw DataError("return series needs at least 2 observations");
  for (size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      throw DataError("non-finite return at " + dates[i].str());
    if (i > 0 && !(dates[i - 1] < dates[i]))
      throw DataError("dates not strictly increasing at " + dates[i].str());
  }
}

ReturnSeries returns_from_closes(const std::vector<Date>& dates,
                                 const std::vector<double>& closes,
                                 std::string label) {
  if (dates.size() != closes.size())
    throw ContractError("closes: dates/values length mismatch");
  if (closes.size() < 3) throw DataError("need at least 3 close prices");
  ReturnSeries out;
  out.label = std::move(label);
  out.dates.assign(dates.begin() + 1, dates.end());
  out.values.resize(closes.size() - 1);
  for (size_t i = 1; i < closes.size(); ++i) {
    if (!(closes[i] > 0.0) || !(closes[i - 1] > 0.0))
      throw DataError("non-positive close price at " + dates[i].str());
    out.values[i - 1] = std::log(closes[i] / closes[i - 1]);
  }
  out.validate();
  return out;
}

ReturnSeries load_daily_returns(const std::filesystem::path& path, std::string label) {
  auto rows = csv::read_file(path);
  if (rows.empty()) throw DataError("empty daily file: " + path.string());

  const auto header = rows.front().fields;
  if (header.size() != 2 || lower(header[0]) != "date")
    throw DataError(path.string() + ":1: expected header date,return or date,close");
  const std::string kind = lower(header[1]);
  const bool is_close = kind == "close";
  if (!is_close && kind != "return")
    throw DataError(path.string() + ":1: second column must be 'return' or 'close'");

  std::vector<Date> dates;
  std::vector<double> vals;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const std::string where = path.string() + ":" + std::to_string(row.line_no);
    if (row.fields.size() != 2) throw DataError(where + ": expected 2 fields");
    auto date = Date::parse(row.fields[0]);
    if (!date) throw DataError(where + ": bad date '" + row.fields[0] + "'");
    double v;
    if (!csv::parse_double(row.fields[1], v) || !std::isfinite(v))
      throw DataError(where + ": bad value '" + row.fields[1] + "'");
    if (!dates.empty() && !(dates.back() < *date))
      throw DataError(where + ": dates not strictly increasing");
    dates.push_back(*date);
    vals.push_back(v);
  }

  if (label.empty()) label = path.stem().string();
  if (is_close) return returns_from_closes(dates, vals, std::move(label));

  ReturnSeries out{std::move(dates), std::move(vals), std::move(label)};
  out.validate();
  return out;
}

void write_daily_returns(const std::filesystem::path& path, const ReturnSeries& s) {
  csv::AtomicWriter w(path);
  w << "date,return\n";
  for (size_t i = 0; i < s.size(); ++i)
    w << s.dates[i].str() << ',' << csv::format_double(s.values[i]) << '\n';
  w.commit();
}

IntradayPanel load_intraday(const std::filesystem::path& path,
                            const SessionCalendar& calendar) {
  calendar.validate();
  auto rows = csv::read_file(path);
  if (rows.empty()) throw DataError("empty intraday file: " + path.string());
  {
    const auto& h = rows.front().fields;
    if (h.size() != 3 || lower(h[0]) != "date" || lower(h[1]) != "time" ||
        lower(h[2]) != "price")
      throw DataError(path.string() + ":1: expected header date,time,price");
  }

  IntradayPanel panel;
  panel.calendar = calendar;
  IntradayDay cur;
  bool have_day = false;

  auto finish_day = [&]() {
    if (!have_day) return;
    // Keep a day only if some session holds at least two observations;
    // sessions with a lone tick are dropped (previous-tick sampling needs
    // two points to form a return there anyway).
    std::vector<Tick> kept;
    for (const auto& s : calendar.sessions) {
      std::vector<Tick> in_session;
      for (const auto& t : cur.ticks)
        if (t.sec_of_day >= s.open_sec && t.sec_of_day <= s.close_sec)
          in_session.push_back(t);
      if (in_session.size() >= 2)
        kept.insert(kept.end(), in_session.begin(), in_session.end());
      else if (!in_session.empty())
        panel.warnings.push_back("day " + cur.date.str() +
                                 ": session with a single tick dropped");
    }
    if (kept.size() >= 2) {
      panel.days.push_back(IntradayDay{cur.date, std::move(kept)});
    } else {
      panel.warnings.push_back("day " + cur.date.str() +
                               ": no session with >= 2 ticks, day excluded");
    }
    cur.ticks.clear();
  };

  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const std::string where = path.string() + ":" + std::to_string(row.line_no);
    if (row.fields.size() != 3) throw DataError(where + ": expected 3 fields");
    auto date = Date::parse(row.fields[0]);
    if (!date) throw DataError(where + ": bad date '" + row.fields[0] + "'");
    auto sec = parse_time_of_day(row.fields[1]);
    if (!sec) throw DataError(where + ": bad time '" + row.fields[1] + "'");
    double price;
    if (!csv::parse_double(row.fields[2], price) || !(price > 0.0))
      throw DataError(where + ": bad price '" + row.fields[2] + "'");

    if (!have_day || *date != cur.date) {
      if (have_day && *date < cur.date)
        throw DataError(where + ": dates not in increasing order");
      finish_day();
      cur.date = *date;
      have_day = true;
    }
    if (!calendar.contains(*sec)) {
      ++panel.dropped_ticks;
      continue;
    }
    if (!cur.ticks.empty() && *sec <= cur.ticks.back().sec_of_day)
      throw DataError(where + ": timestamps not strictly increasing within day");
    cur.ticks.push_back(Tick{*sec, price});
  }
  finish_day();
  return panel;
}

void write_intraday(const std::filesystem::path& path, const IntradayPanel& panel) {
  csv::AtomicWriter w(path);
  w << "date,time,price\n";
  char tbuf[16];
  for (const auto& day : panel.days) {
    const std::string ds = day.date.str();
    for (const auto& t : day.ticks) {
      std::snprintf(tbuf, sizeof(tbuf), "%02d:%02d:%02d", t.sec_of_day / 3600,
                    (t.sec_of_day / 60) % 60, t.sec_of_day % 60);
      w << ds << ',' << tbuf << ',' << csv::format_double(t.price) << '\n';
    }
  }
  w.commit();
}

}  // namespace volkit
