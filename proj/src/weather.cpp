#include "heatpoll/weather.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace heatpoll {

std::string date_to_string(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", int(d.year()),
                  unsigned(d.month()), unsigned(d.day()));
    return buf;
}

Date date_from_string(const std::string& s) {
    int y = 0;
    unsigned m = 0, d = 0;
    if (std::sscanf(s.c_str(), "%d-%u-%u", &y, &m, &d) != 3) {
        throw std::invalid_argument("bad date '" + s + "', expected YYYY-MM-DD");
    }
    const Date date{std::chrono::year(y), std::chrono::month(m), std::chrono::day(d)};
    if (!date.ok()) throw std::invalid_argument("invalid calendar date '" + s + "'");
    return date;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
        if (quoted) {
            if (c == '"') quoted = false;
            else cur.push_back(c);
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

// Accepts "YYYY-MM-DD HH:MM[:SS]" and "YYYY-MM-DDTHH:MM[:SS]".
bool parse_timestamp(const std::string& s, Date& date, int& hour) {
    int y = 0;
    unsigned m = 0, d = 0;
    int h = 0;
    char sep = 0;
    if (std::sscanf(s.c_str(), "%d-%u-%u%c%d", &y, &m, &d, &sep, &h) != 5) return false;
    if (sep != ' ' && sep != 'T') return false;
    if (h < 0 || h > 23) return false;
    const Date candidate{std::chrono::year(y), std::chrono::month(m), std::chrono::day(d)};
    if (!candidate.ok()) return false;
    date = candidate;
    hour = h;
    return true;
}

} // namespace

std::vector<HourlySample> load_tmy_csv(const std::string& path, const WeatherColumns& columns) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open weather file: " + path);

    std::string header;
    if (!std::getline(in, header)) throw EmptyFile(path);
    const std::vector<std::string> names = split_csv_line(header);

    std::ptrdiff_t time_col = -1, temp_col = -1;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == columns.time) time_col = static_cast<std::ptrdiff_t>(i);
        if (names[i] == columns.temp) temp_col = static_cast<std::ptrdiff_t>(i);
    }
    if (time_col < 0) throw MissingColumn(columns.time);
    if (temp_col < 0) throw MissingColumn(columns.temp);

    std::vector<HourlySample> series;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() <= static_cast<std::size_t>(std::max(time_col, temp_col))) {
            throw UnparsableRow(line_no, "expected at least " +
                                             std::to_string(std::max(time_col, temp_col) + 1) +
                                             " fields");
        }
        HourlySample sample;
        if (!parse_timestamp(fields[time_col], sample.date, sample.hour)) {
            throw UnparsableRow(line_no, "bad timestamp '" + fields[time_col] + "'");
        }
        const std::string& raw = fields[temp_col];
        const char* first = raw.data();
        const char* last = raw.data() + raw.size();
        while (first != last && *first == ' ') ++first;
        auto [ptr, ec] = std::from_chars(first, last, sample.temp_c);
        if (ec != std::errc() || ptr != last) {
            throw UnparsableRow(line_no, "bad temperature '" + raw + "'");
        }
        series.push_back(sample);
    }
    if (series.empty()) throw EmptyFile(path);
    return series;
}

std::vector<DailyWeather> daily_means(const std::vector<HourlySample>& series,
                                      const Date& start_date, int n_days) {
    if (n_days < 1) throw std::invalid_argument("n_days must be >= 1");

    std::vector<DailyWeather> out;
    out.reserve(static_cast<std::size_t>(n_days));
    const std::chrono::sys_days start{start_date};
    for (int d = 0; d < n_days; ++d) {
        const Date date{start + std::chrono::days(d)};
        std::array<bool, 24> seen{};
        double sum = 0.0;
        int count = 0;
        for (const HourlySample& s : series) {
            if (s.date != date || seen[s.hour]) continue;
            seen[s.hour] = true;
            sum += s.temp_c;
            ++count;
        }
        if (count != 24) throw InsufficientCoverage(date);
        out.push_back(DailyWeather{d, date, sum / 24.0});
    }
    return out;
}

} // namespace heatpoll
