#pragma once

#include <chrono>
#include <stdexcept>
#include <string>
#include <vector>

namespace heatpoll {

using Date = std::chrono::year_month_day;

std::string date_to_string(const Date& d); // YYYY-MM-DD
Date date_from_string(const std::string& s);

struct HourlySample {
    Date date;
    int hour = 0; // 0..23
    double temp_c = 0.0;
};

struct DailyWeather {
    int day_index = 0;
    Date date;
    double temp_out = 0.0; // daily mean, degC
};

struct MissingColumn : std::runtime_error {
    explicit MissingColumn(const std::string& name)
        : std::runtime_error("missing column '" + name + "'") {}
};
struct UnparsableRow : std::runtime_error {
    UnparsableRow(std::size_t line, const std::string& detail)
        : std::runtime_error("unparsable row at line " + std::to_string(line) + ": " + detail),
          line(line) {}
    std::size_t line;
};
struct EmptyFile : std::runtime_error {
    explicit EmptyFile(const std::string& path)
        : std::runtime_error("empty weather file: " + path) {}
};
struct InsufficientCoverage : std::runtime_error {
    explicit InsufficientCoverage(const Date& missing)
        : std::runtime_error("weather series does not cover " + date_to_string(missing)),
          missing(missing) {}
    Date missing;
};

struct WeatherColumns {
    std::string time = "time(UTC)";
    std::string temp = "temp_air";
};

// Reads an hourly TMY-style CSV export. Timestamps are parsed from a
// "YYYY-MM-DD HH:MM" (or "...THH:MM") prefix.
std::vector<HourlySample> load_tmy_csv(const std::string& path,
                                       const WeatherColumns& columns = {});

// Per-day arithmetic mean over each day's hourly values. Every requested
// day must have all 24 hours present; partial days are an error.
std::vector<DailyWeather> daily_means(const std::vector<HourlySample>& series,
                                      const Date& start_date, int n_days);

} // namespace heatpoll
