#pragma once

#include "orderflow/grid.hpp"

#include <span>
#include <string>
#include <vector>

namespace orderflow {

struct FilterConfig {
    double threshold_abs = 0.04;      // absolute filter: |R| >= 4%
    int window_max = 60;              // minutes
    double volatility_multiple = 6.0; // relative filter: |R| >= 6 x avg volatility
    int opening_exclusion = 5;        // event minutes <= this are skipped
    int closing_exclusion = 60;       // event minutes > 240 - this are skipped
    // false: average over all windows of equal length across the sample;
    // true: average per (end minute, length) over days.
    bool clock_time_average = false;

    void validate() const;
};

// A detected extreme intraday price change. minute is the end of the
// minimal passing window (t = 0 of the event study).
struct ExtremeEvent {
    std::string stock_id;
    Date date = 0;
    int minute = 0;
    int sign = 0;  // +1 / -1
    int dt_star = 0;
    double cum_return = 0;

    bool operator==(const ExtremeEvent&) const = default;
};

// v = sqrt(sum of squared returns) over one window.
double realized_volatility(std::span<const double> window_returns);

struct WindowVolatility {
    double mean = 0;
    long count = 0;  // 0 = undefined, relative filter disabled at this length
};

// Mean of v(t, dt) over every admissible window of length dt in the sample
// (windows never cross a day boundary and never contain undefined returns).
// Index 0 is unused; entries run dt = 1..window_max.
std::vector<WindowVolatility> average_window_volatility(const DayMinuteGrid& returns,
                                                        int window_max);

// Per-clock-minute variant: [t][dt], t = 1..240.
std::vector<std::vector<WindowVolatility>> average_window_volatility_by_minute(
    const DayMinuteGrid& returns, int window_max);

// Runs the combined absolute + relative filter on raw mid-price returns and
// emits, per end minute that passes at any length <= window_max, one event
// at the smallest passing length. Results are pre-deduplication.
std::vector<ExtremeEvent> detect_events(const std::string& stock_id,
                                        const DayMinuteGrid& returns,
                                        const FilterConfig& config);

// Keeps only the earliest event per (stock, day).
std::vector<ExtremeEvent> deduplicate_first_per_day(std::vector<ExtremeEvent> events);

void write_events_csv(const std::string& path, const std::vector<ExtremeEvent>& events);
std::vector<ExtremeEvent> read_events_csv(const std::string& path);

} // namespace orderflow
