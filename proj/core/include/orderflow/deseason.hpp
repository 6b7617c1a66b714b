#pragma once

#include "orderflow/grid.hpp"

#include <array>
#include <string>

namespace orderflow {

// Cross-day mean profile of a quantity over the 240 intraday minutes, used
// as the reference level for deseasonalization. Minutes whose mean is zero
// (or that never have a defined value) are masked and excluded downstream.
struct IntradayPattern {
    std::string quantity;
    std::array<double, TradingClock::kMinutesPerDay> values{};
    std::array<bool, TradingClock::kMinutesPerDay> mask{};  // true = estimable

    double at(int minute) const { return values[minute - 1]; }
    bool estimable(int minute) const { return mask[minute - 1]; }
    bool fully_masked() const;
};

struct PatternOptions {
    // Default includes event days; day-level exclusion is an optional switch.
    std::vector<bool> exclude_days;  // per day index; empty = include all
};

IntradayPattern estimate_pattern(const DayMinuteGrid& grid, const std::string& quantity,
                                 const PatternOptions& opts = {});

// Pointwise ratio x(d,t') = X(d,t') / P(t'); masked minutes come out NaN.
// Throws on a day-grid/pattern dimension mismatch.
DayMinuteGrid deseasonalize(const DayMinuteGrid& grid, const IntradayPattern& pattern);

void write_pattern_csv(const std::string& path, const IntradayPattern& p);

} // namespace orderflow
