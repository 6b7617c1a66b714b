#pragma once

#include "orderflow/bars.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace orderflow {

// One quantity on a stock's day x intraday-minute grid. NaN marks undefined
// cells (no return at the first minute of a day, imbalance with no market
// orders, masked pattern minutes, ...).
struct DayMinuteGrid {
    std::vector<Date> dates;       // ascending, one per row
    std::vector<double> values;    // dates.size() * 240, row-major

    int num_days() const { return static_cast<int>(dates.size()); }

    double at(int day, int minute) const {  // minute 1..240
        return values[static_cast<std::size_t>(day) * TradingClock::kMinutesPerDay + minute - 1];
    }
    double& at(int day, int minute) {
        return values[static_cast<std::size_t>(day) * TradingClock::kMinutesPerDay + minute - 1];
    }

    static DayMinuteGrid blank(std::vector<Date> dates);
};

// Signed per-minute log returns of the mid-price; the first minute of each
// day carries no return.
DayMinuteGrid return_series(const StockBars& bars);

struct QuantityDef {
    std::string name;
    bool deseasonalize = true;
    std::function<double(const MinuteBar& bar, const MinuteBar* prev)> extract;
};

// All quantities the event study covers: absolute return, market-order
// volume, spread, buy/sell imbalance, per-side market volumes, the four
// aggressiveness classes by side (volume and number), per-investor market
// volumes, and relative order rates per investor class.
const std::vector<QuantityDef>& quantity_registry();

const QuantityDef* find_quantity(const std::string& name);

DayMinuteGrid extract_quantity(const StockBars& bars, const QuantityDef& def);

} // namespace orderflow
