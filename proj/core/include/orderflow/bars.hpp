#pragma once

#include "orderflow/classify.hpp"
#include "orderflow/parse.hpp"
#include "orderflow/types.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace orderflow {

// Per-stock per-minute aggregates over the continuous double auction.
// Quotes are the last book state strictly before the minute boundary,
// carried forward over inactive minutes (and across the lunch break and
// overnight, purely as displayed state; the book itself is day-local).
struct MinuteBar {
    int minute = 0;  // 1..240
    double mid = std::nan("");
    double best_bid = std::nan("");
    double best_ask = std::nan("");
    double spread = std::nan("");
    ClassCube classes;
    double exec_vol_buy = 0;   // executed shares with a buy order on either side of the trade
    double exec_vol_sell = 0;
    double split_factor = 1.0;

    bool has_mid() const { return !std::isnan(mid); }
    bool has_quotes() const { return !std::isnan(best_bid) && !std::isnan(best_ask); }
};

struct StockDayBars {
    Date date = 0;
    std::array<MinuteBar, TradingClock::kMinutesPerDay> bars;
};

struct StockBars {
    std::string stock_id;
    std::vector<StockDayBars> days;  // ascending by date

    int day_index(Date d) const;  // -1 when not present
};

struct BarBuildStats {
    long events_processed = 0;
    long events_outside_session = 0;
    long dropped_quoteless_days = 0;
    long flagged_submissions = 0;
    long inconsistent_cancels = 0;
    std::vector<std::string> warnings;
};

// Replays one stock's event stream through the matching engine and builds
// exactly 240 bars for every day that has at least one quote (days with no
// quotes at all are dropped with a warning). Events must be sorted.
StockBars build_minute_bars(const std::string& stock_id,
                            const std::vector<OrderEvent>& events, BarBuildStats& stats);

// Groups a mixed stream by stock and builds bars for each.
std::vector<StockBars> build_all_minute_bars(const std::vector<OrderEvent>& events,
                                             BarBuildStats& stats);

// Multiplies volumes (and divides prices) for days strictly before each
// split's effective date. Idempotent when the table is empty. Throws on
// factor <= 0.
void apply_split_adjustment(StockBars& bars, const SplitTable& table);

// Columnar bar file, one row per (day, minute); stable column order.
void write_bars_csv(const std::string& path, const StockBars& bars);
StockBars read_bars_csv(const std::string& path);

} // namespace orderflow
