#pragma once

#include "orderflow/book.hpp"
#include "orderflow/clock.hpp"
#include "orderflow/types.hpp"

#include <optional>
#include <vector>

namespace orderflow {

// Per-minute share sums and logical-order counts keyed by
// (side, aggressiveness, investor class).
struct ClassCube {
    double volume[kNumSides][kNumAggs][kNumInvestors] = {};
    int count[kNumSides][kNumAggs][kNumInvestors] = {};

    void add(const LogicalOrder& lo) {
        volume[int(lo.side)][int(lo.agg)][int(lo.investor)] += double(lo.volume);
        count[int(lo.side)][int(lo.agg)][int(lo.investor)] += 1;
    }

    // Executed volume of effective market orders (partially filled + filled).
    double market_volume(Side s) const {
        double v = 0;
        for (int inv = 0; inv < kNumInvestors; ++inv) {
            v += volume[int(s)][int(Aggressiveness::partially_filled)][inv];
            v += volume[int(s)][int(Aggressiveness::filled)][inv];
        }
        return v;
    }

    double market_volume(Side s, InvestorClass c) const {
        return volume[int(s)][int(Aggressiveness::partially_filled)][int(c)] +
               volume[int(s)][int(Aggressiveness::filled)][int(c)];
    }

    int market_count(InvestorClass c) const {
        int n = 0;
        for (int s = 0; s < kNumSides; ++s) {
            n += count[s][int(Aggressiveness::partially_filled)][int(c)];
            n += count[s][int(Aggressiveness::filled)][int(c)];
        }
        return n;
    }
    int limit_count(InvestorClass c) const {
        int n = 0;
        for (int s = 0; s < kNumSides; ++s) n += count[s][int(Aggressiveness::limit)][int(c)];
        return n;
    }
    int cancel_count(InvestorClass c) const {
        int n = 0;
        for (int s = 0; s < kNumSides; ++s) n += count[s][int(Aggressiveness::canceled)][int(c)];
        return n;
    }
};

// Eq.-style volume imbalance: buy market-order volume over total market-order
// volume in the minute. Undefined (nullopt) when no market orders traded.
// The sell imbalance is imbalance(v_sell, v_buy).
std::optional<double> imbalance(double v_buy, double v_sell);

struct RelativeRates {
    double rate_market = 0;
    double rate_limit = 0;
    double rate_cancel = 0;
    bool defined = false;
};

// Proportions of logical-order numbers; a partially filled submission
// contributes one market-order count and one limit-order count.
RelativeRates relative_rates(long market, long limit, long cancel);

// Tallies classified logical orders into one cube per intraday minute
// (index 1..240; orders outside the continuous auction are skipped).
std::vector<ClassCube> aggregate_minute_classes(const std::vector<LogicalOrder>& orders);

// Replays one stock's stream through the matching engine, clearing the book
// at day boundaries, and returns every classified logical order in stream
// order. Events of other stocks and execute confirmations are skipped.
std::vector<LogicalOrder> replay_logical_orders(const std::string& stock_id,
                                                const std::vector<OrderEvent>& events);

} // namespace orderflow
