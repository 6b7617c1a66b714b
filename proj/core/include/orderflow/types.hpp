#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace orderflow {

// Prices are stored as integers scaled by kPriceScale (0.0001 currency units)
// so tick-aligned input survives parse/serialize round trips exactly.
using Price = std::int64_t;
inline constexpr Price kPriceScale = 10'000;

using Shares = std::int64_t;

inline double price_to_double(Price p) {
    return static_cast<double>(p) / static_cast<double>(kPriceScale);
}

enum class Side : std::uint8_t { buy = 0, sell = 1 };
enum class EventKind : std::uint8_t { submit = 0, cancel = 1, execute = 2 };
enum class InvestorClass : std::uint8_t { individual = 0, institution = 1 };

// Order taxonomy: effective market orders split into partially filled and
// filled; the rest are limit orders and cancellations.
enum class Aggressiveness : std::uint8_t {
    partially_filled = 0,
    filled = 1,
    limit = 2,
    canceled = 3,
};

inline constexpr int kNumSides = 2;
inline constexpr int kNumAggs = 4;
inline constexpr int kNumInvestors = 2;

const char* to_string(Side s);
const char* to_string(EventKind k);
const char* to_string(InvestorClass c);
const char* to_string(Aggressiveness a);

inline Side opposite(Side s) { return s == Side::buy ? Side::sell : Side::buy; }

// Calendar date as YYYYMMDD; integer comparison matches chronological order.
using Date = int;

bool is_valid_date(Date d);
// Next weekday after d (synthetic calendars skip weekends only).
Date next_trading_date(Date d);

// One tick-level record: a submission, cancellation, or execution.
struct OrderEvent {
    std::string stock_id;
    Date date = 0;
    int time_ms = 0;  // milliseconds since midnight
    EventKind kind = EventKind::submit;
    std::string order_id;
    Side side = Side::buy;
    Price price = 0;
    Shares size = 0;
    InvestorClass investor = InvestorClass::individual;

    bool operator==(const OrderEvent&) const = default;
};

// Board lot: minimum buy-order size unit on the exchange.
inline constexpr Shares kBoardLot = 100;

} // namespace orderflow
