#pragma once

#include "orderflow/types.hpp"

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

namespace orderflow {

// Best quotes immediately before an action; depth covers all resting volume
// priced at-or-better than the touch.
struct BookState {
    std::optional<Price> best_bid;
    std::optional<Price> best_ask;
    Shares bid_depth_at_best = 0;
    Shares ask_depth_at_best = 0;
};

struct Trade {
    Price price = 0;       // resting order's price
    Shares size = 0;
    Side aggressor = Side::buy;
    int time_ms = 0;
    std::string resting_id;
};

// One classified logical order. A partially executed submission yields two:
// the executed part (partially_filled) and the resting remainder (limit).
struct LogicalOrder {
    Date date = 0;
    int time_ms = 0;
    Side side = Side::buy;
    Aggressiveness agg = Aggressiveness::limit;
    InvestorClass investor = InvestorClass::individual;
    Shares volume = 0;
    bool flagged = false;  // marketable check met an empty opposite side
};

struct SubmissionOutcome {
    Shares executed = 0;
    Shares rested = 0;
    std::vector<Trade> trades;
    std::vector<LogicalOrder> logical;  // 1 or 2 entries
    BookState book_before;
};

// Pure classification of a submission given the pre-submission book state
// and the executed volume determined by matching. Returns 1 or 2 logical
// orders per the two-order treatment of partial fills.
std::vector<LogicalOrder> classify_submission(Side side, Shares size, Price price,
                                              const BookState& before, Shares executed,
                                              InvestorClass investor, int time_ms);

// Price-time priority book for one stock. Marketable submissions execute
// immediately against resting depth; remainders rest. Intended to be cleared
// at day boundaries (orders do not survive overnight).
class MatchingEngine {
public:
    BookState state() const;

    // Resting volume priced at-or-better than `limit_price` on the side
    // opposite to `incoming_side` (what a marketable order could take).
    Shares admissible_depth(Side incoming_side, Price limit_price) const;

    SubmissionOutcome submit(const std::string& order_id, Side side, Price price,
                             Shares size, InvestorClass investor, int time_ms);

    // Cancels the unexecuted remainder. Returns the canceled logical order,
    // or nullopt when the order is unknown or already fully executed
    // (counted in `inconsistent_cancels`).
    std::optional<LogicalOrder> cancel(const std::string& order_id, int time_ms);

    // Resting remainder of an order, or nullopt when not in the book.
    std::optional<Shares> remaining(const std::string& order_id) const;

    void clear();

    std::size_t resting_orders() const { return orders_.size(); }
    long flagged_submissions = 0;
    long inconsistent_cancels = 0;

private:
    struct RestingOrder {
        std::string id;
        Side side;
        Price price;
        Shares remaining;
        InvestorClass investor;
        std::uint64_t seq;  // arrival order, for time priority
    };

    // price -> FIFO of order ids; bids keyed descending, asks ascending.
    std::map<Price, std::vector<std::string>, std::greater<Price>> bids_;
    std::map<Price, std::vector<std::string>> asks_;
    std::unordered_map<std::string, RestingOrder> orders_;
    std::uint64_t next_seq_ = 0;

    Shares match(Side incoming_side, Price limit_price, Shares size, int time_ms,
                 std::vector<Trade>& trades);
};

} // namespace orderflow
