#include "orderflow/book.hpp"

#include <algorithm>

namespace orderflow {

std::vector<LogicalOrder> classify_submission(Side side, Shares size, Price price,
                                              const BookState& before, Shares executed,
                                              InvestorClass investor, int time_ms) {
    std::vector<LogicalOrder> out;
    const auto& opp_quote = side == Side::buy ? before.best_ask : before.best_bid;

    if (!opp_quote.has_value()) {
        // Cannot assess marketability against an empty opposite side.
        out.push_back({0, time_ms, side, Aggressiveness::limit, investor, size, true});
        return out;
    }

    const bool marketable =
        side == Side::buy ? price >= *opp_quote : price <= *opp_quote;

    if (!marketable) {
        out.push_back({0, time_ms, side, Aggressiveness::limit, investor, size, false});
        return out;
    }
    if (executed == size) {
        out.push_back({0, time_ms, side, Aggressiveness::filled, investor, size, false});
        return out;
    }
    // Marketable but short of opposite volume: executed part + resting rest.
    out.push_back({0, time_ms, side, Aggressiveness::partially_filled, investor, executed, false});
    out.push_back({0, time_ms, side, Aggressiveness::limit, investor, size - executed, false});
    return out;
}

BookState MatchingEngine::state() const {
    BookState st;
    if (!bids_.empty()) {
        st.best_bid = bids_.begin()->first;
        for (const auto& id : bids_.begin()->second) st.bid_depth_at_best += orders_.at(id).remaining;
    }
    if (!asks_.empty()) {
        st.best_ask = asks_.begin()->first;
        for (const auto& id : asks_.begin()->second) st.ask_depth_at_best += orders_.at(id).remaining;
    }
    return st;
}

Shares MatchingEngine::admissible_depth(Side incoming_side, Price limit_price) const {
    Shares depth = 0;
    if (incoming_side == Side::buy) {
        for (const auto& [price, ids] : asks_) {
            if (price > limit_price) break;
            for (const auto& id : ids) depth += orders_.at(id).remaining;
        }
    } else {
        for (const auto& [price, ids] : bids_) {
            if (price < limit_price) break;
            for (const auto& id : ids) depth += orders_.at(id).remaining;
        }
    }
    return depth;
}

Shares MatchingEngine::match(Side incoming_side, Price limit_price, Shares size,
                             int time_ms, std::vector<Trade>& trades) {
    Shares executed = 0;
    auto take_from = [&](auto& levels) {
        while (size > 0 && !levels.empty()) {
            auto level = levels.begin();
            const Price level_price = level->first;
            const bool admissible = incoming_side == Side::buy ? level_price <= limit_price
                                                               : level_price >= limit_price;
            if (!admissible) break;
            auto& queue = level->second;
            while (size > 0 && !queue.empty()) {
                auto it = orders_.find(queue.front());
                RestingOrder& resting = it->second;
                const Shares fill = std::min(size, resting.remaining);
                resting.remaining -= fill;
                size -= fill;
                executed += fill;
                trades.push_back({level_price, fill, incoming_side, time_ms, resting.id});
                if (resting.remaining == 0) {
                    orders_.erase(it);
                    queue.erase(queue.begin());
                }
            }
            if (queue.empty()) levels.erase(level);
        }
    };
    if (incoming_side == Side::buy) take_from(asks_);
    else take_from(bids_);
    return executed;
}

SubmissionOutcome MatchingEngine::submit(const std::string& order_id, Side side, Price price,
                                         Shares size, InvestorClass investor, int time_ms) {
    SubmissionOutcome out;
    out.book_before = state();

    out.executed = match(side, price, size, time_ms, out.trades);
    out.rested = size - out.executed;
    if (out.rested > 0) {
        orders_.emplace(order_id, RestingOrder{order_id, side, price, out.rested, investor, next_seq_++});
        if (side == Side::buy) bids_[price].push_back(order_id);
        else asks_[price].push_back(order_id);
    }

    out.logical = classify_submission(side, size, price, out.book_before, out.executed,
                                      investor, time_ms);
    if (out.logical.front().flagged) ++flagged_submissions;
    return out;
}

std::optional<LogicalOrder> MatchingEngine::cancel(const std::string& order_id, int time_ms) {
    auto it = orders_.find(order_id);
    if (it == orders_.end()) {
        // Already fully executed (or never rested): nothing to cancel.
        ++inconsistent_cancels;
        return std::nullopt;
    }
    const RestingOrder resting = it->second;
    orders_.erase(it);

    auto remove_from = [&](auto& levels) {
        auto level = levels.find(resting.price);
        auto& queue = level->second;
        queue.erase(std::find(queue.begin(), queue.end(), order_id));
        if (queue.empty()) levels.erase(level);
    };
    if (resting.side == Side::buy) remove_from(bids_);
    else remove_from(asks_);

    // Cancel volume is the unexecuted remainder at cancellation time.
    return LogicalOrder{0, time_ms, resting.side, Aggressiveness::canceled, resting.investor,
                        resting.remaining, false};
}

std::optional<Shares> MatchingEngine::remaining(const std::string& order_id) const {
    auto it = orders_.find(order_id);
    if (it == orders_.end()) return std::nullopt;
    return it->second.remaining;
}

void MatchingEngine::clear() {
    bids_.clear();
    asks_.clear();
    orders_.clear();
    next_seq_ = 0;
}

} // namespace orderflow
