#include "oracle.hpp"

#include <algorithm>
#include <cmath>

namespace orderflow::oracle {

namespace {

// Direct summation over the window (t - dt, t], increasing minute order.
// Returns false when any return in the window is undefined.
bool window_sums(const DayMinuteGrid& returns, int day, int t, int dt, double& cum,
                 double& vol) {
    double sum = 0, sum_sq = 0;
    for (int m = t - dt + 1; m <= t; ++m) {
        const double r = returns.at(day, m);
        if (std::isnan(r)) return false;
        sum += r;
        sum_sq += r * r;
    }
    cum = sum;
    vol = std::sqrt(sum_sq);
    return true;
}

} // namespace

double average_window_volatility_bruteforce(const DayMinuteGrid& returns, int dt) {
    double total = 0;
    long count = 0;
    for (int d = 0; d < returns.num_days(); ++d) {
        for (int t = dt + 1; t <= TradingClock::kMinutesPerDay; ++t) {
            double cum, vol;
            if (!window_sums(returns, d, t, dt, cum, vol)) continue;
            total += vol;
            ++count;
        }
    }
    return count > 0 ? total / double(count) : std::nan("");
}

std::vector<ExtremeEvent> detect_events_bruteforce(const std::string& stock_id,
                                                   const DayMinuteGrid& returns,
                                                   const FilterConfig& config) {
    std::vector<double> avg(config.window_max + 1, std::nan(""));
    std::vector<std::vector<double>> avg_clock;
    if (config.clock_time_average) {
        avg_clock.assign(TradingClock::kMinutesPerDay + 1,
                         std::vector<double>(config.window_max + 1, std::nan("")));
        for (int t = 1; t <= TradingClock::kMinutesPerDay; ++t) {
            for (int dt = 1; dt <= config.window_max && dt < t; ++dt) {
                double total = 0;
                long count = 0;
                for (int d = 0; d < returns.num_days(); ++d) {
                    double cum, vol;
                    if (!window_sums(returns, d, t, dt, cum, vol)) continue;
                    total += vol;
                    ++count;
                }
                if (count > 0) avg_clock[t][dt] = total / double(count);
            }
        }
    } else {
        for (int dt = 1; dt <= config.window_max; ++dt) {
            avg[dt] = average_window_volatility_bruteforce(returns, dt);
        }
    }

    std::vector<ExtremeEvent> events;
    for (int d = 0; d < returns.num_days(); ++d) {
        for (int t = config.opening_exclusion + 1;
             t <= TradingClock::kMinutesPerDay - config.closing_exclusion; ++t) {
            int best_dt = 0;
            double best_cum = 0;
            for (int dt = 1; dt <= config.window_max && dt <= t - 1; ++dt) {
                double cum, vol;
                if (!window_sums(returns, d, t, dt, cum, vol)) continue;
                if (std::abs(cum) < config.threshold_abs) continue;
                const double reference =
                    config.clock_time_average ? avg_clock[t][dt] : avg[dt];
                if (!std::isnan(reference) &&
                    std::abs(cum) < config.volatility_multiple * reference) {
                    continue;
                }
                if (best_dt == 0 || dt < best_dt) {
                    best_dt = dt;
                    best_cum = cum;
                }
            }
            if (best_dt > 0) {
                events.push_back(
                    {stock_id, returns.dates[d], t, best_cum > 0 ? 1 : -1, best_dt, best_cum});
            }
        }
    }
    return events;
}

// ---------------------------------------------------------------------------
// Naive matcher
// ---------------------------------------------------------------------------

namespace {

struct NaiveOrder {
    std::string id;
    Side side;
    Price price;
    Shares remaining;
    InvestorClass investor;
    long seq;
};

struct NaiveBook {
    std::vector<NaiveOrder> orders;
    long next_seq = 0;

    const NaiveOrder* best(Side side) const {
        const NaiveOrder* found = nullptr;
        for (const auto& o : orders) {
            if (o.side != side) continue;
            if (!found) {
                found = &o;
                continue;
            }
            const bool better = side == Side::buy
                                    ? (o.price > found->price ||
                                       (o.price == found->price && o.seq < found->seq))
                                    : (o.price < found->price ||
                                       (o.price == found->price && o.seq < found->seq));
            if (better) found = &o;
        }
        return found;
    }

    Shares match(Side incoming, Price limit, Shares size) {
        Shares executed = 0;
        while (size > 0) {
            NaiveOrder* target = nullptr;
            for (auto& o : orders) {
                if (o.side == incoming || o.remaining == 0) continue;
                const bool admissible = incoming == Side::buy ? o.price <= limit : o.price >= limit;
                if (!admissible) continue;
                if (!target) {
                    target = &o;
                    continue;
                }
                const bool better =
                    incoming == Side::buy
                        ? (o.price < target->price ||
                           (o.price == target->price && o.seq < target->seq))
                        : (o.price > target->price ||
                           (o.price == target->price && o.seq < target->seq));
                if (better) target = &o;
            }
            if (!target) break;
            const Shares fill = std::min(size, target->remaining);
            target->remaining -= fill;
            size -= fill;
            executed += fill;
        }
        orders.erase(std::remove_if(orders.begin(), orders.end(),
                                    [](const NaiveOrder& o) { return o.remaining == 0; }),
                     orders.end());
        return executed;
    }
};

} // namespace

std::vector<LogicalOrder> replay_bruteforce(const std::string& stock_id,
                                            const std::vector<OrderEvent>& events) {
    NaiveBook book;
    std::vector<LogicalOrder> out;
    Date current_date = 0;

    for (const auto& ev : events) {
        if (ev.stock_id != stock_id) continue;
        if (ev.date != current_date) {
            book.orders.clear();
            current_date = ev.date;
        }
        if (ev.kind == EventKind::submit) {
            const NaiveOrder* opp = book.best(opposite(ev.side));
            if (!opp) {
                out.push_back({ev.date, ev.time_ms, ev.side, Aggressiveness::limit, ev.investor,
                               ev.size, true});
                book.orders.push_back(
                    {ev.order_id, ev.side, ev.price, ev.size, ev.investor, book.next_seq++});
                continue;
            }
            const bool marketable =
                ev.side == Side::buy ? ev.price >= opp->price : ev.price <= opp->price;
            if (!marketable) {
                out.push_back({ev.date, ev.time_ms, ev.side, Aggressiveness::limit, ev.investor,
                               ev.size, false});
                book.orders.push_back(
                    {ev.order_id, ev.side, ev.price, ev.size, ev.investor, book.next_seq++});
                continue;
            }
            const Shares executed = book.match(ev.side, ev.price, ev.size);
            if (executed == ev.size) {
                out.push_back({ev.date, ev.time_ms, ev.side, Aggressiveness::filled, ev.investor,
                               ev.size, false});
            } else {
                out.push_back({ev.date, ev.time_ms, ev.side, Aggressiveness::partially_filled,
                               ev.investor, executed, false});
                out.push_back({ev.date, ev.time_ms, ev.side, Aggressiveness::limit, ev.investor,
                               ev.size - executed, false});
                book.orders.push_back({ev.order_id, ev.side, ev.price, ev.size - executed,
                                       ev.investor, book.next_seq++});
            }
        } else if (ev.kind == EventKind::cancel) {
            for (auto it = book.orders.begin(); it != book.orders.end(); ++it) {
                if (it->id != ev.order_id) continue;
                out.push_back({ev.date, ev.time_ms, it->side, Aggressiveness::canceled,
                               it->investor, it->remaining, false});
                book.orders.erase(it);
                break;
            }
        }
    }
    return out;
}

} // namespace orderflow::oracle
