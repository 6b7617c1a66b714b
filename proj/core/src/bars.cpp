#include "orderflow/bars.hpp"

#include "orderflow/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace orderflow {

int StockBars::day_index(Date d) const {
    auto it = std::lower_bound(days.begin(), days.end(), d,
                               [](const StockDayBars& sd, Date v) { return sd.date < v; });
    if (it == days.end() || it->date != d) return -1;
    return static_cast<int>(it - days.begin());
}

namespace {

struct QuoteSnapshot {
    double mid = std::nan("");
    double bid = std::nan("");
    double ask = std::nan("");
    double spread = std::nan("");
    bool any = false;
};

QuoteSnapshot snapshot_of(const BookState& st, const QuoteSnapshot& carry) {
    QuoteSnapshot q = carry;
    const bool have_bid = st.best_bid.has_value();
    const bool have_ask = st.best_ask.has_value();
    if (have_bid) q.bid = price_to_double(*st.best_bid);
    if (have_ask) q.ask = price_to_double(*st.best_ask);
    if (have_bid && have_ask) {
        q.mid = (price_to_double(*st.best_bid) + price_to_double(*st.best_ask)) / 2.0;
        q.spread = price_to_double(*st.best_ask - *st.best_bid);
        q.any = true;
    }
    return q;
}

} // namespace

StockBars build_minute_bars(const std::string& stock_id,
                            const std::vector<OrderEvent>& events, BarBuildStats& stats) {
    StockBars out;
    out.stock_id = stock_id;

    // Group by date, preserving order.
    std::map<Date, std::vector<const OrderEvent*>> by_day;
    for (const auto& ev : events) {
        if (ev.stock_id != stock_id) continue;
        by_day[ev.date].push_back(&ev);
    }

    MatchingEngine engine;
    QuoteSnapshot carry;  // quote state carried across minutes and days

    for (const auto& [date, day_events] : by_day) {
        engine.clear();  // orders do not survive overnight
        StockDayBars day;
        day.date = date;
        for (int m = 1; m <= TradingClock::kMinutesPerDay; ++m) day.bars[m - 1].minute = m;

        std::vector<LogicalOrder> logical;
        struct MinuteExec {
            double buy = 0, sell = 0;
        };
        std::array<MinuteExec, TradingClock::kMinutesPerDay + 1> exec{};

        int cursor = 1;  // next bar minute whose closing state is not yet fixed
        QuoteSnapshot current = carry;

        auto seal_through = [&](int upto) {
            // Bars [cursor, upto] close with the current quote state.
            for (; cursor <= upto; ++cursor) {
                MinuteBar& bar = day.bars[cursor - 1];
                bar.mid = current.mid;
                bar.best_bid = current.bid;
                bar.best_ask = current.ask;
                bar.spread = current.spread;
            }
        };

        for (const OrderEvent* evp : day_events) {
            const OrderEvent& ev = *evp;
            ++stats.events_processed;
            const int minute = TradingClock::intraday_index(ev.time_ms);
            if (minute == 0) {
                ++stats.events_outside_session;
                continue;
            }
            if (minute > cursor) seal_through(minute - 1);

            if (ev.kind == EventKind::submit) {
                auto outcome = engine.submit(ev.order_id, ev.side, ev.price, ev.size,
                                             ev.investor, ev.time_ms);
                for (auto& lo : outcome.logical) logical.push_back(lo);
                for (const auto& tr : outcome.trades) {
                    exec[minute].buy += double(tr.size);
                    exec[minute].sell += double(tr.size);
                }
            } else if (ev.kind == EventKind::cancel) {
                if (auto lo = engine.cancel(ev.order_id, ev.time_ms)) logical.push_back(*lo);
            }
            // Execute records are exchange confirmations; matching is derived
            // from the replay itself.

            current = snapshot_of(engine.state(), current);
        }
        seal_through(TradingClock::kMinutesPerDay);

        if (!current.any) {
            // No two-sided quote ever, neither today nor carried in.
            carry = current;
            ++stats.dropped_quoteless_days;
            stats.warnings.push_back(stock_id + " " + std::to_string(date) +
                                     ": no quotes, stock-day dropped");
            continue;
        }

        auto cubes = aggregate_minute_classes(logical);
        for (int m = 1; m <= TradingClock::kMinutesPerDay; ++m) {
            day.bars[m - 1].classes = cubes[m];
            day.bars[m - 1].exec_vol_buy = exec[m].buy;
            day.bars[m - 1].exec_vol_sell = exec[m].sell;
        }

        carry = current;
        out.days.push_back(std::move(day));
    }

    stats.flagged_submissions += engine.flagged_submissions;
    stats.inconsistent_cancels += engine.inconsistent_cancels;
    return out;
}

std::vector<StockBars> build_all_minute_bars(const std::vector<OrderEvent>& events,
                                             BarBuildStats& stats) {
    std::vector<std::string> order;
    for (const auto& ev : events) {
        if (std::find(order.begin(), order.end(), ev.stock_id) == order.end()) {
            order.push_back(ev.stock_id);
        }
    }
    std::sort(order.begin(), order.end());
    std::vector<StockBars> out;
    out.reserve(order.size());
    for (const auto& stock : order) out.push_back(build_minute_bars(stock, events, stats));
    return out;
}

void apply_split_adjustment(StockBars& bars, const SplitTable& table) {
    auto it = table.find(bars.stock_id);
    if (it == table.end()) return;
    for (const auto& split : it->second) {
        if (!(split.factor > 0)) throw std::runtime_error("split factor must be > 0");
        for (auto& day : bars.days) {
            if (day.date >= split.effective_date) continue;
            for (auto& bar : day.bars) {
                for (int s = 0; s < kNumSides; ++s)
                    for (int a = 0; a < kNumAggs; ++a)
                        for (int v = 0; v < kNumInvestors; ++v)
                            bar.classes.volume[s][a][v] *= split.factor;
                bar.exec_vol_buy *= split.factor;
                bar.exec_vol_sell *= split.factor;
                bar.mid /= split.factor;
                bar.best_bid /= split.factor;
                bar.best_ask /= split.factor;
                bar.spread /= split.factor;
                bar.split_factor *= split.factor;
            }
        }
    }
}

namespace {

constexpr const char* kSideTag[kNumSides] = {"buy", "sell"};
constexpr const char* kAggTag[kNumAggs] = {"pf", "fo", "lo", "co"};
constexpr const char* kInvTag[kNumInvestors] = {"ind", "inst"};

} // namespace

void write_bars_csv(const std::string& path, const StockBars& bars) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write bars file: " + path);

    out << "stock_id,date,minute,mid,best_bid,best_ask,spread,exec_vol_buy,exec_vol_sell,split_factor";
    for (int s = 0; s < kNumSides; ++s)
        for (int a = 0; a < kNumAggs; ++a)
            for (int v = 0; v < kNumInvestors; ++v)
                out << ",vol_" << kSideTag[s] << '_' << kAggTag[a] << '_' << kInvTag[v];
    for (int s = 0; s < kNumSides; ++s)
        for (int a = 0; a < kNumAggs; ++a)
            for (int v = 0; v < kNumInvestors; ++v)
                out << ",num_" << kSideTag[s] << '_' << kAggTag[a] << '_' << kInvTag[v];
    out << '\n';

    for (const auto& day : bars.days) {
        for (const auto& bar : day.bars) {
            out << bars.stock_id << ',' << day.date << ',' << bar.minute << ','
                << fixed6(bar.mid) << ',' << fixed6(bar.best_bid) << ',' << fixed6(bar.best_ask)
                << ',' << fixed6(bar.spread) << ',' << fixed2(bar.exec_vol_buy) << ','
                << fixed2(bar.exec_vol_sell) << ',' << fixed6(bar.split_factor);
            for (int s = 0; s < kNumSides; ++s)
                for (int a = 0; a < kNumAggs; ++a)
                    for (int v = 0; v < kNumInvestors; ++v)
                        out << ',' << fixed2(bar.classes.volume[s][a][v]);
            for (int s = 0; s < kNumSides; ++s)
                for (int a = 0; a < kNumAggs; ++a)
                    for (int v = 0; v < kNumInvestors; ++v)
                        out << ',' << bar.classes.count[s][a][v];
            out << '\n';
        }
    }
}

StockBars read_bars_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open bars file: " + path);

    StockBars bars;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty bars file: " + path);

    StockDayBars* day = nullptr;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cols.push_back(cell);
        const std::size_t expected = 10 + 2ull * kNumSides * kNumAggs * kNumInvestors;
        if (cols.size() != expected) throw std::runtime_error("bad bars row in " + path);

        bars.stock_id = cols[0];
        const Date date = std::stoi(cols[1]);
        const int minute = std::stoi(cols[2]);
        if (!day || day->date != date) {
            bars.days.emplace_back();
            day = &bars.days.back();
            day->date = date;
            for (int m = 1; m <= TradingClock::kMinutesPerDay; ++m) day->bars[m - 1].minute = m;
        }
        MinuteBar& bar = day->bars[minute - 1];
        auto num = [&](const std::string& s) {
            return s == "nan" ? std::nan("") : std::stod(s);
        };
        bar.mid = num(cols[3]);
        bar.best_bid = num(cols[4]);
        bar.best_ask = num(cols[5]);
        bar.spread = num(cols[6]);
        bar.exec_vol_buy = num(cols[7]);
        bar.exec_vol_sell = num(cols[8]);
        bar.split_factor = num(cols[9]);
        std::size_t c = 10;
        for (int s = 0; s < kNumSides; ++s)
            for (int a = 0; a < kNumAggs; ++a)
                for (int v = 0; v < kNumInvestors; ++v)
                    bar.classes.volume[s][a][v] = num(cols[c++]);
        for (int s = 0; s < kNumSides; ++s)
            for (int a = 0; a < kNumAggs; ++a)
                for (int v = 0; v < kNumInvestors; ++v)
                    bar.classes.count[s][a][v] = std::stoi(cols[c++]);
    }
    return bars;
}

} // namespace orderflow
