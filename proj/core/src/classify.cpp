#include "orderflow/classify.hpp"

namespace orderflow {

std::optional<double> imbalance(double v_buy, double v_sell) {
    if (v_buy < 0 || v_sell < 0) throw std::invalid_argument("negative volume");
    const double total = v_buy + v_sell;
    if (total <= 0) return std::nullopt;
    return v_buy / total;
}

RelativeRates relative_rates(long market, long limit, long cancel) {
    if (market < 0 || limit < 0 || cancel < 0) throw std::invalid_argument("negative count");
    RelativeRates r;
    const long total = market + limit + cancel;
    if (total == 0) return r;
    r.rate_market = double(market) / double(total);
    r.rate_limit = double(limit) / double(total);
    r.rate_cancel = double(cancel) / double(total);
    r.defined = true;
    return r;
}

std::vector<ClassCube> aggregate_minute_classes(const std::vector<LogicalOrder>& orders) {
    std::vector<ClassCube> cubes(TradingClock::kMinutesPerDay + 1);  // index by minute, [1..240]
    for (const auto& lo : orders) {
        const int minute = TradingClock::intraday_index(lo.time_ms);
        if (minute == 0) continue;
        cubes[minute].add(lo);
    }
    return cubes;
}

std::vector<LogicalOrder> replay_logical_orders(const std::string& stock_id,
                                                const std::vector<OrderEvent>& events) {
    MatchingEngine engine;
    std::vector<LogicalOrder> out;
    Date current_date = 0;
    for (const auto& ev : events) {
        if (ev.stock_id != stock_id) continue;
        if (ev.date != current_date) {
            engine.clear();  // orders do not survive overnight
            current_date = ev.date;
        }
        if (ev.kind == EventKind::submit) {
            auto outcome = engine.submit(ev.order_id, ev.side, ev.price, ev.size,
                                         ev.investor, ev.time_ms);
            for (auto& lo : outcome.logical) {
                lo.date = ev.date;
                out.push_back(lo);
            }
        } else if (ev.kind == EventKind::cancel) {
            if (auto lo = engine.cancel(ev.order_id, ev.time_ms)) {
                lo->date = ev.date;
                out.push_back(*lo);
            }
        }
    }
    return out;
}

} // namespace orderflow
