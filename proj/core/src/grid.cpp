#include "orderflow/grid.hpp"

namespace orderflow {

DayMinuteGrid DayMinuteGrid::blank(std::vector<Date> dates) {
    DayMinuteGrid g;
    g.dates = std::move(dates);
    g.values.assign(g.dates.size() * TradingClock::kMinutesPerDay, std::nan(""));
    return g;
}

DayMinuteGrid return_series(const StockBars& bars) {
    std::vector<Date> dates;
    dates.reserve(bars.days.size());
    for (const auto& d : bars.days) dates.push_back(d.date);
    DayMinuteGrid g = DayMinuteGrid::blank(std::move(dates));

    for (int d = 0; d < g.num_days(); ++d) {
        const auto& day = bars.days[d];
        for (int m = 2; m <= TradingClock::kMinutesPerDay; ++m) {
            const double m1 = day.bars[m - 2].mid;
            const double m2 = day.bars[m - 1].mid;
            if (std::isnan(m1) || std::isnan(m2) || m1 <= 0 || m2 <= 0) continue;
            g.at(d, m) = std::log(m2 / m1);
        }
    }
    return g;
}

namespace {

double agg_volume(const MinuteBar& bar, Side s, Aggressiveness a) {
    double v = 0;
    for (int inv = 0; inv < kNumInvestors; ++inv) v += bar.classes.volume[int(s)][int(a)][inv];
    return v;
}

double agg_count(const MinuteBar& bar, Side s, Aggressiveness a) {
    double v = 0;
    for (int inv = 0; inv < kNumInvestors; ++inv) v += bar.classes.count[int(s)][int(a)][inv];
    return v;
}

double abs_return_of(const MinuteBar& bar, const MinuteBar* prev) {
    if (!prev) return std::nan("");
    if (std::isnan(prev->mid) || std::isnan(bar.mid) || prev->mid <= 0 || bar.mid <= 0)
        return std::nan("");
    return std::abs(std::log(bar.mid / prev->mid));
}

double imbalance_of(const MinuteBar& bar, Side numerator) {
    const double vb = bar.classes.market_volume(Side::buy);
    const double vs = bar.classes.market_volume(Side::sell);
    if (vb + vs <= 0) return std::nan("");
    return (numerator == Side::buy ? vb : vs) / (vb + vs);
}

double rate_of(const MinuteBar& bar, InvestorClass inv, int which) {
    const long market = bar.classes.market_count(inv);
    const long limit = bar.classes.limit_count(inv);
    const long cancel = bar.classes.cancel_count(inv);
    const long total = market + limit + cancel;
    if (total == 0) return std::nan("");
    const long num = which == 0 ? market : which == 1 ? limit : cancel;
    return double(num) / double(total);
}

constexpr Side kSides[2] = {Side::buy, Side::sell};
constexpr const char* kSideTag[2] = {"buy", "sell"};
constexpr Aggressiveness kAggs[4] = {Aggressiveness::partially_filled, Aggressiveness::filled,
                                     Aggressiveness::limit, Aggressiveness::canceled};
constexpr const char* kAggTag[4] = {"pf", "fo", "lo", "co"};
constexpr InvestorClass kInvs[2] = {InvestorClass::individual, InvestorClass::institution};
constexpr const char* kInvTag[2] = {"ind", "inst"};
constexpr const char* kRateTag[3] = {"market", "limit", "cancel"};

std::vector<QuantityDef> make_registry() {
    std::vector<QuantityDef> defs;

    defs.push_back({"abs_return", true, abs_return_of});
    defs.push_back({"volume", true, [](const MinuteBar& b, const MinuteBar*) {
                        return b.classes.market_volume(Side::buy) +
                               b.classes.market_volume(Side::sell);
                    }});
    defs.push_back({"spread", true, [](const MinuteBar& b, const MinuteBar*) { return b.spread; }});
    defs.push_back({"imbalance_buy", true, [](const MinuteBar& b, const MinuteBar*) {
                        return imbalance_of(b, Side::buy);
                    }});
    defs.push_back({"imbalance_sell", true, [](const MinuteBar& b, const MinuteBar*) {
                        return imbalance_of(b, Side::sell);
                    }});

    for (int s = 0; s < 2; ++s) {
        defs.push_back({std::string("vol_") + kSideTag[s] + "_market", true,
                        [s](const MinuteBar& b, const MinuteBar*) {
                            return b.classes.market_volume(kSides[s]);
                        }});
    }

    for (int s = 0; s < 2; ++s) {
        for (int a = 0; a < 4; ++a) {
            defs.push_back({std::string("vol_") + kSideTag[s] + '_' + kAggTag[a], true,
                            [s, a](const MinuteBar& b, const MinuteBar*) {
                                return agg_volume(b, kSides[s], kAggs[a]);
                            }});
        }
    }
    for (int s = 0; s < 2; ++s) {
        for (int a = 0; a < 4; ++a) {
            defs.push_back({std::string("num_") + kSideTag[s] + '_' + kAggTag[a], true,
                            [s, a](const MinuteBar& b, const MinuteBar*) {
                                return agg_count(b, kSides[s], kAggs[a]);
                            }});
        }
    }

    for (int s = 0; s < 2; ++s) {
        for (int v = 0; v < 2; ++v) {
            defs.push_back({std::string("vol_") + kSideTag[s] + "_market_" + kInvTag[v], true,
                            [s, v](const MinuteBar& b, const MinuteBar*) {
                                return b.classes.market_volume(kSides[s], kInvs[v]);
                            }});
        }
    }

    // Relative rates are compared against their normal-period levels
    // directly; they are proportions already and are not deseasonalized.
    for (int v = 0; v < 2; ++v) {
        for (int r = 0; r < 3; ++r) {
            defs.push_back({std::string("rate_") + kRateTag[r] + '_' + kInvTag[v], false,
                            [v, r](const MinuteBar& b, const MinuteBar*) {
                                return rate_of(b, kInvs[v], r);
                            }});
        }
    }
    return defs;
}

} // namespace

const std::vector<QuantityDef>& quantity_registry() {
    static const std::vector<QuantityDef> registry = make_registry();
    return registry;
}

const QuantityDef* find_quantity(const std::string& name) {
    for (const auto& def : quantity_registry()) {
        if (def.name == name) return &def;
    }
    return nullptr;
}

DayMinuteGrid extract_quantity(const StockBars& bars, const QuantityDef& def) {
    std::vector<Date> dates;
    dates.reserve(bars.days.size());
    for (const auto& d : bars.days) dates.push_back(d.date);
    DayMinuteGrid g = DayMinuteGrid::blank(std::move(dates));

    for (int d = 0; d < g.num_days(); ++d) {
        const auto& day = bars.days[d];
        for (int m = 1; m <= TradingClock::kMinutesPerDay; ++m) {
            const MinuteBar* prev = m > 1 ? &day.bars[m - 2] : nullptr;
            g.at(d, m) = def.extract(day.bars[m - 1], prev);
        }
    }
    return g;
}

} // namespace orderflow
