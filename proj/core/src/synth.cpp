#include "orderflow/synth.hpp"

#include "orderflow/clock.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <random>

namespace orderflow {

using nlohmann::json;

double event_factor(const PeakSpec& spec, int t) {
    if (t == spec.t_max) return spec.peak_value;
    if (t < spec.t_max) {
        const int ramp_start = spec.t_max - spec.ramp_minutes;
        if (t < ramp_start || spec.ramp_minutes <= 0) return 1.0;
        return 1.0 + (spec.peak_value - 1.0) * double(t - ramp_start) / double(spec.ramp_minutes);
    }
    const int decay_start = std::max(spec.t_max, 0);
    if (t <= 0) {
        // Between a pre-event peak and the decay's first minute.
        const double at_one = 1.0 + spec.decay_amplitude;
        const double w = double(t - spec.t_max) / double(1 - spec.t_max);
        return spec.peak_value + (at_one - spec.peak_value) * w;
    }
    double dt = double(t - decay_start);
    if (dt < 1.0) dt = 1.0;
    return 1.0 + spec.decay_amplitude * std::pow(dt, -spec.alpha);
}

void ScenarioSpec::validate() const {
    if (num_stocks < 1 || num_days < 1) throw std::invalid_argument("need >= 1 stock and day");
    if (!is_valid_date(start_date)) throw std::invalid_argument("bad start_date");
    if (!(base_price > 0)) throw std::invalid_argument("base_price must be > 0");
    if (return_sigma < 0) throw std::invalid_argument("return_sigma must be >= 0");
    for (const auto& [name, gen] : quantities) {
        if (gen.base < 0) throw std::invalid_argument(name + ": base must be >= 0");
        if (gen.noise_sigma < 0) throw std::invalid_argument(name + ": noise_sigma must be >= 0");
        if (!gen.profile.empty() &&
            gen.profile.size() != std::size_t(TradingClock::kMinutesPerDay)) {
            throw std::invalid_argument(name + ": profile must have 240 values");
        }
    }
    for (const auto& ev : events) {
        if (ev.stock < 0 || ev.stock >= num_stocks) throw std::invalid_argument("event stock out of range");
        if (ev.day < 0 || ev.day >= num_days) throw std::invalid_argument("event day out of range");
        if (ev.minute < 1 || ev.minute > TradingClock::kMinutesPerDay)
            throw std::invalid_argument("event minute out of range");
        if (ev.sign != 1 && ev.sign != -1) throw std::invalid_argument("event sign must be +-1");
        if (!(ev.jump_total > 0)) throw std::invalid_argument("jump_total must be > 0");
        if (ev.jump_minutes < 1) throw std::invalid_argument("jump_minutes must be >= 1");
        for (const auto& [q, p] : ev.peaks) {
            if (!(p.alpha > 0)) throw std::invalid_argument(q + ": alpha must be > 0");
            if (!(p.peak_value > 0)) throw std::invalid_argument(q + ": peak_value must be > 0");
            if (p.decay_amplitude < 0) throw std::invalid_argument(q + ": negative amplitude");
        }
    }
    const double rates = rate_market + rate_limit + rate_cancel;
    if (std::abs(rates - 1.0) > 1e-9) throw std::invalid_argument("order rates must sum to 1");
}

const std::map<std::string, QuantityGen>& default_quantity_gens() {
    static const std::map<std::string, QuantityGen> defaults = {
        {"vol_buy_market", {20000.0, {}, 0.10}},
        {"vol_sell_market", {20000.0, {}, 0.10}},
        {"vol_buy_lo", {16000.0, {}, 0.10}},
        {"vol_sell_lo", {16000.0, {}, 0.10}},
        {"vol_buy_co", {6000.0, {}, 0.10}},
        {"vol_sell_co", {6000.0, {}, 0.10}},
        {"spread", {0.02, {}, 0.10}},
        {"abs_return", {1.0, {}, 0.0}},  // scales return_sigma
    };
    return defaults;
}

namespace {

constexpr double kPartialFrac = 0.3;   // share of market volume labeled partially filled
constexpr double kTypicalSize[kNumAggs] = {600.0, 500.0, 800.0, 600.0};

std::uint64_t stock_seed(std::uint64_t seed, int stock) {
    std::uint64_t x = seed + 0x9E3779B97F4A7C15ull * (std::uint64_t(stock) + 1);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

std::string stock_name(int i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%06d", i + 1);
    return buf;
}

} // namespace

SynthBars generate_bars(const ScenarioSpec& spec) {
    spec.validate();

    std::vector<Date> dates(spec.num_days);
    dates[0] = spec.start_date;
    for (int i = 1; i < spec.num_days; ++i) dates[i] = next_trading_date(dates[i - 1]);

    std::map<std::string, QuantityGen> gens = default_quantity_gens();
    for (const auto& [name, g] : spec.quantities) gens[name] = g;

    const int kMin = TradingClock::kMinutesPerDay;
    const long total = long(spec.num_days) * kMin;

    SynthBars out;
    for (const auto& [name, g] : gens) {
        if (name == "abs_return") continue;
        std::vector<double> profile(kMin);
        for (int m = 0; m < kMin; ++m) {
            profile[m] = g.base * (g.profile.empty() ? 1.0 : g.profile[m]);
        }
        out.truth.profiles[name] = std::move(profile);
    }

    for (const auto& ev : spec.events) {
        GroundTruth::EventTruth t;
        t.stock_id = stock_name(ev.stock);
        t.date = dates[ev.day];
        t.day = ev.day;
        t.minute = ev.minute;
        t.sign = ev.sign;
        t.peaks = ev.peaks;
        out.truth.events.push_back(std::move(t));
    }

    for (int s = 0; s < spec.num_stocks; ++s) {
        std::mt19937_64 rng(stock_seed(spec.seed, s));
        std::normal_distribution<double> normal(0.0, 1.0);

        // Multiplicative event overlays per quantity on the global axis.
        std::map<std::string, std::vector<double>> overlays;
        for (const auto& ev : spec.events) {
            if (ev.stock != s) continue;
            const long g0 = long(ev.day) * kMin + (ev.minute - 1);
            for (const auto& [q, peak] : ev.peaks) {
                auto [it, inserted] = overlays.try_emplace(q);
                if (inserted) it->second.assign(total, 1.0);
                for (int t = peak.t_max - peak.ramp_minutes; t <= 300; ++t) {
                    const long g = g0 + t;
                    if (g < 0 || g >= total) continue;
                    it->second[g] *= event_factor(peak, t);
                }
            }
        }
        auto overlay_at = [&](const std::string& q, long g) {
            auto it = overlays.find(q);
            return it == overlays.end() ? 1.0 : it->second[g];
        };

        // Return series: noise, then injected jumps and reversals.
        const QuantityGen& absret = gens.at("abs_return");
        std::vector<double> returns(total, std::nan(""));
        for (long g = 0; g < total; ++g) {
            const int m = int(g % kMin) + 1;
            if (m == 1) continue;  // no return at the first minute of a day
            const double sigma = spec.return_sigma * absret.base *
                                 (absret.profile.empty() ? 1.0 : absret.profile[m - 1]) *
                                 overlay_at("abs_return", g);
            returns[g] = sigma * normal(rng);
        }
        for (const auto& ev : spec.events) {
            if (ev.stock != s) continue;
            const long g0 = long(ev.day) * kMin + (ev.minute - 1);
            auto add_return = [&](long g, double dr) {
                if (g < 0 || g >= total) return;
                const int m = int(g % kMin) + 1;
                if (m == 1) return;
                if (std::isnan(returns[g])) returns[g] = 0.0;
                returns[g] += dr;
            };
            if (ev.jump_minutes > 1) {
                const double pre_each = ev.jump_pre_total / double(ev.jump_minutes - 1);
                for (int k = 1; k < ev.jump_minutes; ++k) {
                    add_return(g0 - ev.jump_minutes + k, ev.sign * pre_each);
                }
            }
            add_return(g0, ev.sign * (ev.jump_total - ev.jump_pre_total));
            if (ev.reversal_total > 0 && ev.reversal_minutes > 0) {
                const double rev_each = ev.reversal_total / double(ev.reversal_minutes);
                for (int k = 1; k <= ev.reversal_minutes; ++k) {
                    add_return(g0 + k, -ev.sign * rev_each);
                }
            }
        }

        // Quantity values; one lognormal draw per (quantity, cell) in fixed order.
        // A "volume" overlay targets total market volume and scales both sides.
        std::map<std::string, std::vector<double>> values;
        for (const auto& [name, g] : gens) {
            if (name == "abs_return") continue;
            const bool market_side = name == "vol_buy_market" || name == "vol_sell_market";
            std::vector<double> v(total);
            const double sig = g.noise_sigma;
            for (long i = 0; i < total; ++i) {
                const int m = int(i % kMin);
                const double mean = g.base * (g.profile.empty() ? 1.0 : g.profile[m]);
                const double noise =
                    sig > 0 ? std::exp(sig * normal(rng) - 0.5 * sig * sig) : 1.0;
                double overlay = overlay_at(name, i);
                if (market_side) overlay *= overlay_at("volume", i);
                v[i] = mean * noise * overlay;
            }
            values[name] = std::move(v);
        }

        StockBars bars;
        bars.stock_id = stock_name(s);
        bars.days.resize(spec.num_days);
        double log_mid = std::log(spec.base_price);
        const double instf = spec.prob_institution;
        for (int d = 0; d < spec.num_days; ++d) {
            StockDayBars& day = bars.days[d];
            day.date = dates[d];
            for (int m = 1; m <= kMin; ++m) {
                const long g = long(d) * kMin + (m - 1);
                MinuteBar& bar = day.bars[m - 1];
                bar.minute = m;
                if (m > 1) log_mid += returns[g];
                bar.mid = std::exp(log_mid);
                const double spr = values.at("spread")[g];
                bar.spread = spr;
                bar.best_bid = bar.mid - spr / 2.0;
                bar.best_ask = bar.mid + spr / 2.0;

                auto fill_market = [&](Side side, double vol) {
                    const int si = int(side);
                    bar.classes.volume[si][int(Aggressiveness::partially_filled)][0] =
                        vol * kPartialFrac * (1 - instf);
                    bar.classes.volume[si][int(Aggressiveness::partially_filled)][1] =
                        vol * kPartialFrac * instf;
                    bar.classes.volume[si][int(Aggressiveness::filled)][0] =
                        vol * (1 - kPartialFrac) * (1 - instf);
                    bar.classes.volume[si][int(Aggressiveness::filled)][1] =
                        vol * (1 - kPartialFrac) * instf;
                };
                auto fill_rest = [&](Side side, Aggressiveness agg, double vol) {
                    bar.classes.volume[int(side)][int(agg)][0] = vol * (1 - instf);
                    bar.classes.volume[int(side)][int(agg)][1] = vol * instf;
                };
                const double vbm = values.at("vol_buy_market")[g];
                const double vsm = values.at("vol_sell_market")[g];
                fill_market(Side::buy, vbm);
                fill_market(Side::sell, vsm);
                fill_rest(Side::buy, Aggressiveness::limit, values.at("vol_buy_lo")[g]);
                fill_rest(Side::sell, Aggressiveness::limit, values.at("vol_sell_lo")[g]);
                fill_rest(Side::buy, Aggressiveness::canceled, values.at("vol_buy_co")[g]);
                fill_rest(Side::sell, Aggressiveness::canceled, values.at("vol_sell_co")[g]);
                for (int si = 0; si < kNumSides; ++si) {
                    for (int a = 0; a < kNumAggs; ++a) {
                        for (int v = 0; v < kNumInvestors; ++v) {
                            const double vol = bar.classes.volume[si][a][v];
                            bar.classes.count[si][a][v] =
                                vol > 0 ? std::max(1, int(std::llround(vol / kTypicalSize[a]))) : 0;
                        }
                    }
                }
                bar.exec_vol_buy = vbm + vsm;
                bar.exec_vol_sell = vbm + vsm;
            }
        }
        out.stocks.push_back(std::move(bars));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Order flow generation
// ---------------------------------------------------------------------------

namespace {

constexpr Price kTick = kPriceScale / 100;  // 0.01 in scaled units

Shares floor_lot(Shares s) { return (s / kBoardLot) * kBoardLot; }
Shares ceil_lot(Shares s) { return ((s + kBoardLot - 1) / kBoardLot) * kBoardLot; }

struct SubmittedInfo {
    Side side;
    InvestorClass investor;
    Price price;
};

struct FlowStockState {
    MatchingEngine engine;
    long next_order_id = 1;
    std::vector<std::string> cancel_candidates;
    std::unordered_map<std::string, SubmittedInfo> submitted;
};

} // namespace

SynthOrderFlow generate_orderflow(const ScenarioSpec& spec) {
    spec.validate();

    std::vector<Date> dates(spec.num_days);
    dates[0] = spec.start_date;
    for (int i = 1; i < spec.num_days; ++i) dates[i] = next_trading_date(dates[i - 1]);

    SynthOrderFlow out;
    const Price base = std::llround(spec.base_price * kPriceScale);

    for (int s = 0; s < spec.num_stocks; ++s) {
        std::mt19937_64 rng(stock_seed(spec.seed, s) ^ 0x5bf0'3635'dcf2'6e2bull);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        const std::string stock = stock_name(s);

        FlowStockState st;
        GroundTruth::StockLabels labels;
        labels.stock_id = stock;

        auto emit = [&](Date date, int time_ms, EventKind kind, const std::string& id, Side side,
                        Price price, Shares size, InvestorClass inv) {
            out.events.push_back({stock, date, time_ms, kind, id, side, price, size, inv});
        };

        auto intend = [&](Date date, int time_ms, Side side, Aggressiveness agg,
                          InvestorClass inv, Shares volume, bool flagged) {
            labels.orders.push_back({date, time_ms, side, agg, inv, volume, flagged});
            switch (agg) {
                case Aggressiveness::partially_filled:
                case Aggressiveness::filled: ++out.truth.market_orders; break;
                case Aggressiveness::limit: ++out.truth.limit_orders; break;
                case Aggressiveness::canceled: ++out.truth.cancel_orders; break;
            }
        };

        auto submit_order = [&](Date date, int time_ms, Side side, Price price, Shares size,
                                InvestorClass inv) {
            const std::string id = std::to_string(st.next_order_id++);
            const BookState before = st.engine.state();
            auto outcome = st.engine.submit(id, side, price, size, inv, time_ms);
            emit(date, time_ms, EventKind::submit, id, side, price, size, inv);
            for (const auto& tr : outcome.trades) {
                const auto& who = st.submitted.at(tr.resting_id);
                emit(date, time_ms, EventKind::execute, tr.resting_id, who.side, tr.price,
                     tr.size, who.investor);
            }
            st.submitted[id] = {side, inv, price};
            if (outcome.rested > 0) st.cancel_candidates.push_back(id);
            return std::make_pair(before, outcome);
        };

        for (int d = 0; d < spec.num_days; ++d) {
            const Date date = dates[d];
            st.engine.clear();
            st.cancel_candidates.clear();

            // Day seeding: a deep backstop plus moderate near-touch levels.
            struct Seed {
                Side side;
                Price price;
                Shares size;
            };
            const Seed seeds[4] = {
                {Side::buy, base - 5 * kTick, 1'000'000},
                {Side::sell, base + 5 * kTick, 1'000'000},
                {Side::buy, base - kTick, 3'000},
                {Side::sell, base + kTick, 3'000},
            };
            int seed_ms = TradingClock::kMorningOpenMs;
            for (const auto& seed : seeds) {
                const BookState before = st.engine.state();
                const bool opp_empty = seed.side == Side::buy ? !before.best_ask.has_value()
                                                              : !before.best_bid.has_value();
                intend(date, seed_ms, seed.side, Aggressiveness::limit,
                       InvestorClass::individual, seed.size, opp_empty);
                submit_order(date, seed_ms, seed.side, seed.price, seed.size,
                             InvestorClass::individual);
                seed_ms += 1;
            }
            const std::size_t protected_ids = st.cancel_candidates.size();

            // Scheduled strictly after the seed orders' timestamps.
            std::vector<int> offsets(spec.orders_per_day);
            for (auto& off : offsets) {
                off = 1000 + int(uni(rng) * double(TradingClock::kMinutesPerDay * 60000 - 1001));
            }
            std::sort(offsets.begin(), offsets.end());

            for (int off : offsets) {
                const int minute = off / 60000 + 1;
                const int time_ms = TradingClock::minute_start_ms(minute) + off % 60000;

                double u = uni(rng);
                const Side side = uni(rng) < spec.prob_buy ? Side::buy : Side::sell;
                const InvestorClass inv = uni(rng) < spec.prob_institution
                                              ? InvestorClass::institution
                                              : InvestorClass::individual;
                const BookState book = st.engine.state();

                enum class Kind { market, limit, cancel };
                Kind kind = u < spec.rate_market                   ? Kind::market
                            : u < spec.rate_market + spec.rate_limit ? Kind::limit
                                                                     : Kind::cancel;

                if (kind == Kind::cancel) {
                    // Pick a live non-seed resting order; fall back to a limit.
                    std::string victim;
                    while (st.cancel_candidates.size() > protected_ids) {
                        const std::size_t span = st.cancel_candidates.size() - protected_ids;
                        const std::size_t pick =
                            protected_ids + std::size_t(uni(rng) * double(span));
                        const std::string& id = st.cancel_candidates[pick];
                        if (st.engine.remaining(id).has_value()) {
                            victim = id;
                            break;
                        }
                        st.cancel_candidates.erase(st.cancel_candidates.begin() + pick);
                    }
                    if (!victim.empty()) {
                        const Shares rem = *st.engine.remaining(victim);
                        const auto& who = st.submitted.at(victim);
                        intend(date, time_ms, who.side, Aggressiveness::canceled, who.investor,
                               rem, false);
                        st.engine.cancel(victim, time_ms);
                        emit(date, time_ms, EventKind::cancel, victim, who.side,
                             who.price, rem, who.investor);
                        st.cancel_candidates.erase(std::find(st.cancel_candidates.begin(),
                                                             st.cancel_candidates.end(), victim));
                        continue;
                    }
                    kind = Kind::limit;
                }

                if (kind == Kind::market) {
                    const auto& opp_quote = side == Side::buy ? book.best_ask : book.best_bid;
                    const Shares opp_depth =
                        side == Side::buy ? book.ask_depth_at_best : book.bid_depth_at_best;
                    if (opp_quote.has_value() && opp_depth >= 2 * kBoardLot) {
                        const Price price = *opp_quote;
                        const bool partial = opp_depth <= 5000 && uni(rng) < spec.partial_fill_prob;
                        if (partial) {
                            const Shares executed = st.engine.admissible_depth(side, price);
                            Shares size = executed + 1 + Shares(uni(rng) * 900.0);
                            if (side == Side::buy) size = ceil_lot(size);
                            intend(date, time_ms, side, Aggressiveness::partially_filled, inv,
                                   executed, false);
                            intend(date, time_ms, side, Aggressiveness::limit, inv,
                                   size - executed, false);
                            submit_order(date, time_ms, side, price, size, inv);
                        } else {
                            const Shares cap = std::min<Shares>(opp_depth, 2000);
                            Shares size = kBoardLot + Shares(uni(rng) * double(cap - kBoardLot));
                            size = side == Side::buy ? floor_lot(size) : size;
                            if (size < 1) size = kBoardLot;
                            intend(date, time_ms, side, Aggressiveness::filled, inv, size, false);
                            submit_order(date, time_ms, side, price, size, inv);
                        }
                        continue;
                    }
                    kind = Kind::limit;  // thin or one-sided book
                }

                // Limit order joining its own side's best quote.
                Price price;
                if (side == Side::buy) {
                    price = book.best_bid ? *book.best_bid
                                          : (book.best_ask ? *book.best_ask - kTick : base - kTick);
                } else {
                    price = book.best_ask ? *book.best_ask
                                          : (book.best_bid ? *book.best_bid + kTick : base + kTick);
                }
                Shares size = side == Side::buy
                                  ? kBoardLot * (1 + Shares(uni(rng) * 29.0))
                                  : 50 + Shares(uni(rng) * 2950.0);
                const bool opp_empty = side == Side::buy ? !book.best_ask.has_value()
                                                         : !book.best_bid.has_value();
                intend(date, time_ms, side, Aggressiveness::limit, inv, size, opp_empty);
                submit_order(date, time_ms, side, price, size, inv);
            }
        }
        out.truth.labels.push_back(std::move(labels));
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON round trips
// ---------------------------------------------------------------------------

namespace {

json peak_to_json(const PeakSpec& p) {
    return json{{"peak_value", p.peak_value},
                {"t_max", p.t_max},
                {"alpha", p.alpha},
                {"decay_amplitude", p.decay_amplitude},
                {"ramp_minutes", p.ramp_minutes}};
}

PeakSpec peak_from_json(const json& j) {
    PeakSpec p;
    p.peak_value = j.value("peak_value", 1.0);
    p.t_max = j.value("t_max", 0);
    p.alpha = j.value("alpha", 0.5);
    p.decay_amplitude = j.value("decay_amplitude", 0.0);
    p.ramp_minutes = j.value("ramp_minutes", 30);
    return p;
}

} // namespace

std::string ScenarioSpec::to_json() const {
    json j;
    j["num_stocks"] = num_stocks;
    j["num_days"] = num_days;
    j["start_date"] = start_date;
    j["seed"] = seed;
    j["base_price"] = base_price;
    j["return_sigma"] = return_sigma;
    j["orders_per_day"] = orders_per_day;
    j["rate_market"] = rate_market;
    j["rate_limit"] = rate_limit;
    j["rate_cancel"] = rate_cancel;
    j["partial_fill_prob"] = partial_fill_prob;
    j["prob_buy"] = prob_buy;
    j["prob_institution"] = prob_institution;
    j["quantities"] = json::object();
    for (const auto& [name, g] : quantities) {
        json q{{"base", g.base}, {"noise_sigma", g.noise_sigma}};
        if (!g.profile.empty()) q["profile"] = g.profile;
        j["quantities"][name] = std::move(q);
    }
    j["events"] = json::array();
    for (const auto& ev : events) {
        json e{{"stock", ev.stock},
               {"day", ev.day},
               {"minute", ev.minute},
               {"sign", ev.sign},
               {"jump_total", ev.jump_total},
               {"jump_pre_total", ev.jump_pre_total},
               {"jump_minutes", ev.jump_minutes},
               {"reversal_total", ev.reversal_total},
               {"reversal_minutes", ev.reversal_minutes}};
        e["peaks"] = json::object();
        for (const auto& [q, p] : ev.peaks) e["peaks"][q] = peak_to_json(p);
        j["events"].push_back(std::move(e));
    }
    return j.dump(2);
}

ScenarioSpec ScenarioSpec::from_json(const std::string& text) {
    json j = json::parse(text);
    ScenarioSpec s;
    s.num_stocks = j.value("num_stocks", s.num_stocks);
    s.num_days = j.value("num_days", s.num_days);
    s.start_date = j.value("start_date", s.start_date);
    s.seed = j.value("seed", s.seed);
    s.base_price = j.value("base_price", s.base_price);
    s.return_sigma = j.value("return_sigma", s.return_sigma);
    s.orders_per_day = j.value("orders_per_day", s.orders_per_day);
    s.rate_market = j.value("rate_market", s.rate_market);
    s.rate_limit = j.value("rate_limit", s.rate_limit);
    s.rate_cancel = j.value("rate_cancel", s.rate_cancel);
    s.partial_fill_prob = j.value("partial_fill_prob", s.partial_fill_prob);
    s.prob_buy = j.value("prob_buy", s.prob_buy);
    s.prob_institution = j.value("prob_institution", s.prob_institution);
    if (j.contains("quantities")) {
        for (const auto& [name, q] : j["quantities"].items()) {
            QuantityGen g;
            g.base = q.value("base", 0.0);
            g.noise_sigma = q.value("noise_sigma", 0.1);
            if (q.contains("profile")) g.profile = q["profile"].get<std::vector<double>>();
            s.quantities[name] = std::move(g);
        }
    }
    if (j.contains("events")) {
        for (const auto& e : j["events"]) {
            EventInjection ev;
            ev.stock = e.value("stock", 0);
            ev.day = e.value("day", 0);
            ev.minute = e.value("minute", 0);
            ev.sign = e.value("sign", 1);
            ev.jump_total = e.value("jump_total", 0.05);
            ev.jump_pre_total = e.value("jump_pre_total", 0.0);
            ev.jump_minutes = e.value("jump_minutes", 1);
            ev.reversal_total = e.value("reversal_total", 0.0);
            ev.reversal_minutes = e.value("reversal_minutes", 15);
            if (e.contains("peaks")) {
                for (const auto& [q, p] : e["peaks"].items()) ev.peaks[q] = peak_from_json(p);
            }
            s.events.push_back(std::move(ev));
        }
    }
    s.validate();
    return s;
}

ScenarioSpec ScenarioSpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json(text);
}

void ScenarioSpec::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scenario file: " + path);
    out << to_json() << '\n';
}

std::string GroundTruth::to_json() const {
    json j;
    j["events"] = json::array();
    for (const auto& ev : events) {
        json e{{"stock_id", ev.stock_id}, {"date", ev.date},     {"day", ev.day},
               {"minute", ev.minute},     {"sign", ev.sign}};
        e["peaks"] = json::object();
        for (const auto& [q, p] : ev.peaks) e["peaks"][q] = peak_to_json(p);
        j["events"].push_back(std::move(e));
    }
    j["profiles"] = json::object();
    for (const auto& [name, prof] : profiles) j["profiles"][name] = prof;
    j["market_orders"] = market_orders;
    j["limit_orders"] = limit_orders;
    j["cancel_orders"] = cancel_orders;
    j["labels"] = json::array();
    for (const auto& sl : labels) {
        json l{{"stock_id", sl.stock_id}};
        json orders = json::array();
        for (const auto& lo : sl.orders) {
            orders.push_back(json{{"date", lo.date},
                                  {"time_ms", lo.time_ms},
                                  {"side", to_string(lo.side)},
                                  {"class", to_string(lo.agg)},
                                  {"investor", to_string(lo.investor)},
                                  {"volume", lo.volume},
                                  {"flagged", lo.flagged}});
        }
        l["orders"] = std::move(orders);
        j["labels"].push_back(std::move(l));
    }
    return j.dump();
}

void GroundTruth::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write ground truth: " + path);
    out << to_json() << '\n';
}

} // namespace orderflow
