#pragma once

#include "orderflow/bars.hpp"
#include "orderflow/classify.hpp"
#include "orderflow/types.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace orderflow {

// Multiplicative event overlay on one quantity: linear accumulation over
// `ramp_minutes` up to `peak_value` at t_max, then power-law decay with
// excess `decay_amplitude * t^(-alpha)` measured from max(t_max, 0).
struct PeakSpec {
    double peak_value = 1.0;
    int t_max = 0;
    double alpha = 0.5;
    double decay_amplitude = 0.0;
    int ramp_minutes = 30;
};

double event_factor(const PeakSpec& spec, int t);

// One injected extreme event. The price move totals `jump_total` in log
// return, with `jump_pre_total` spread evenly over the jump_minutes - 1
// minutes before the event minute and the rest concentrated at the event
// minute; the reversal is an opposite drift right after it.
struct EventInjection {
    int stock = 0;  // index into the scenario's stocks
    int day = 0;    // index into the scenario's days
    int minute = 0; // intraday index, t = 0 of the event
    int sign = +1;
    double jump_total = 0.05;
    double jump_pre_total = 0.0;
    int jump_minutes = 1;
    double reversal_total = 0.0;
    int reversal_minutes = 15;
    std::map<std::string, PeakSpec> peaks;  // quantity name -> overlay
};

// Base level, optional 240-minute seasonality profile, and lognormal noise
// scale for one generated quantity.
struct QuantityGen {
    double base = 0.0;
    std::vector<double> profile;  // empty = flat 1.0, else 240 multipliers
    double noise_sigma = 0.1;
};

struct ScenarioSpec {
    int num_stocks = 1;
    int num_days = 20;
    Date start_date = 20030102;
    std::uint64_t seed = 1;

    double base_price = 10.0;
    double return_sigma = 0.0005;
    std::map<std::string, QuantityGen> quantities;  // overrides for the defaults
    std::vector<EventInjection> events;

    // Order-flow mode (generate_orderflow).
    int orders_per_day = 400;
    double rate_market = 0.26;
    double rate_limit = 0.60;
    double rate_cancel = 0.14;
    double partial_fill_prob = 0.0;  // fraction of market orders built as partial fills
    double prob_buy = 0.5;
    double prob_institution = 0.3;

    void validate() const;
    std::string to_json() const;
    static ScenarioSpec from_json(const std::string& text);
    static ScenarioSpec load(const std::string& path);
    void save(const std::string& path) const;
};

// Generated quantity names the bar filler understands.
//   vol_buy_market, vol_sell_market, vol_buy_lo, vol_sell_lo,
//   vol_buy_co, vol_sell_co, spread, abs_return (noise-scale profile)
const std::map<std::string, QuantityGen>& default_quantity_gens();

struct GroundTruth {
    struct EventTruth {
        std::string stock_id;
        Date date = 0;
        int day = 0;
        int minute = 0;
        int sign = +1;
        std::map<std::string, PeakSpec> peaks;
    };
    std::vector<EventTruth> events;
    std::map<std::string, std::vector<double>> profiles;  // absolute per-minute means

    // Order-flow mode: intended classification per logical order, in stream
    // order per stock, plus the logical-order tallies behind the rates.
    struct StockLabels {
        std::string stock_id;
        std::vector<LogicalOrder> orders;
    };
    std::vector<StockLabels> labels;
    long market_orders = 0;
    long limit_orders = 0;
    long cancel_orders = 0;

    std::string to_json() const;
    void save(const std::string& path) const;
};

struct SynthBars {
    std::vector<StockBars> stocks;
    GroundTruth truth;
};

// Minute bars with known seasonality, noise, and injected events.
// Deterministic under (seed, spec).
SynthBars generate_bars(const ScenarioSpec& spec);

struct SynthOrderFlow {
    std::vector<OrderEvent> events;  // ingest input format, sorted per stock
    GroundTruth truth;
};

// A price-time-priority-consistent tick stream with per-order intended
// classes recorded as ground truth. Replaying the stream through the
// classify module must recover the labels exactly.
SynthOrderFlow generate_orderflow(const ScenarioSpec& spec);

} // namespace orderflow
