#include "orderflow/detect.hpp"

#include "oracle.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace orderflow;

namespace {

// Return grids built directly; minute 1 of each day stays undefined.
DayMinuteGrid noise_returns(int days, double sigma, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0, 1);
    std::vector<std::vector<double>> rows(days, std::vector<double>(240, std::nan("")));
    for (auto& row : rows) {
        for (int m = 1; m < 240; ++m) row[m] = sigma * normal(rng);
    }
    return test::make_grid(rows);
}

bool events_equal(const std::vector<ExtremeEvent>& a, const std::vector<ExtremeEvent>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i].stock_id == b[i].stock_id && a[i].date == b[i].date &&
              a[i].minute == b[i].minute && a[i].sign == b[i].sign &&
              a[i].dt_star == b[i].dt_star)) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST(RealizedVolatility, SpecExamples) {
    const double zeros[3] = {0, 0, 0};
    EXPECT_DOUBLE_EQ(realized_volatility({zeros, 3}), 0.0);

    const double single[1] = {-0.015};
    EXPECT_DOUBLE_EQ(realized_volatility({single, 1}), 0.015);

    const double three[3] = {0.01, -0.02, 0.02};
    EXPECT_DOUBLE_EQ(realized_volatility({three, 3}), 0.03);
}

TEST(AverageWindowVolatility, ConstantReturnClosedForm) {
    std::vector<std::vector<double>> rows(3, std::vector<double>(240, std::nan("")));
    for (auto& row : rows)
        for (int m = 1; m < 240; ++m) row[m] = 0.002;
    auto grid = test::make_grid(rows);

    auto avg = average_window_volatility(grid, 60);
    for (int dt = 1; dt <= 60; ++dt) {
        EXPECT_NEAR(avg[dt].mean, 0.002 * std::sqrt(double(dt)), 1e-15) << "dt " << dt;
        EXPECT_EQ(avg[dt].count, 3 * (239 - dt + 1));
    }
}

TEST(AverageWindowVolatility, ZeroReturnsGiveZero) {
    std::vector<std::vector<double>> rows(2, std::vector<double>(240, std::nan("")));
    for (auto& row : rows)
        for (int m = 1; m < 240; ++m) row[m] = 0.0;
    auto avg = average_window_volatility(test::make_grid(rows), 10);
    for (int dt = 1; dt <= 10; ++dt) EXPECT_DOUBLE_EQ(avg[dt].mean, 0.0);
}

TEST(AverageWindowVolatility, MatchesExhaustiveScanOnNoise) {
    auto grid = noise_returns(4, 0.001, 31);
    auto avg = average_window_volatility(grid, 60);
    for (int dt : {1, 2, 7, 30, 60}) {
        const double brute = oracle::average_window_volatility_bruteforce(grid, dt);
        EXPECT_NEAR(avg[dt].mean, brute, 1e-12 * std::max(1.0, std::abs(brute)));
    }
}

TEST(AverageWindowVolatility, NoAdmissibleWindowsIsUndefined) {
    // Single day, all returns undefined.
    std::vector<std::vector<double>> rows(1, std::vector<double>(240, std::nan("")));
    auto avg = average_window_volatility(test::make_grid(rows), 5);
    EXPECT_EQ(avg[3].count, 0);
    EXPECT_TRUE(std::isnan(avg[3].mean));
}

TEST(DetectEvents, FlatSeriesHasNoEvents) {
    std::vector<std::vector<double>> rows(2, std::vector<double>(240, std::nan("")));
    for (auto& row : rows)
        for (int m = 1; m < 240; ++m) row[m] = 0.0;
    auto events = detect_events("T", test::make_grid(rows), FilterConfig{});
    EXPECT_TRUE(events.empty());
}

TEST(DetectEvents, SingleJumpYieldsOneEventAtJumpMinute) {
    auto grid = noise_returns(3, 0.0005, 17);
    grid.at(1, 100) = 0.05;  // 5% single-minute jump on day 2

    FilterConfig cfg;  // defaults: 4%, 60 minutes, 6x
    auto events = deduplicate_first_per_day(detect_events("T", grid, cfg));
    ASSERT_EQ(events.size(), 1u);
    EXPECT_EQ(events[0].date, grid.dates[1]);
    EXPECT_EQ(events[0].minute, 100);
    EXPECT_EQ(events[0].sign, 1);
    EXPECT_EQ(events[0].dt_star, 1);
    EXPECT_NEAR(events[0].cum_return, 0.05, 1e-12);

    auto brute = deduplicate_first_per_day(oracle::detect_events_bruteforce("T", grid, cfg));
    EXPECT_TRUE(events_equal(events, brute));
}

TEST(DetectEvents, DriftFailingRelativeFilterYieldsNoEvent) {
    // Alternating +-r noise with r = 1% / sqrt(60), so the 60-minute average
    // volatility is about 1% and the relative bar sits at 6%. A 4.5% drift
    // over 60 minutes passes the absolute filter but never the relative one.
    const double r = 0.01 / std::sqrt(60.0);
    std::vector<std::vector<double>> rows(4, std::vector<double>(240, std::nan("")));
    for (auto& row : rows)
        for (int m = 1; m < 240; ++m) row[m] = (m % 2 == 0) ? r : -r;
    for (int m = 60; m < 120; ++m) rows[2][m] = 0.045 / 60.0;  // the drift

    FilterConfig cfg;
    auto grid = test::make_grid(rows);
    auto events = detect_events("T", grid, cfg);
    EXPECT_TRUE(events.empty());
    EXPECT_TRUE(oracle::detect_events_bruteforce("T", grid, cfg).empty());
}

TEST(DetectEvents, OracleEquivalenceOnTwentyStockDays) {
    // 20 stock-days across 4 stocks with a mix of clean jumps, sub-threshold
    // jumps, drifts, and negative moves.
    FilterConfig cfg;
    std::mt19937_64 rng(99);
    for (int s = 0; s < 4; ++s) {
        auto grid = noise_returns(5, 0.0008, 1000 + s);
        grid.at(0, 50) = 0.055;                              // clean positive
        grid.at(1, 170) = -0.048;                            // negative, near closing exclusion
        grid.at(2, 6) = 0.05;                                // at the opening boundary
        grid.at(3, 30) = 0.035;                              // below absolute threshold
        for (int m = 90; m < 102; ++m) grid.at(3, m) = 0.004;  // slow 4.8% drift
        grid.at(4, 181) = 0.06;                              // inside closing exclusion

        auto fast = detect_events("S", grid, cfg);
        auto brute = oracle::detect_events_bruteforce("S", grid, cfg);
        EXPECT_TRUE(events_equal(fast, brute)) << "stock " << s;
        EXPECT_FALSE(fast.empty());
    }
}

TEST(DetectEvents, MinimalityOfEmittedWindow) {
    auto grid = noise_returns(4, 0.001, 55);
    for (int m = 80; m < 86; ++m) grid.at(1, m) = 0.009;  // 5.4% over 6 minutes
    FilterConfig cfg;
    auto avg = average_window_volatility(grid, cfg.window_max);

    auto events = detect_events("T", grid, cfg);
    ASSERT_FALSE(events.empty());
    for (const auto& ev : events) {
        const int d = ev.date == grid.dates[0]   ? 0
                      : ev.date == grid.dates[1] ? 1
                      : ev.date == grid.dates[2] ? 2
                                                 : 3;
        // The emitted window passes both filters...
        auto window_ok = [&](int dt) {
            double cum = 0, sq = 0;
            for (int m = ev.minute - dt + 1; m <= ev.minute; ++m) {
                const double rr = grid.at(d, m);
                if (std::isnan(rr)) return false;
                cum += rr;
                sq += rr * rr;
            }
            if (std::abs(cum) < cfg.threshold_abs) return false;
            if (avg[dt].count > 0 &&
                std::abs(cum) < cfg.volatility_multiple * avg[dt].mean) {
                return false;
            }
            return true;
        };
        EXPECT_TRUE(window_ok(ev.dt_star));
        // ...and every strictly shorter one fails at least one filter.
        for (int dt = 1; dt < ev.dt_star; ++dt) EXPECT_FALSE(window_ok(dt));
    }
}

TEST(DetectEvents, ExclusionSafety) {
    auto grid = noise_returns(6, 0.002, 77);
    for (int d = 0; d < 6; ++d) {
        grid.at(d, 3) = 0.08;    // before the opening exclusion
        grid.at(d, 200) = 0.08;  // inside the closing exclusion
        grid.at(d, 100) = 0.08;  // admissible
    }
    auto events = detect_events("T", grid, FilterConfig{});
    ASSERT_FALSE(events.empty());
    for (const auto& ev : events) {
        EXPECT_GT(ev.minute, 5);
        EXPECT_LE(ev.minute, 180);
    }
}

TEST(DetectEvents, RaisingThresholdNeverAddsEvents) {
    auto grid = noise_returns(8, 0.004, 123);
    for (int d = 0; d < 8; d += 2) grid.at(d, 40 + 7 * d) = 0.05;

    FilterConfig low;
    low.threshold_abs = 0.03;
    FilterConfig high;
    high.threshold_abs = 0.05;
    const auto n_low = detect_events("T", grid, low).size();
    const auto n_high = detect_events("T", grid, high).size();
    EXPECT_LE(n_high, n_low);
}

TEST(DetectEvents, SignMatchesMinimalWindowReturn) {
    auto grid = noise_returns(4, 0.001, 5);
    grid.at(0, 60) = 0.05;
    grid.at(2, 90) = -0.05;
    auto events = detect_events("T", grid, FilterConfig{});
    ASSERT_FALSE(events.empty());
    bool saw_neg = false;
    for (const auto& ev : events) {
        EXPECT_EQ(ev.sign, ev.cum_return > 0 ? 1 : -1);
        saw_neg |= ev.sign == -1;
    }
    EXPECT_TRUE(saw_neg);
}

TEST(DetectEvents, ClockTimeAverageVariantAgreesWithOracle) {
    // Enough days that the jump does not dominate its own clock-minute
    // volatility average.
    auto grid = noise_returns(60, 0.001, 202);
    grid.at(2, 120) = 0.05;
    FilterConfig cfg;
    cfg.clock_time_average = true;
    auto fast = detect_events("T", grid, cfg);
    auto brute = oracle::detect_events_bruteforce("T", grid, cfg);
    EXPECT_TRUE(events_equal(fast, brute));
    EXPECT_FALSE(fast.empty());
}

TEST(Deduplicate, SpecExamples) {
    std::vector<ExtremeEvent> events = {
        {"A", 20030102, 90, 1, 3, 0.05},
        {"A", 20030102, 40, 1, 2, 0.05},
        {"A", 20030103, 70, -1, 1, -0.05},
        {"B", 20030102, 120, 1, 1, 0.05},
    };
    auto deduped = deduplicate_first_per_day(events);
    ASSERT_EQ(deduped.size(), 3u);
    // (A, 20030102) keeps minute 40.
    bool found = false;
    for (const auto& ev : deduped) {
        if (ev.stock_id == "A" && ev.date == 20030102) {
            EXPECT_EQ(ev.minute, 40);
            found = true;
        }
    }
    EXPECT_TRUE(found);
    EXPECT_TRUE(deduplicate_first_per_day({}).empty());
}

TEST(FilterConfig, Validation) {
    FilterConfig bad;
    bad.threshold_abs = 0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = FilterConfig{};
    bad.window_max = 0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = FilterConfig{};
    bad.volatility_multiple = -1;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    EXPECT_NO_THROW(FilterConfig{}.validate());
}

TEST(Events, CsvRoundTrip) {
    test::TempDir dir("events_csv");
    std::vector<ExtremeEvent> events = {
        {"000001", 20030102, 40, 1, 2, 0.051234},
        {"000002", 20030105, 170, -1, 60, -0.047},
    };
    write_events_csv(dir.file("events.csv"), events);
    auto loaded = read_events_csv(dir.file("events.csv"));
    ASSERT_EQ(loaded.size(), 2u);
    EXPECT_EQ(loaded[0].stock_id, "000001");
    EXPECT_EQ(loaded[0].minute, 40);
    EXPECT_EQ(loaded[1].sign, -1);
    EXPECT_EQ(loaded[1].dt_star, 60);
    EXPECT_NEAR(loaded[1].cum_return, -0.047, 1e-6);
}
