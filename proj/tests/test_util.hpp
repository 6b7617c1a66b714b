#pragma once

#include "orderflow/clock.hpp"
#include "orderflow/grid.hpp"
#include "orderflow/types.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>
#include <vector>

namespace orderflow::test {

inline int hms(int hh, int mm, int ss, int ms = 0) {
    return ((hh * 60 + mm) * 60 + ss) * 1000 + ms;
}

// Wall-clock time of an intraday minute plus an offset within it.
inline int minute_time(int minute, int offset_ms = 0) {
    return TradingClock::minute_start_ms(minute) + offset_ms;
}

inline Price px(double v) { return static_cast<Price>(llround(v * kPriceScale)); }

inline OrderEvent submit(const std::string& stock, Date date, int time_ms, const std::string& id,
                         Side side, double price, Shares size,
                         InvestorClass inv = InvestorClass::individual) {
    return {stock, date, time_ms, EventKind::submit, id, side, px(price), size, inv};
}

inline OrderEvent cancel_ev(const std::string& stock, Date date, int time_ms,
                            const std::string& id, Side side, double price, Shares size,
                            InvestorClass inv = InvestorClass::individual) {
    return {stock, date, time_ms, EventKind::cancel, id, side, px(price), size, inv};
}

// Grid with explicit values; NaN allowed.
inline DayMinuteGrid make_grid(const std::vector<std::vector<double>>& rows,
                               Date first_date = 20030102) {
    std::vector<Date> dates(rows.size());
    Date d = first_date;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        dates[i] = d;
        d = next_trading_date(d);
    }
    DayMinuteGrid g = DayMinuteGrid::blank(dates);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t m = 0; m < rows[i].size() && m < 240; ++m) {
            g.at(static_cast<int>(i), static_cast<int>(m) + 1) = rows[i][m];
        }
    }
    return g;
}

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("orderflow_test_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    std::string str() const { return path_.string(); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace orderflow::test
