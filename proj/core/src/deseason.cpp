#include "orderflow/deseason.hpp"

#include "orderflow/io.hpp"

#include <algorithm>
#include <fstream>

namespace orderflow {

bool IntradayPattern::fully_masked() const {
    return std::none_of(mask.begin(), mask.end(), [](bool b) { return b; });
}

IntradayPattern estimate_pattern(const DayMinuteGrid& grid, const std::string& quantity,
                                 const PatternOptions& opts) {
    if (grid.num_days() < 1) throw std::runtime_error("pattern needs at least one day of data");

    IntradayPattern p;
    p.quantity = quantity;

    auto excluded = [&](int d) {
        return d < static_cast<int>(opts.exclude_days.size()) && opts.exclude_days[d];
    };

    for (int m = 1; m <= TradingClock::kMinutesPerDay; ++m) {
        double sum = 0;
        long n = 0;
        for (int d = 0; d < grid.num_days(); ++d) {
            if (excluded(d)) continue;
            const double v = grid.at(d, m);
            if (std::isnan(v)) continue;
            sum += v;
            ++n;
        }
        if (n == 0) {
            p.values[m - 1] = std::nan("");
            p.mask[m - 1] = false;
        } else {
            const double mean = sum / double(n);
            p.values[m - 1] = mean;
            p.mask[m - 1] = mean != 0.0;
        }
    }
    return p;
}

DayMinuteGrid deseasonalize(const DayMinuteGrid& grid, const IntradayPattern& pattern) {
    DayMinuteGrid out = grid;
    for (int d = 0; d < grid.num_days(); ++d) {
        for (int m = 1; m <= TradingClock::kMinutesPerDay; ++m) {
            if (!pattern.estimable(m)) {
                out.at(d, m) = std::nan("");
                continue;
            }
            out.at(d, m) = grid.at(d, m) / pattern.at(m);
        }
    }
    return out;
}

void write_pattern_csv(const std::string& path, const IntradayPattern& p) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write pattern file: " + path);
    out << "minute,value,estimable\n";
    for (int m = 1; m <= TradingClock::kMinutesPerDay; ++m) {
        out << m << ',' << fixed6(p.at(m)) << ',' << (p.estimable(m) ? 1 : 0) << '\n';
    }
}

} // namespace orderflow
