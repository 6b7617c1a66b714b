#include "orderflow/study.hpp"

#include "orderflow/io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace orderflow {

namespace {

// Global minute index on the stock's contiguous intraday axis.
long global_index(int day, int minute) {
    return static_cast<long>(day) * TradingClock::kMinutesPerDay + (minute - 1);
}

int day_index_of(const DayMinuteGrid& grid, Date date) {
    for (int d = 0; d < grid.num_days(); ++d) {
        if (grid.dates[d] == date) return d;
    }
    return -1;
}

} // namespace

EventTrajectory extract_trajectory(const ExtremeEvent& event, const DayMinuteGrid& grid) {
    const int d0 = day_index_of(grid, event.date);
    if (d0 < 0) throw std::runtime_error("event date not present in grid");

    EventTrajectory traj;
    const long g0 = global_index(d0, event.minute);
    const long total = static_cast<long>(grid.num_days()) * TradingClock::kMinutesPerDay;

    for (int slot = 0; slot < kTrajectoryLen; ++slot) {
        const long g = g0 + t_of(slot);
        if (g < 0 || g >= total) continue;  // masked at sample edges
        const int d = static_cast<int>(g / TradingClock::kMinutesPerDay);
        const int m = static_cast<int>(g % TradingClock::kMinutesPerDay) + 1;
        const double v = grid.at(d, m);
        if (std::isnan(v)) continue;
        traj.values[slot] = v;
        traj.valid[slot] = true;
    }
    return traj;
}

GroupAverage group_average(const std::vector<EventTrajectory>& trajectories,
                           const std::string& group_name) {
    if (trajectories.empty()) throw std::runtime_error("empty event group: " + group_name);

    GroupAverage avg;
    avg.group = group_name;
    for (int slot = 0; slot < kTrajectoryLen; ++slot) {
        double sum = 0;
        int n = 0;
        for (const auto& traj : trajectories) {
            if (!traj.valid[slot]) continue;
            sum += traj.values[slot];
            ++n;
        }
        avg.count[slot] = n;
        avg.mean[slot] = n > 0 ? sum / double(n) : std::nan("");
    }
    auto [t_max, peak] = find_peak(avg);
    avg.t_max = t_max;
    avg.peak = peak;
    return avg;
}

std::pair<int, double> find_peak(const GroupAverage& avg) {
    bool found = false;
    int best_t = 0;
    double best_v = 0;
    for (int slot = 0; slot < kTrajectoryLen; ++slot) {
        if (avg.count[slot] == 0 || std::isnan(avg.mean[slot])) continue;
        const int t = t_of(slot);
        const double v = avg.mean[slot];
        if (!found) {
            found = true;
            best_t = t;
            best_v = v;
            continue;
        }
        if (v > best_v) {
            best_t = t;
            best_v = v;
        } else if (v == best_v) {
            // Tie: prefer the t closest to 0, then the negative one.
            if (std::abs(t) < std::abs(best_t) ||
                (std::abs(t) == std::abs(best_t) && t < best_t)) {
                best_t = t;
            }
        }
    }
    if (!found) throw std::runtime_error("all-masked group average: " + avg.group);
    return {best_t, best_v};
}

AlignedCumulativeReturn aligned_cumulative_return(const std::vector<ExtremeEvent>& events,
                                                  const DayMinuteGrid& raw_returns) {
    if (events.empty()) throw std::runtime_error("empty sign group for cumulative return curve");

    AlignedCumulativeReturn curve;
    std::array<double, kTrajectoryLen> sum{};
    const long total =
        static_cast<long>(raw_returns.num_days()) * TradingClock::kMinutesPerDay;

    for (const auto& ev : events) {
        const int d0 = day_index_of(raw_returns, ev.date);
        if (d0 < 0) throw std::runtime_error("event date not present in return grid");
        const long g0 = global_index(d0, ev.minute);

        // Cumulative log return relative to t = -100; undefined returns
        // (overnight boundaries, masked mids) contribute zero.
        double cum = 0;
        std::array<double, kTrajectoryLen> c{};
        std::array<bool, kTrajectoryLen> in_sample{};
        for (int slot = 0; slot < kTrajectoryLen; ++slot) {
            const long g = g0 + t_of(slot);
            if (slot > 0 && g >= 0 && g < total) {
                const int d = static_cast<int>(g / TradingClock::kMinutesPerDay);
                const int m = static_cast<int>(g % TradingClock::kMinutesPerDay) + 1;
                const double r = raw_returns.at(d, m);
                if (!std::isnan(r)) cum += r;
            }
            c[slot] = cum;
            in_sample[slot] = g >= 0 && g < total;
        }
        for (int slot = 0; slot < kTrajectoryLen; ++slot) {
            if (!in_sample[slot]) continue;
            sum[slot] += c[slot];
            curve.count[slot] += 1;
        }
    }

    for (int slot = 0; slot < kTrajectoryLen; ++slot) {
        curve.mean[slot] =
            curve.count[slot] > 0 ? sum[slot] / double(curve.count[slot]) : std::nan("");
    }
    // Shift so the curve is exactly zero at the event minute.
    const double at_zero = curve.mean[slot_of(0)];
    if (std::isnan(at_zero)) throw std::runtime_error("no event has data at t = 0");
    for (int slot = 0; slot < kTrajectoryLen; ++slot) curve.mean[slot] -= at_zero;
    curve.mean[slot_of(0)] = 0.0;
    return curve;
}

void write_curve_csv(const std::string& path, const GroupAverage& avg) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write curve file: " + path);
    out << "t,mean,count\n";
    for (int slot = 0; slot < kTrajectoryLen; ++slot) {
        out << t_of(slot) << ',' << fixed6(avg.mean[slot]) << ',' << avg.count[slot] << '\n';
    }
}

void write_cumret_csv(const std::string& path, const AlignedCumulativeReturn& curve) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write curve file: " + path);
    out << "t,mean,count\n";
    for (int slot = 0; slot < kTrajectoryLen; ++slot) {
        out << t_of(slot) << ',' << fixed6(curve.mean[slot]) << ',' << curve.count[slot] << '\n';
    }
}

} // namespace orderflow
