#include "orderflow/detect.hpp"

#include "orderflow/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace orderflow {

void FilterConfig::validate() const {
    if (!(threshold_abs > 0)) throw std::invalid_argument("threshold_abs must be > 0");
    if (window_max < 1) throw std::invalid_argument("window_max must be >= 1");
    if (!(volatility_multiple > 0)) throw std::invalid_argument("volatility_multiple must be > 0");
    if (opening_exclusion < 0 || closing_exclusion < 0)
        throw std::invalid_argument("exclusions must be >= 0");
}

double realized_volatility(std::span<const double> window_returns) {
    double acc = 0;
    for (double r : window_returns) acc += r * r;
    return std::sqrt(acc);
}

std::vector<WindowVolatility> average_window_volatility(const DayMinuteGrid& returns,
                                                        int window_max) {
    std::vector<double> sums(window_max + 1, 0.0);
    std::vector<long> counts(window_max + 1, 0);

    for (int d = 0; d < returns.num_days(); ++d) {
        for (int t = 2; t <= TradingClock::kMinutesPerDay; ++t) {
            double acc_sq = 0;
            const int max_dt = std::min(window_max, t - 1);
            for (int dt = 1; dt <= max_dt; ++dt) {
                const double r = returns.at(d, t - dt + 1);
                if (std::isnan(r)) break;  // longer windows contain it too
                acc_sq += r * r;
                sums[dt] += std::sqrt(acc_sq);
                counts[dt] += 1;
            }
        }
    }

    std::vector<WindowVolatility> out(window_max + 1);
    for (int dt = 1; dt <= window_max; ++dt) {
        out[dt].count = counts[dt];
        out[dt].mean = counts[dt] > 0 ? sums[dt] / double(counts[dt]) : std::nan("");
    }
    return out;
}

std::vector<std::vector<WindowVolatility>> average_window_volatility_by_minute(
    const DayMinuteGrid& returns, int window_max) {
    std::vector<std::vector<WindowVolatility>> out(
        TradingClock::kMinutesPerDay + 1, std::vector<WindowVolatility>(window_max + 1));
    std::vector<std::vector<double>> sums(TradingClock::kMinutesPerDay + 1,
                                          std::vector<double>(window_max + 1, 0.0));

    for (int d = 0; d < returns.num_days(); ++d) {
        for (int t = 2; t <= TradingClock::kMinutesPerDay; ++t) {
            double acc_sq = 0;
            const int max_dt = std::min(window_max, t - 1);
            for (int dt = 1; dt <= max_dt; ++dt) {
                const double r = returns.at(d, t - dt + 1);
                if (std::isnan(r)) break;
                acc_sq += r * r;
                sums[t][dt] += std::sqrt(acc_sq);
                out[t][dt].count += 1;
            }
        }
    }
    for (int t = 1; t <= TradingClock::kMinutesPerDay; ++t) {
        for (int dt = 1; dt <= window_max; ++dt) {
            out[t][dt].mean =
                out[t][dt].count > 0 ? sums[t][dt] / double(out[t][dt].count) : std::nan("");
        }
    }
    return out;
}

std::vector<ExtremeEvent> detect_events(const std::string& stock_id,
                                        const DayMinuteGrid& returns,
                                        const FilterConfig& config) {
    config.validate();

    std::vector<WindowVolatility> avg_all;
    std::vector<std::vector<WindowVolatility>> avg_clock;
    if (config.clock_time_average) {
        avg_clock = average_window_volatility_by_minute(returns, config.window_max);
    } else {
        avg_all = average_window_volatility(returns, config.window_max);
    }

    const int t_lo = config.opening_exclusion + 1;
    const int t_hi = TradingClock::kMinutesPerDay - config.closing_exclusion;

    std::vector<ExtremeEvent> events;
    for (int d = 0; d < returns.num_days(); ++d) {
        for (int t = t_lo; t <= t_hi; ++t) {
            double cum = 0;
            const int max_dt = std::min(config.window_max, t - 1);
            for (int dt = 1; dt <= max_dt; ++dt) {
                const double r = returns.at(d, t - dt + 1);
                if (std::isnan(r)) break;
                cum += r;
                if (std::abs(cum) < config.threshold_abs) continue;
                const WindowVolatility& wv =
                    config.clock_time_average ? avg_clock[t][dt] : avg_all[dt];
                // An undefined average disables the relative filter.
                if (wv.count > 0 &&
                    std::abs(cum) < config.volatility_multiple * wv.mean) {
                    continue;
                }
                events.push_back({stock_id, returns.dates[d], t, cum > 0 ? 1 : -1, dt, cum});
                break;  // smallest passing window for this end minute
            }
        }
    }
    return events;
}

std::vector<ExtremeEvent> deduplicate_first_per_day(std::vector<ExtremeEvent> events) {
    std::map<std::pair<std::string, Date>, ExtremeEvent> first;
    for (auto& ev : events) {
        auto key = std::make_pair(ev.stock_id, ev.date);
        auto it = first.find(key);
        if (it == first.end() || ev.minute < it->second.minute) first[key] = std::move(ev);
    }
    std::vector<ExtremeEvent> out;
    out.reserve(first.size());
    for (auto& [key, ev] : first) out.push_back(std::move(ev));
    return out;
}

void write_events_csv(const std::string& path, const std::vector<ExtremeEvent>& events) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write events file: " + path);
    out << "stock_id,date,minute,sign,dt_star,cum_return\n";
    for (const auto& ev : events) {
        out << ev.stock_id << ',' << ev.date << ',' << ev.minute << ',' << ev.sign << ','
            << ev.dt_star << ',' << fixed6(ev.cum_return) << '\n';
    }
}

std::vector<ExtremeEvent> read_events_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open events file: " + path);
    std::vector<ExtremeEvent> events;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty events file: " + path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        ExtremeEvent ev;
        std::getline(ss, ev.stock_id, ',');
        std::getline(ss, cell, ',');
        ev.date = std::stoi(cell);
        std::getline(ss, cell, ',');
        ev.minute = std::stoi(cell);
        std::getline(ss, cell, ',');
        ev.sign = std::stoi(cell);
        std::getline(ss, cell, ',');
        ev.dt_star = std::stoi(cell);
        std::getline(ss, cell, ',');
        ev.cum_return = std::stod(cell);
        events.push_back(std::move(ev));
    }
    return events;
}

} // namespace orderflow
