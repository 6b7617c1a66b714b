#pragma once

#include "orderflow/detect.hpp"
#include "orderflow/grid.hpp"

#include <array>
#include <string>
#include <vector>

namespace orderflow {

inline constexpr int kPreEventMinutes = 100;
inline constexpr int kPostEventMinutes = 200;
inline constexpr int kTrajectoryLen = kPreEventMinutes + kPostEventMinutes + 1;  // 301

inline int slot_of(int t) { return t + kPreEventMinutes; }
inline int t_of(int slot) { return slot - kPreEventMinutes; }

// One event's deseasonalized series on t in [-100, 200], extended across
// trading-day boundaries in intraday order; minutes outside the sample (or
// undefined cells) are masked.
struct EventTrajectory {
    std::array<double, kTrajectoryLen> values{};
    std::array<bool, kTrajectoryLen> valid{};
};

struct GroupAverage {
    std::string group;
    std::array<double, kTrajectoryLen> mean{};   // NaN where no event has data
    std::array<int, kTrajectoryLen> count{};
    int t_max = 0;
    double peak = 0;
};

struct AlignedCumulativeReturn {
    std::array<double, kTrajectoryLen> mean{};
    std::array<int, kTrajectoryLen> count{};
};

// The event's day must exist in the grid; post-event minutes beyond the
// close come from the next trading day (pre-event symmetrically from the
// previous one).
EventTrajectory extract_trajectory(const ExtremeEvent& event, const DayMinuteGrid& grid);

// Eq.-style equal-weight average over a non-empty group; throws when empty.
GroupAverage group_average(const std::vector<EventTrajectory>& trajectories,
                           const std::string& group_name);

// argmax over the averaged curve; ties break toward the t closest to 0,
// then toward negative t. Throws when every slot is masked.
std::pair<int, double> find_peak(const GroupAverage& avg);

// Mean cumulative log return over events of one sign, accumulated from
// t = -100 with overnight gaps contributing zero, then shifted so the curve
// is exactly 0 at t = 0. Throws when the group is empty.
AlignedCumulativeReturn aligned_cumulative_return(const std::vector<ExtremeEvent>& events,
                                                  const DayMinuteGrid& raw_returns);

void write_curve_csv(const std::string& path, const GroupAverage& avg);
void write_cumret_csv(const std::string& path, const AlignedCumulativeReturn& curve);

} // namespace orderflow
