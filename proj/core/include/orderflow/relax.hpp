#pragma once

#include "orderflow/study.hpp"

#include <string>
#include <vector>

namespace orderflow {

// Post-event excess variable x_ex(t) = x(t) - 1 for t >= 1; the normal
// level of a deseasonalized quantity is 1 by definition.
struct ExcessSeries {
    std::string group;
    std::vector<double> values;  // values[i] is x_ex at t = i + 1; NaN = undefined

    int horizon() const { return static_cast<int>(values.size()); }
    double at(int t) const { return values[t - 1]; }
};

ExcessSeries excess(const GroupAverage& avg);

struct FitRange {
    int t_lo = 1;
    int t_hi = 300;
};

struct RelaxationFit {
    std::string group;
    double alpha = 0;        // decay exponent (= -slope in log-log)
    double stderr_alpha = 0;
    double intercept = 0;    // log-amplitude
    int t_lo = 0;            // effective range after capping at the horizon
    int t_hi = 0;
    bool capped = false;     // requested t_hi exceeded the data horizon
    int points_used = 0;
    int points_dropped = 0;  // non-positive or undefined excess inside the range
};

// Ordinary least squares of ln(x_ex) on ln(t) over in-range points with
// positive excess. Throws when fewer than 3 such points exist.
RelaxationFit fit_power_law(const ExcessSeries& series, FitRange range);

void write_fits_csv(const std::string& path, const std::vector<RelaxationFit>& fits);

} // namespace orderflow
