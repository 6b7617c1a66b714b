#include "orderflow/relax.hpp"

#include "orderflow/io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace orderflow {

ExcessSeries excess(const GroupAverage& avg) {
    ExcessSeries s;
    s.group = avg.group;
    s.values.reserve(kPostEventMinutes);
    for (int t = 1; t <= kPostEventMinutes; ++t) {
        const int slot = slot_of(t);
        if (avg.count[slot] == 0 || std::isnan(avg.mean[slot])) {
            s.values.push_back(std::nan(""));
        } else {
            s.values.push_back(avg.mean[slot] - 1.0);
        }
    }
    return s;
}

RelaxationFit fit_power_law(const ExcessSeries& series, FitRange range) {
    if (range.t_lo < 1) throw std::invalid_argument("fit range must start at t >= 1");
    if (range.t_hi < range.t_lo) throw std::invalid_argument("empty fit range");

    RelaxationFit fit;
    fit.group = series.group;
    fit.t_lo = range.t_lo;
    fit.t_hi = std::min(range.t_hi, series.horizon());
    fit.capped = range.t_hi > series.horizon();
    if (fit.t_hi < fit.t_lo) throw std::runtime_error("fit range lies beyond the data horizon");

    std::vector<double> xs, ys;
    for (int t = fit.t_lo; t <= fit.t_hi; ++t) {
        const double v = series.at(t);
        if (std::isnan(v) || v <= 0) {
            ++fit.points_dropped;
            continue;
        }
        xs.push_back(std::log(double(t)));
        ys.push_back(std::log(v));
    }
    fit.points_used = static_cast<int>(xs.size());
    if (fit.points_used < 3) {
        throw std::runtime_error("fit refused for " + series.group + ": only " +
                                 std::to_string(fit.points_used) +
                                 " positive excess points in range");
    }

    const double n = double(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx <= 0) throw std::runtime_error("degenerate fit abscissa for " + series.group);

    const double slope = sxy / sxx;
    const double icept = my - slope * mx;

    double ssr = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double res = ys[i] - (icept + slope * xs[i]);
        ssr += res * res;
    }
    const double dof = n - 2;
    const double sigma2 = dof > 0 ? ssr / dof : 0.0;

    fit.alpha = -slope;
    fit.stderr_alpha = std::sqrt(sigma2 / sxx);
    fit.intercept = icept;
    return fit;
}

void write_fits_csv(const std::string& path, const std::vector<RelaxationFit>& fits) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write fit report: " + path);
    out << "group,alpha,stderr,intercept,t_lo,t_hi,capped,points_used,points_dropped\n";
    for (const auto& f : fits) {
        out << f.group << ',' << fixed4(f.alpha) << ',' << fixed4(f.stderr_alpha) << ','
            << fixed4(f.intercept) << ',' << f.t_lo << ',' << f.t_hi << ',' << (f.capped ? 1 : 0)
            << ',' << f.points_used << ',' << f.points_dropped << '\n';
    }
}

} // namespace orderflow
