#include "thetasum/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace thetasum {
namespace {

void require_finite_range(double start, double stop) {
    if (!std::isfinite(start) || !std::isfinite(stop))
        throw std::invalid_argument("grid endpoints must be finite");
    if (!(start < stop))
        throw std::invalid_argument("grid requires start < stop; got [" +
                                    std::to_string(start) + ", " + std::to_string(stop) + "]");
}

}  // namespace

GridSpec::GridSpec(double start, double stop, double step, int count, Spacing spacing)
    : start_(start), stop_(stop), step_(step), count_(count), spacing_(spacing) {}

GridSpec GridSpec::linear_step(double start, double stop, double step) {
    require_finite_range(start, stop);
    if (!(step > 0.0) || !std::isfinite(step))
        throw std::invalid_argument("grid step must be positive and finite");
    return GridSpec(start, stop, step, 0, Spacing::Linear);
}

GridSpec GridSpec::linear_count(double start, double stop, int count) {
    require_finite_range(start, stop);
    if (count < 2) throw std::invalid_argument("grid needs at least 2 points");
    return GridSpec(start, stop, 0.0, count, Spacing::Linear);
}

GridSpec GridSpec::log_count(double start, double stop, int count) {
    require_finite_range(start, stop);
    if (!(start > 0.0)) throw std::invalid_argument("logarithmic grid requires start > 0");
    if (count < 2) throw std::invalid_argument("grid needs at least 2 points");
    return GridSpec(start, stop, 0.0, count, Spacing::Logarithmic);
}

Eigen::ArrayXd GridSpec::generate() const {
    if (count_ == 0) {
        // Step-based: snap the interval count when (stop-start)/step is an
        // integer up to rounding, so grids like [0.01, 10] step 0.01 end on
        // the stop value.
        const double q = (stop_ - start_) / step_;
        const double r = std::round(q);
        long long intervals;
        if (std::abs(q - r) <= 1e-6 * std::max(1.0, std::abs(q)))
            intervals = static_cast<long long>(r);
        else
            intervals = static_cast<long long>(std::floor(q));
        const long long n = intervals + 1;
        Eigen::ArrayXd pts(n);
        for (long long i = 0; i < n; ++i) {
            double v = start_ + static_cast<double>(i) * step_;
            if (v > stop_) v = stop_;  // last point only, by construction
            pts[i] = v;
        }
        return pts;
    }

    Eigen::ArrayXd pts(count_);
    if (spacing_ == Spacing::Linear) {
        const double h = (stop_ - start_) / (count_ - 1);
        for (int i = 0; i < count_; ++i) pts[i] = start_ + i * h;
    } else {
        const double la = std::log(start_);
        const double h = (std::log(stop_) - la) / (count_ - 1);
        for (int i = 0; i < count_; ++i) pts[i] = std::exp(la + i * h);
    }
    pts[0] = start_;
    pts[count_ - 1] = stop_;
    return pts;
}

}  // namespace thetasum
