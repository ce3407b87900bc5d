#pragma once

#include <Eigen/Dense>

namespace thetasum {

enum class Spacing { Linear, Logarithmic };

/// Strictly increasing evaluation grid. The first point is `start`; the last
/// point never exceeds `stop` (step-based grids land on `stop` only when the
/// range is an integer number of steps).
class GridSpec {
public:
    static GridSpec linear_step(double start, double stop, double step);
    static GridSpec linear_count(double start, double stop, int count);
    static GridSpec log_count(double start, double stop, int count);

    Eigen::ArrayXd generate() const;

    double start() const { return start_; }
    double stop() const { return stop_; }
    Spacing spacing() const { return spacing_; }

private:
    GridSpec(double start, double stop, double step, int count, Spacing spacing);

    double start_;
    double stop_;
    double step_;   // 0 when count-based
    int count_;     // 0 when step-based
    Spacing spacing_;
};

}  // namespace thetasum
