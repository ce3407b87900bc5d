#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thetasum/grid.hpp"

namespace thetasum {

/// Four-parameter Boltzmann sigmoid
///     plateau - amplitude / (1 + exp((s - center) / width)).
struct SigmoidParams {
    double plateau = 1.0;
    double amplitude = 0.7;
    double center = 0.4;
    double width = 0.1;  // > 0

    /// Reference constants for the deficit curve e(s).
    static SigmoidParams reference();
};

/// Signed stretched logistic
///     1 / (1 + exp(sgn(u) * |u / width|^exponent)),  u = s - center,
/// with sgn(0) = 0 so the value at the center is exactly 1/2.
struct StretchedLogisticParams {
    double center = 0.45;
    double width = 0.088;    // > 0
    double exponent = 1.29;  // > 0

    /// Reference constants for the y_0 - y_{1/2} gap.
    static StretchedLogisticParams reference();
};

struct ResidualStats {
    double sup_abs = 0.0;
    double rms = 0.0;
    double argmax = 0.0;  // grid point of the sup
    int n_points = 0;
};

struct FitResult {
    SigmoidParams params;
    ResidualStats residuals;
    int iterations = 0;
    bool converged = false;
    std::vector<double> objective_trace;  // objective after each accepted step
};

/// Raised when the damped least-squares iteration fails to converge within
/// the iteration cap; carries the best parameters seen.
class FitNonConvergence : public std::runtime_error {
public:
    FitNonConvergence(const std::string& what, FitResult best);
    const FitResult& best() const { return best_; }

private:
    FitResult best_;
};

/// Evaluates the sigmoid; the logistic saturates instead of overflowing, so
/// the result is finite for every finite s.
double sigmoid_value(const SigmoidParams& p, double s);

/// Evaluates the stretched logistic; saturates like sigmoid_value.
double stretched_logistic_value(const StretchedLogisticParams& p, double s);

/// Unweighted least-squares fit of the sigmoid to (s, y) samples by damped
/// Gauss-Newton steps, starting from `init`. Requires >= 5 samples with
/// distinct abscissae and init.width > 0. Throws FitNonConvergence after
/// 10^4 iterations without meeting the 1e-10 relative step/objective test.
FitResult fit_sigmoid(const Eigen::ArrayXd& s, const Eigen::ArrayXd& y,
                      const SigmoidParams& init);

/// Same fit from the default start (1.0, 0.7, 0.4, 0.1), retrying from
/// centers {0.3, 0.4, 0.5} before giving up.
FitResult fit_sigmoid(const Eigen::ArrayXd& s, const Eigen::ArrayXd& y);

/// Sup/rms/argmax of candidate - truth over the grid. Throws when either
/// function is non-finite at a grid point, naming the point.
ResidualStats residual_report(const std::function<double(double)>& candidate,
                              const std::function<double(double)>& truth,
                              const GridSpec& grid);

}  // namespace thetasum
